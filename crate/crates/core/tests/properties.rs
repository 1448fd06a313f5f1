use proptest::prelude::*;

use dirichlet_lab::convolve::{convolve_naive, convolve_naive_int, dirichlet_convolve_int, dirichlet_convolve_real};
use dirichlet_lab::funcs::{scale_by_power, sieve_epsilon, IntTable, RealTable};
use dirichlet_lab::report::{reports_from_json, reports_to_json};
use dirichlet_lab::sums::{abel_from_prefix, dirichlet_partial_sum, FnSums, PrefixSums};
use dirichlet_lab::verify::{evaluate_law, AsymptoticLaw, EvalOptions, VerificationReport};

fn int_table(max_len: usize) -> impl Strategy<Value = IntTable> {
    prop::collection::vec(-10_000i64..=10_000, 1..=max_len).prop_map(|v| IntTable::new("t", v).unwrap())
}

fn same_len_pair(max_len: usize) -> impl Strategy<Value = (IntTable, IntTable)> {
    (1..=max_len).prop_flat_map(|n| {
        let t = || prop::collection::vec(-10_000i64..=10_000, n).prop_map(|v| IntTable::new("t", v).unwrap());
        (t(), t())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_convolution_matches_naive((f, g) in same_len_pair(1000)) {
        let fast = dirichlet_convolve_int(&f, &g).unwrap();
        for n in 1..=f.limit() {
            prop_assert_eq!(fast.get(n), convolve_naive_int(&f, &g, n).unwrap());
        }
        let fr = scale_by_power(&f, 0.5).unwrap();
        let gr = scale_by_power(&g, 1.5).unwrap();
        let fast = dirichlet_convolve_real(&fr, &gr).unwrap();
        for n in 1..=f.limit() {
            prop_assert_eq!(fast.get(n), convolve_naive(&fr, &gr, n).unwrap());
        }
    }

    #[test]
    fn convolution_commutes((f, g) in same_len_pair(1000)) {
        let a = dirichlet_convolve_int(&f, &g).unwrap();
        let b = dirichlet_convolve_int(&g, &f).unwrap();
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn epsilon_is_the_identity(f in int_table(500)) {
        let eps = sieve_epsilon(f.limit()).unwrap();
        let out = dirichlet_convolve_int(&f, &eps).unwrap();
        prop_assert_eq!(out.values(), f.values());
    }

    #[test]
    fn prefix_differences_recover_values(f in int_table(500)) {
        let p = PrefixSums::from_int(&f).unwrap();
        for x in 1..=f.limit() {
            prop_assert_eq!(p.exact_at(x).unwrap() - p.exact_at(x - 1).unwrap(), f.get(x) as i128);
        }
    }

    #[test]
    fn prefix_sums_of_nonnegative_tables_never_drop(v in prop::collection::vec(0.0f64..1e6, 1..500)) {
        let t = RealTable::new("nonneg", v).unwrap();
        let p = PrefixSums::from_real(&t);
        prop_assert!(p.cumulative().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn abel_equals_direct(v in prop::collection::vec(0i64..1000, 10..2000), k in 0.0f64..4.0) {
        let t = IntTable::new("t", v).unwrap();
        let x = t.limit();
        let direct = dirichlet_partial_sum(&t, k, x).unwrap();
        let abel = abel_from_prefix(&PrefixSums::from_int(&t).unwrap(), k, x).unwrap();
        let scale = direct.abs().max(1.0);
        prop_assert!((abel - direct).abs() <= 1e-9 * scale, "{} vs {}", abel, direct);
    }

    #[test]
    fn power_law_deviation_is_scale_free(c in 1i64..1000, offset in -0.01f64..0.01) {
        let law = AsymptoticLaw::power_law(2.0, 0.3, "", "").unwrap();
        let scaled_law = AsymptoticLaw::power_law(2.0, 0.3 * c as f64, "", "").unwrap();
        let base = FnSums { label: "b".into(), limit: 10_000, f: move |x: usize| 0.3 * (x * x) as f64 * (1.0 + offset / x as f64) };
        let scaled = FnSums { label: "s".into(), limit: 10_000, f: move |x: usize| c as f64 * 0.3 * (x * x) as f64 * (1.0 + offset / x as f64) };
        let cps = [10, 100, 1000, 10_000];
        let a = evaluate_law(&law, &base, &cps, &EvalOptions::default()).unwrap();
        let b = evaluate_law(&scaled_law, &scaled, &cps, &EvalOptions::default()).unwrap();
        for (p, q) in a.checkpoints.iter().zip(&b.checkpoints) {
            prop_assert!((p.deviation - q.deviation).abs() <= 4.0 * f64::EPSILON);
        }
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn log_slope_cancels_intercept(a in prop_oneof![0.1f64..100.0, -100.0f64..-0.1], b in -100.0f64..100.0) {
        let law = AsymptoticLaw::log_law(a, "", "").unwrap();
        let sums = FnSums { label: "s".into(), limit: 1_000_000, f: move |x: usize| a * (x as f64).ln() + b };
        let r = evaluate_law(&law, &sums, &[1000, 10_000, 100_000, 1_000_000], &EvalOptions::default()).unwrap();
        prop_assert!((r.estimated_coefficient.unwrap() / a - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn reports_round_trip_through_json(
        values in prop::collection::vec(-1e12f64..1e12, 3..8),
        alpha in 0.1f64..5.0,
    ) {
        let law = AsymptoticLaw::little_o(alpha, "random", "").unwrap();
        let sums = FnSums { label: "r".into(), limit: values.len() * 10, f: |x: usize| values[x / 10 - 1] };
        let cps: Vec<usize> = (1..=values.len()).map(|i| i * 10).collect();
        let report = evaluate_law(&law, &sums, &cps, &EvalOptions::default()).unwrap();
        let text = report.to_json().unwrap();
        prop_assert_eq!(&VerificationReport::from_json(&text).unwrap(), &report);
        let many = reports_to_json(std::slice::from_ref(&report)).unwrap();
        prop_assert_eq!(reports_from_json(&many).unwrap(), vec![report]);
    }

    #[test]
    fn evaluation_is_deterministic(offset in -1.0f64..1.0) {
        let law = AsymptoticLaw::power_law(1.0, 1.0, "", "").unwrap();
        let sums = FnSums { label: "s".into(), limit: 1000, f: move |x: usize| x as f64 + offset };
        let a = evaluate_law(&law, &sums, &[10, 100, 1000], &EvalOptions::default()).unwrap();
        let b = evaluate_law(&law, &sums, &[10, 100, 1000], &EvalOptions::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn convolution_is_associative_on_small_tables() {
    let mut runner = proptest::test_runner::TestRunner::default();
    let triple = (1usize..=1000).prop_flat_map(|n| {
        let t = move || prop::collection::vec(-100i64..=100, n).prop_map(|v| IntTable::new("t", v).unwrap());
        (t(), t(), t())
    });
    runner
        .run(&triple, |(f, g, h)| {
            let left = dirichlet_convolve_int(&dirichlet_convolve_int(&f, &g).unwrap(), &h).unwrap();
            let right = dirichlet_convolve_int(&f, &dirichlet_convolve_int(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(left.values(), right.values());
            Ok(())
        })
        .unwrap();
}
