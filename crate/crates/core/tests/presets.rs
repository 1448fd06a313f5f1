use std::f64::consts::PI;

use dirichlet_lab::constants::zeta;
use dirichlet_lab::funcs::{scale_by_power, sieve_mobius, sieve_sigma_k, sieve_unit, Table};
use dirichlet_lab::presets::{run_preset, PresetConfig, PresetId};
use dirichlet_lab::sums::PrefixSums;
use dirichlet_lab::verify::{
    evaluate_law, kronecker_decay_family, log_mean_law, wintner_law, EvalOptions, LawKind, SeriesTests, Verdict,
    VerificationReport,
};

#[test]
fn phi_preset_at_full_size() {
    let out = run_preset(PresetId::PhiWintner, &PresetConfig::default()).unwrap();
    assert_eq!(out.verdict, Verdict::Pass);
    let report = &out.reports[0];
    assert_eq!(report.checkpoints.len(), 4);
    assert!(report.final_deviation() < 1e-3);
    let devs = report.deviations();
    // Over 10^4, 10^5, 10^6 the deviation strictly shrinks.
    assert!(devs[1] > devs[2] && devs[2] > devs[3], "{devs:?}");
    let c = report.law.coefficient().unwrap();
    assert!((c - 3.0 / (PI * PI)).abs() < 1e-6);
    let text = report.to_json().unwrap();
    assert_eq!(&VerificationReport::from_json(&text).unwrap(), report);
}

#[test]
fn every_preset_passes_at_default_size() {
    for preset in PresetId::ALL {
        let out = run_preset(preset, &PresetConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Pass, "{preset}: {:#?}", out.reports);
    }
}

#[test]
fn sigma_k_presets_for_higher_k() {
    let config = PresetConfig {
        k: 2,
        ..PresetConfig::default()
    };
    let out = run_preset(PresetId::SigmaKWintner, &config).unwrap();
    assert_eq!(out.verdict, Verdict::Pass);
    let zeta3 = zeta(3.0, 1e-13).unwrap().value;
    assert!((out.reports[0].law.coefficient().unwrap() - zeta3 / 3.0).abs() < 1e-9);

    let out = run_preset(PresetId::KroneckerSigmaK, &config).unwrap();
    assert_eq!(out.verdict, Verdict::Pass);
    assert_eq!(out.reports.len(), 4);
}

#[test]
fn decay_family_for_sigma_2() {
    let f = Table::Int(sieve_sigma_k(2, 1_000_000).unwrap());
    let cps = [1000, 10_000, 100_000, 1_000_000];
    let reports =
        kronecker_decay_family(&f, 4.0, 3, 2, &cps, &EvalOptions::default(), &SeriesTests::default()).unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn law_coefficients_match_closed_forms() {
    let limit = 1_000_000;
    let z2 = PI * PI / 6.0;
    let z3 = zeta(3.0, 1e-13).unwrap().value;
    let mu = sieve_mobius(limit).unwrap();

    let g = scale_by_power(&mu, 1.0).unwrap();
    assert!((wintner_law(&g, 0).unwrap().coefficient().unwrap() - 1.0 / z2).abs() < 1e-6);

    let g = scale_by_power(&mu, 2.0).unwrap();
    assert!((log_mean_law(&g, 3.0).unwrap().coefficient().unwrap() - 3.0 / z2).abs() < 1e-6);

    let g = scale_by_power(&sieve_sigma_k(1, limit).unwrap(), 3.0).unwrap();
    assert!((log_mean_law(&g, 1.0).unwrap().coefficient().unwrap() - z2 * z3).abs() < 1e-3);
    assert_eq!(log_mean_law(&g, 0.0).unwrap().coefficient(), Some(0.0));

    let one = sieve_unit(limit).unwrap();
    for k in 1..=2u32 {
        let c = wintner_law(&one, k).unwrap().coefficient().unwrap();
        let expected = zeta(k as f64 + 1.0, 1e-13).unwrap().value / (k as f64 + 1.0);
        assert!((c - expected).abs() < 1e-6);
    }
}

#[test]
fn kronecker_bound_on_sigma_sums() {
    let sums = PrefixSums::from_int(&sieve_sigma_k(1, 1_000_000).unwrap()).unwrap();
    let law = dirichlet_lab::verify::AsymptoticLaw::little_o(3.0, "sum sigma(n) = o(x^3)", "").unwrap();
    let r = evaluate_law(
        &law,
        &sums,
        &[1000, 10_000, 100_000, 1_000_000],
        &EvalOptions::default(),
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    let drop = r.checkpoints[0].deviation / r.final_deviation();
    assert!(drop > 900.0 && drop < 1100.0, "{drop}");
}

#[test]
fn harmonic_preset_records_gamma_as_intercept() {
    let out = run_preset(PresetId::HarmonicGamma, &PresetConfig::default()).unwrap();
    match out.reports[0].law.kind {
        LawKind::LogLaw {
            intercept_estimate: Some(b),
            ..
        } => assert!((b - 0.577_215_664_9).abs() < 1e-3, "{b}"),
        ref other => panic!("unexpected law {other:?}"),
    }
}
