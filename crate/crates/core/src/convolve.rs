//! Dirichlet convolution `(f * g)(n) = sum over d | n of f(d) g(n/d)`.
//!
//! Output tables share the input limit `N`; every divisor pair of `n <= N`
//! lies inside the inputs, so the values are complete. The real path adds
//! terms in ascending `d` for every `n`, which makes it bit-reproducible and
//! bit-identical to [`convolve_naive`].

use crate::error::{Error, Result};
use crate::funcs::{ArithmeticTable, IntTable, RealTable, Table};

fn check_limits(f: usize, g: usize) -> Result<usize> {
    if f != g {
        return Err(Error::invalid(format!("table limits differ: {f} vs {g}")));
    }
    Ok(f)
}

fn product_name(f: &str, g: &str) -> String {
    format!("({f})*({g})")
}

/// Exact integer convolution; fails on the first `n` whose value would overflow.
pub fn dirichlet_convolve_int(f: &IntTable, g: &IntTable) -> Result<IntTable> {
    let limit = check_limits(f.limit(), g.limit())?;
    let name = product_name(f.name(), g.name());
    let (fv, gv) = (f.values(), g.values());
    let mut out = vec![0i64; limit];
    for d in 1..=limit {
        let fd = fv[d - 1];
        if fd == 0 {
            continue;
        }
        for m in 1..=limit / d {
            let n = d * m;
            let term = fd
                .checked_mul(gv[m - 1])
                .and_then(|t| out[n - 1].checked_add(t))
                .ok_or_else(|| Error::overflow(name.clone(), n as u64))?;
            out[n - 1] = term;
        }
    }
    IntTable::new(name, out)
}

/// Convolution in doubles; either input may be integer-valued.
pub fn dirichlet_convolve_real<F, G>(f: &F, g: &G) -> Result<RealTable>
where
    F: ArithmeticTable + ?Sized,
    G: ArithmeticTable + ?Sized,
{
    let limit = check_limits(f.limit(), g.limit())?;
    let gv: Vec<f64> = (1..=limit).map(|n| g.value_f64(n)).collect();
    let mut out = vec![0.0f64; limit];
    for d in 1..=limit {
        let fd = f.value_f64(d);
        for m in 1..=limit / d {
            out[d * m - 1] += fd * gv[m - 1];
        }
    }
    RealTable::new(product_name(f.name(), g.name()), out)
}

/// Integer inputs give an exact integer table, anything else a real one.
pub fn dirichlet_convolve(f: &Table, g: &Table) -> Result<Table> {
    match (f, g) {
        (Table::Int(f), Table::Int(g)) => dirichlet_convolve_int(f, g).map(Table::Int),
        _ => dirichlet_convolve_real(f, g).map(Table::Real),
    }
}

fn check_point(n: usize, f: usize, g: usize) -> Result<()> {
    if n == 0 || n > f.min(g) {
        return Err(Error::invalid(format!("n = {n} outside 1..={}", f.min(g))));
    }
    Ok(())
}

/// Divisors of `n` in ascending order, by trial division.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `(f * g)(n)` for integer tables by explicit divisor enumeration.
pub fn convolve_naive_int(f: &IntTable, g: &IntTable, n: usize) -> Result<i64> {
    check_point(n, f.limit(), g.limit())?;
    divisors(n).into_iter().try_fold(0i64, |acc, d| {
        f.get(d)
            .checked_mul(g.get(n / d))
            .and_then(|t| acc.checked_add(t))
            .ok_or_else(|| Error::overflow("naive convolution", n as u64))
    })
}

/// `(f * g)(n)` in doubles by explicit divisor enumeration, ascending `d`.
pub fn convolve_naive<F, G>(f: &F, g: &G, n: usize) -> Result<f64>
where
    F: ArithmeticTable + ?Sized,
    G: ArithmeticTable + ?Sized,
{
    check_point(n, f.limit(), g.limit())?;
    Ok(divisors(n)
        .into_iter()
        .fold(0.0, |acc, d| acc + f.value_f64(d) * g.value_f64(n / d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcs::{scale_by_power, sieve_epsilon, sieve_id_pow, sieve_mobius, sieve_phi, sieve_unit};

    #[test]
    fn divisors_ascending() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn naive_examples() {
        let id = sieve_id_pow(1, 12).unwrap();
        let mu = sieve_mobius(12).unwrap();
        assert_eq!(convolve_naive_int(&id, &mu, 12).unwrap(), 4);

        let one = sieve_unit(12).unwrap();
        for n in 1..=12 {
            let v = convolve_naive_int(&one, &mu, n).unwrap();
            assert_eq!(v, if n == 1 { 1 } else { 0 });
        }
        assert!(matches!(
            convolve_naive_int(&one, &mu, 13),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(convolve_naive(&one, &mu, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn divisor_count() {
        let one = sieve_unit(12).unwrap();
        let tau = dirichlet_convolve_int(&one, &one).unwrap();
        assert_eq!(tau.get(6), 4);
        assert_eq!(tau.get(12), 6);
    }

    #[test]
    fn identity_element() {
        let phi = sieve_phi(200).unwrap();
        let eps = sieve_epsilon(200).unwrap();
        assert_eq!(dirichlet_convolve_int(&phi, &eps).unwrap().values(), phi.values());
        let real = scale_by_power(&phi, 1.5).unwrap();
        let out = dirichlet_convolve_real(&real, &eps).unwrap();
        assert_eq!(out.values(), real.values());
    }

    #[test]
    fn mismatched_limits() {
        let a = sieve_unit(10).unwrap();
        let b = sieve_unit(11).unwrap();
        assert!(matches!(dirichlet_convolve_int(&a, &b), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            dirichlet_convolve_real(&a, &b),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn overflow_detected() {
        let big = IntTable::new("big", vec![i64::MAX / 2, i64::MAX / 2]).unwrap();
        match dirichlet_convolve_int(&big, &big) {
            Err(Error::Overflow { n, .. }) => assert_eq!(n, 1),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn mixed_domains_go_real() {
        let id = Table::from(sieve_id_pow(1, 30).unwrap());
        let mu = Table::from(sieve_mobius(30).unwrap().to_real());
        let out = dirichlet_convolve(&id, &mu).unwrap();
        assert!(matches!(out, Table::Real(_)));
        let phi = sieve_phi(30).unwrap();
        for n in 1..=30 {
            assert_eq!(out.value_f64(n), phi.get(n) as f64);
        }
    }

    #[test]
    fn fast_real_path_matches_naive_bitwise() {
        let f = scale_by_power(&sieve_mobius(300).unwrap(), 0.5).unwrap();
        let g = scale_by_power(&sieve_phi(300).unwrap(), 1.25).unwrap();
        let fast = dirichlet_convolve_real(&f, &g).unwrap();
        for n in 1..=300 {
            assert_eq!(fast.get(n), convolve_naive(&f, &g, n).unwrap());
        }
    }
}
