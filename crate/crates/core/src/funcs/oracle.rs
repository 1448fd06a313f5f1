//! Single-point reference values computed straight from the definitions.
//!
//! Nothing here touches the sieves: totient is a gcd count, Moebius is trial
//! factorization, divisor sums enumerate divisors up to `sqrt(n)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFn {
    Phi,
    Mobius,
    Sigma(u32),
}

impl fmt::Display for OracleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleFn::Phi => write!(f, "phi"),
            OracleFn::Mobius => write!(f, "mobius"),
            OracleFn::Sigma(k) => write!(f, "sigma:{k}"),
        }
    }
}

impl FromStr for OracleFn {
    type Err = Error;

    /// Accepts `phi`, `mobius` (or `mu`), `sigma` (k = 1) and `sigma:k`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, k) = match s.split_once(':') {
            Some((name, k)) => {
                let k = k
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad exponent in function id {s:?}")))?;
                (name, Some(k))
            }
            None => (s, None),
        };
        match (name, k) {
            ("phi", None) => Ok(OracleFn::Phi),
            ("mobius" | "mu", None) => Ok(OracleFn::Mobius),
            ("sigma", k) => Ok(OracleFn::Sigma(k.unwrap_or(1))),
            _ => Err(Error::invalid(format!("unknown function id {s:?}"))),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn phi_by_counting(n: u64) -> i64 {
    (1..=n).filter(|&m| gcd(m, n) == 1).count() as i64
}

fn mobius_by_trial(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn sigma_by_divisors(k: u32, n: u64) -> Result<i64> {
    let pow = |d: u64| {
        i64::try_from(d)
            .ok()
            .and_then(|d| d.checked_pow(k))
            .ok_or_else(|| Error::overflow(format!("sigma_{k} oracle"), n))
    };
    let mut total: i64 = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut add = pow(d)?;
            let e = n / d;
            if e != d {
                add = add
                    .checked_add(pow(e)?)
                    .ok_or_else(|| Error::overflow(format!("sigma_{k} oracle"), n))?;
            }
            total = total
                .checked_add(add)
                .ok_or_else(|| Error::overflow(format!("sigma_{k} oracle"), n))?;
        }
        d += 1;
    }
    Ok(total)
}

/// `f(n)` computed from the definition of `f`.
pub fn oracle_value(f: OracleFn, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::invalid("oracle argument must be at least 1"));
    }
    match f {
        OracleFn::Phi => Ok(phi_by_counting(n)),
        OracleFn::Mobius => Ok(mobius_by_trial(n)),
        OracleFn::Sigma(k) => sigma_by_divisors(k, n),
    }
}

/// Same as [`oracle_value`] with the function given by name; `k` is only
/// read for `sigma`.
pub fn oracle_value_named(name: &str, k: u32, n: u64) -> Result<i64> {
    let f = match name.parse()? {
        OracleFn::Sigma(_) if !name.contains(':') => OracleFn::Sigma(k),
        f => f,
    };
    oracle_value(f, n)
}
