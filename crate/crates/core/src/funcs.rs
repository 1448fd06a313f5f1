//! Tables of arithmetic functions on `1..=N`.
//!
//! Integer tables hold exact `i64` values and every constructor refuses to
//! wrap on overflow. Real tables hold finite `f64` values and are what the
//! power-scaled functions such as `mu(n)/n^2` live in.

use crate::error::{Error, Result};

pub mod oracle;

pub use oracle::{oracle_value, oracle_value_named, OracleFn};

/// Read access shared by integer and real tables. Indices are 1-based.
pub trait ArithmeticTable {
    fn name(&self) -> &str;

    /// Largest `n` held by the table.
    fn limit(&self) -> usize;

    /// `f(n)` as a double; panics when `n` is outside `1..=limit`.
    fn value_f64(&self, n: usize) -> f64;
}

/// Exact values `f(1), ..., f(N)` of an integer-valued arithmetic function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntTable {
    name: String,
    values: Vec<i64>,
}

impl IntTable {
    /// Wraps `values`, where `values[0]` is `f(1)`.
    pub fn new(name: impl Into<String>, values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("table limit must be at least 1"));
        }
        Ok(IntTable {
            name: name.into(),
            values,
        })
    }

    pub fn from_fn(name: impl Into<String>, limit: usize, f: impl FnMut(usize) -> i64) -> Result<Self> {
        check_limit(limit)?;
        IntTable::new(name, (1..=limit).map(f).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn limit(&self) -> usize {
        self.values.len()
    }

    /// `f(n)`; panics when `n` is outside `1..=limit`.
    pub fn get(&self, n: usize) -> i64 {
        assert!(
            n >= 1 && n <= self.values.len(),
            "index {n} outside 1..={}",
            self.values.len()
        );
        self.values[n - 1]
    }

    pub fn try_get(&self, n: usize) -> Option<i64> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// The values in order, `values()[0] == f(1)`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Pointwise multiple `c * f`, overflow-checked.
    pub fn scaled(&self, c: i64) -> Result<IntTable> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                v.checked_mul(c)
                    .ok_or_else(|| Error::overflow(format!("{} * {c}", self.name), i as u64 + 1))
            })
            .collect::<Result<Vec<_>>>()?;
        IntTable::new(format!("{c}*{}", self.name), values)
    }

    pub fn to_real(&self) -> RealTable {
        RealTable {
            name: self.name.clone(),
            values: self.values.iter().map(|&v| v as f64).collect(),
        }
    }
}

impl ArithmeticTable for IntTable {
    fn name(&self) -> &str {
        &self.name
    }

    fn limit(&self) -> usize {
        self.values.len()
    }

    fn value_f64(&self, n: usize) -> f64 {
        self.get(n) as f64
    }
}

/// Double-precision values `f(1), ..., f(N)`; every entry is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTable {
    name: String,
    values: Vec<f64>,
}

impl RealTable {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("table limit must be at least 1"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!("non-finite table value at n = {}", i + 1)));
        }
        Ok(RealTable {
            name: name.into(),
            values,
        })
    }

    pub fn from_fn(name: impl Into<String>, limit: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        check_limit(limit)?;
        RealTable::new(name, (1..=limit).map(f).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn limit(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> f64 {
        assert!(
            n >= 1 && n <= self.values.len(),
            "index {n} outside 1..={}",
            self.values.len()
        );
        self.values[n - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn scaled(&self, c: f64) -> Result<RealTable> {
        RealTable::new(
            format!("{c}*{}", self.name),
            self.values.iter().map(|v| v * c).collect(),
        )
    }
}

impl ArithmeticTable for RealTable {
    fn name(&self) -> &str {
        &self.name
    }

    fn limit(&self) -> usize {
        self.values.len()
    }

    fn value_f64(&self, n: usize) -> f64 {
        self.get(n)
    }
}

/// Either value domain, for code paths that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    Int(IntTable),
    Real(RealTable),
}

impl Table {
    pub fn to_real(&self) -> RealTable {
        match self {
            Table::Int(t) => t.to_real(),
            Table::Real(t) => t.clone(),
        }
    }

    pub fn as_int(&self) -> Option<&IntTable> {
        match self {
            Table::Int(t) => Some(t),
            Table::Real(_) => None,
        }
    }
}

impl ArithmeticTable for Table {
    fn name(&self) -> &str {
        match self {
            Table::Int(t) => t.name(),
            Table::Real(t) => t.name(),
        }
    }

    fn limit(&self) -> usize {
        match self {
            Table::Int(t) => t.limit(),
            Table::Real(t) => t.limit(),
        }
    }

    fn value_f64(&self, n: usize) -> f64 {
        match self {
            Table::Int(t) => t.value_f64(n),
            Table::Real(t) => t.value_f64(n),
        }
    }
}

impl From<IntTable> for Table {
    fn from(t: IntTable) -> Self {
        Table::Int(t)
    }
}

impl From<RealTable> for Table {
    fn from(t: RealTable) -> Self {
        Table::Real(t)
    }
}

fn check_limit(limit: usize) -> Result<()> {
    if limit == 0 {
        Err(Error::invalid("table limit must be at least 1"))
    } else {
        Ok(())
    }
}

/// The constant function `1`.
pub fn sieve_unit(limit: usize) -> Result<IntTable> {
    check_limit(limit)?;
    IntTable::new("unit", vec![1; limit])
}

/// The convolution identity: `1` at `n = 1`, `0` elsewhere.
pub fn sieve_epsilon(limit: usize) -> Result<IntTable> {
    check_limit(limit)?;
    let mut values = vec![0; limit];
    values[0] = 1;
    IntTable::new("epsilon", values)
}

/// `Id_s(n) = n^s`.
pub fn sieve_id_pow(s: u32, limit: usize) -> Result<IntTable> {
    check_limit(limit)?;
    let values = (1..=limit)
        .map(|n| {
            (n as i64)
                .checked_pow(s)
                .ok_or_else(|| Error::overflow(format!("id^{s}"), n as u64))
        })
        .collect::<Result<Vec<_>>>()?;
    IntTable::new(id_name(s), values)
}

fn id_name(s: u32) -> String {
    match s {
        0 => "unit".into(),
        1 => "id".into(),
        _ => format!("id^{s}"),
    }
}

/// Smallest prime factor of every `n <= limit`, from a linear sieve.
///
/// `spf[0]` and `spf[1]` are 0; the prime list is a by-product.
#[derive(Debug, Clone)]
pub struct SmallestPrimeFactor {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SmallestPrimeFactor {
    pub fn new(limit: usize) -> Result<Self> {
        check_limit(limit)?;
        if limit > u32::MAX as usize {
            return Err(Error::invalid(format!("limit {limit} exceeds the sieve range")));
        }
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let lp = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > lp || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SmallestPrimeFactor { spf, primes })
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Smallest prime factor of `n >= 2`.
    pub fn of(&self, n: usize) -> usize {
        self.spf[n] as usize
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }
}

/// Moebius function via the linear sieve.
pub fn sieve_mobius(limit: usize) -> Result<IntTable> {
    let spf = SmallestPrimeFactor::new(limit)?;
    Ok(mobius_from_spf(&spf))
}

pub fn mobius_from_spf(spf: &SmallestPrimeFactor) -> IntTable {
    let limit = spf.limit();
    let mut mu = vec![0i64; limit + 1];
    mu[1] = 1;
    for n in 2..=limit {
        let p = spf.of(n);
        let m = n / p;
        mu[n] = if m.is_multiple_of(p) { 0 } else { -mu[m] };
    }
    mu.remove(0);
    IntTable {
        name: "mobius".into(),
        values: mu,
    }
}

/// Euler's totient via the linear sieve.
pub fn sieve_phi(limit: usize) -> Result<IntTable> {
    let spf = SmallestPrimeFactor::new(limit)?;
    Ok(phi_from_spf(&spf))
}

pub fn phi_from_spf(spf: &SmallestPrimeFactor) -> IntTable {
    let limit = spf.limit();
    let mut phi = vec![0i64; limit + 1];
    phi[1] = 1;
    for n in 2..=limit {
        let p = spf.of(n);
        let m = n / p;
        phi[n] = if m.is_multiple_of(p) {
            phi[m] * p as i64
        } else {
            phi[m] * (p as i64 - 1)
        };
    }
    phi.remove(0);
    IntTable {
        name: "phi".into(),
        values: phi,
    }
}

/// `sigma_k(n) = sum of d^k over divisors d of n`, by sweeping each `d` over
/// its multiples (`O(N log N)` additions).
pub fn sieve_sigma_k(k: u32, limit: usize) -> Result<IntTable> {
    check_limit(limit)?;
    let name = sigma_name(k);
    let mut sigma = vec![0i64; limit + 1];
    for d in 1..=limit {
        let dk = (d as i64)
            .checked_pow(k)
            .ok_or_else(|| Error::overflow(name.clone(), d as u64))?;
        for m in (d..=limit).step_by(d) {
            sigma[m] = sigma[m]
                .checked_add(dk)
                .ok_or_else(|| Error::overflow(name.clone(), m as u64))?;
        }
    }
    sigma.remove(0);
    IntTable::new(name, sigma)
}

fn sigma_name(k: u32) -> String {
    format!("sigma_{k}")
}

/// `n^s` for the scaling helpers; exact for small integer exponents.
pub(crate) fn pow_n(n: usize, s: f64) -> f64 {
    let x = n as f64;
    if s.fract() == 0.0 && s.abs() <= 64.0 {
        x.powi(s as i32)
    } else {
        x.powf(s)
    }
}

/// `t(n) / n^s` as a real table.
pub fn scale_by_power<T: ArithmeticTable + ?Sized>(t: &T, s: f64) -> Result<RealTable> {
    if !s.is_finite() {
        return Err(Error::invalid(format!("scaling exponent must be finite, got {s}")));
    }
    let name = if s == 0.0 {
        t.name().to_string()
    } else {
        format!("{}/n^{s}", t.name())
    };
    let values = (1..=t.limit())
        .map(|n| {
            let v = t.value_f64(n);
            if s == 0.0 {
                v
            } else {
                v / pow_n(n, s)
            }
        })
        .collect();
    RealTable::new(name, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_id_pow() {
        assert_eq!(sieve_unit(5).unwrap().values(), &[1, 1, 1, 1, 1]);
        assert_eq!(sieve_unit(1).unwrap().values(), &[1]);
        assert_eq!(sieve_id_pow(0, 4).unwrap().values(), &[1, 1, 1, 1]);
        assert_eq!(sieve_id_pow(1, 4).unwrap().values(), &[1, 2, 3, 4]);
        assert_eq!(sieve_id_pow(2, 3).unwrap().values(), &[1, 4, 9]);
        assert_eq!(sieve_id_pow(0, 50).unwrap().values(), sieve_unit(50).unwrap().values());
    }

    #[test]
    fn zero_limit_is_rejected() {
        assert!(matches!(sieve_unit(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(sieve_mobius(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(sieve_phi(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(sieve_sigma_k(1, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(sieve_id_pow(1, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn id_pow_overflow_names_n() {
        // 8^21 = 2^63 is the first power of 8 past i64::MAX.
        match sieve_id_pow(21, 10) {
            Err(Error::Overflow { n, .. }) => assert_eq!(n, 8),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn sigma_overflow_is_detected() {
        assert!(matches!(sieve_sigma_k(20, 10), Err(Error::Overflow { .. })));
    }

    #[test]
    fn small_values() {
        let mu = sieve_mobius(30).unwrap();
        assert_eq!(mu.get(1), 1);
        assert_eq!(mu.get(4), 0);
        assert_eq!(mu.get(6), 1);
        assert_eq!(mu.get(30), -1);

        let phi = sieve_phi(12).unwrap();
        assert_eq!(phi.get(1), 1);
        assert_eq!(phi.get(10), 4);
        assert_eq!(phi.get(12), 4);
        assert_eq!(&phi.values()[..10], &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);

        assert_eq!(sieve_sigma_k(1, 6).unwrap().get(1), 1);
        assert_eq!(sieve_sigma_k(1, 6).unwrap().get(6), 12);
        assert_eq!(sieve_sigma_k(0, 12).unwrap().get(12), 6);
    }

    #[test]
    fn spf_primes() {
        let spf = SmallestPrimeFactor::new(30).unwrap();
        assert_eq!(spf.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(spf.of(25), 5);
        assert_eq!(spf.of(29), 29);
    }

    #[test]
    fn scaling() {
        let phi = sieve_phi(10).unwrap();
        assert_eq!(scale_by_power(&phi, 1.0).unwrap().get(10), 0.4);
        let mu = sieve_mobius(10).unwrap();
        assert_eq!(scale_by_power(&mu, 2.0).unwrap().get(4), 0.0);
        let s0 = scale_by_power(&phi, 0.0).unwrap();
        assert_eq!(s0.values(), phi.to_real().values());
        assert!(scale_by_power(&phi, f64::NAN).is_err());
    }

    #[test]
    fn real_table_rejects_non_finite() {
        assert!(matches!(
            RealTable::new("x", vec![1.0, f64::INFINITY]),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn integer_scaling_checks_overflow() {
        let t = IntTable::new("big", vec![i64::MAX / 2 + 1]).unwrap();
        assert!(matches!(t.scaled(2), Err(Error::Overflow { .. })));
        assert_eq!(sieve_unit(3).unwrap().scaled(-2).unwrap().values(), &[-2, -2, -2]);
    }
}
