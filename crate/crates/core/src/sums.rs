//! Summatory functions, truncated Dirichlet series and the summation-by-parts
//! rearrangement that rebuilds `sum f(n)/n^k` from prefix sums of `f`.

use crate::error::{Error, Result};
use crate::funcs::{pow_n, ArithmeticTable, IntTable, Table};
use crate::quadrature::{adaptive_simpson, CompensatedSum};

/// `M(f, x) = sum_{n <= x} f(n)` for `x = 1..=N`.
///
/// Integer sources are accumulated exactly in `i128` and the exact totals
/// are kept alongside the doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixSums {
    name: String,
    cumulative: Vec<f64>,
    exact: Option<Vec<i128>>,
}

impl PrefixSums {
    pub fn from_int(t: &IntTable) -> Result<Self> {
        let mut acc: i128 = 0;
        let mut exact = Vec::with_capacity(t.limit());
        for (i, &v) in t.values().iter().enumerate() {
            acc = acc
                .checked_add(v as i128)
                .ok_or_else(|| Error::overflow(format!("prefix sums of {}", t.name()), i as u64 + 1))?;
            exact.push(acc);
        }
        Ok(PrefixSums {
            name: t.name().to_string(),
            cumulative: exact.iter().map(|&v| v as f64).collect(),
            exact: Some(exact),
        })
    }

    /// Plain ascending-order accumulation in doubles.
    pub fn from_real<T: ArithmeticTable + ?Sized>(t: &T) -> Self {
        let mut acc = 0.0;
        let cumulative = (1..=t.limit())
            .map(|n| {
                acc += t.value_f64(n);
                acc
            })
            .collect();
        PrefixSums {
            name: t.name().to_string(),
            cumulative,
            exact: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn limit(&self) -> usize {
        self.cumulative.len()
    }

    /// `M(f, x)`; `x = 0` gives the empty sum. Panics past the limit.
    pub fn at(&self, x: usize) -> f64 {
        if x == 0 {
            0.0
        } else {
            self.cumulative[x - 1]
        }
    }

    /// Exact `M(f, x)` for integer sources.
    pub fn exact_at(&self, x: usize) -> Option<i128> {
        match (&self.exact, x) {
            (Some(_), 0) => Some(0),
            (Some(e), x) => e.get(x - 1).copied(),
            (None, _) => None,
        }
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }
}

/// Summatory function of any table.
pub fn prefix_sums(t: &Table) -> Result<PrefixSums> {
    match t {
        Table::Int(t) => PrefixSums::from_int(t),
        Table::Real(t) => Ok(PrefixSums::from_real(t)),
    }
}

/// Something that can report a running total at integer `x`.
pub trait SumProvider {
    fn label(&self) -> String;
    fn limit(&self) -> usize;
    fn sum_at(&self, x: usize) -> Result<f64>;
}

impl SumProvider for PrefixSums {
    fn label(&self) -> String {
        format!("M({}, x)", self.name)
    }

    fn limit(&self) -> usize {
        self.limit()
    }

    fn sum_at(&self, x: usize) -> Result<f64> {
        check_x(x, self.limit())?;
        Ok(self.at(x))
    }
}

/// `sum_{n <= x} f(n) / n^k` evaluated through [`abel_from_prefix`].
#[derive(Debug, Clone)]
pub struct AbelSums<'a> {
    pub prefix: &'a PrefixSums,
    pub k: f64,
}

impl SumProvider for AbelSums<'_> {
    fn label(&self) -> String {
        format!("sum {}(n)/n^{}", self.prefix.name(), self.k)
    }

    fn limit(&self) -> usize {
        self.prefix.limit()
    }

    fn sum_at(&self, x: usize) -> Result<f64> {
        abel_from_prefix(self.prefix, self.k, x)
    }
}

/// Any closure `x -> S(x)` up to a limit, e.g. synthetic sequences.
pub struct FnSums<F> {
    pub label: String,
    pub limit: usize,
    pub f: F,
}

impl<F: Fn(usize) -> f64> SumProvider for FnSums<F> {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn limit(&self) -> usize {
        self.limit
    }

    fn sum_at(&self, x: usize) -> Result<f64> {
        check_x(x, self.limit)?;
        Ok((self.f)(x))
    }
}

fn check_x(x: usize, limit: usize) -> Result<()> {
    if x == 0 || x > limit {
        return Err(Error::invalid(format!("x = {x} outside 1..={limit}")));
    }
    Ok(())
}

fn check_exponent(s: f64) -> Result<()> {
    if s.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("exponent must be finite, got {s}")))
    }
}

/// `sum_{n <= x} t(n) / n^s`, accumulated in ascending `n`.
pub fn dirichlet_partial_sum<T: ArithmeticTable + ?Sized>(t: &T, s: f64, x: usize) -> Result<f64> {
    check_x(x, t.limit())?;
    check_exponent(s)?;
    Ok((1..=x).map(|n| t.value_f64(n) / pow_n(n, s)).sum())
}

/// `(n+1)^-k - n^-k`, computed without cancellation for large `n`.
fn weight_step(n: usize, k: f64) -> f64 {
    let nf = n as f64;
    let base = pow_n(n, -k);
    base * (-k * (1.0 / nf).ln_1p()).exp_m1()
}

/// The same quantity as [`dirichlet_partial_sum`], rebuilt from prefix sums:
///
/// `M(f,x)/x^k - sum_{n <= x-1} ((n+1)^-k - n^-k) M(f,n)`.
pub fn abel_from_prefix(prefix: &PrefixSums, k: f64, x: usize) -> Result<f64> {
    check_x(x, prefix.limit())?;
    check_exponent(k)?;
    let head = prefix.at(x) * pow_n(x, -k);
    let correction: CompensatedSum = (1..x).map(|n| weight_step(n, k) * prefix.at(n)).collect();
    Ok(head - correction.value())
}

/// Summation by parts for a table; prefix sums are built up to `x` only.
pub fn abel_partial_sum<T: ArithmeticTable + ?Sized>(t: &T, k: f64, x: usize) -> Result<f64> {
    check_x(x, t.limit())?;
    let mut acc = 0.0;
    let cumulative = (1..=x)
        .map(|n| {
            acc += t.value_f64(n);
            acc
        })
        .collect();
    let prefix = PrefixSums {
        name: t.name().to_string(),
        cumulative,
        exact: None,
    };
    abel_from_prefix(&prefix, k, x)
}

/// Same as [`abel_partial_sum`] but with exact `i128` prefix sums.
pub fn abel_partial_sum_int(t: &IntTable, k: f64, x: usize) -> Result<f64> {
    check_x(x, t.limit())?;
    let prefix = PrefixSums::from_int(t)?;
    abel_from_prefix(&prefix, k, x)
}

/// Leading term `x^{s+1}/(s+1)` of `sum_{n <= x} n^s`. Expects `x >= 1`.
pub fn power_sum_asymptote(s: u32, x: f64) -> f64 {
    let e = s as f64 + 1.0;
    x.powf(e) / e
}

/// A monotone function `g` with `g(t) -> 0`, together with `g'`.
///
/// Monotonicity is the caller's promise; nothing checks it.
pub trait MonotoneFn {
    fn value(&self, t: f64) -> f64;
    fn derivative(&self, t: f64) -> f64;

    /// A closed-form antiderivative, when one is known.
    fn antiderivative(&self, _t: f64) -> Option<f64> {
        None
    }
}

/// `g(t) = coefficient * t^-exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDecay {
    pub coefficient: f64,
    pub exponent: f64,
}

impl MonotoneFn for PowerDecay {
    fn value(&self, t: f64) -> f64 {
        self.coefficient * t.powf(-self.exponent)
    }

    fn derivative(&self, t: f64) -> f64 {
        -self.exponent * self.coefficient * t.powf(-self.exponent - 1.0)
    }

    fn antiderivative(&self, t: f64) -> Option<f64> {
        Some(if self.exponent == 1.0 {
            self.coefficient * t.ln()
        } else {
            self.coefficient * t.powf(1.0 - self.exponent) / (1.0 - self.exponent)
        })
    }
}

/// Closure-backed [`MonotoneFn`] without a closed-form integral.
pub struct FnMonotone<G, D> {
    pub value: G,
    pub derivative: D,
}

impl<G: Fn(f64) -> f64, D: Fn(f64) -> f64> MonotoneFn for FnMonotone<G, D> {
    fn value(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    fn derivative(&self, t: f64) -> f64 {
        (self.derivative)(t)
    }
}

/// `sum_{a < n <= x} g(n) = integral + constant + O(|g(x)|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerMaclaurinEstimate {
    /// `integral of g over [a, x]`.
    pub integral: f64,
    /// `integral over [a, inf) of (t - floor t) g'(t) dt`, plus the boundary
    /// term `(a - floor a) g(a)` when `a` is not an integer.
    pub constant: f64,
    /// Scale of the remainder, `|g(x)|`.
    pub error_bound: f64,
    /// Change in `constant` over the last tail doubling.
    pub constant_error: f64,
}

impl EulerMaclaurinEstimate {
    pub fn estimate(&self) -> f64 {
        self.integral + self.constant
    }
}

const CONSTANT_TOL: f64 = 1e-12;
const PIECE_TOL: f64 = 1e-16;
const FIRST_CUTOFF: usize = 16;
const MAX_INTERVALS: usize = 1 << 22;

fn integral_of(g: &dyn MonotoneFn, a: f64, x: f64) -> Result<f64> {
    if let (Some(hi), Some(lo)) = (g.antiderivative(x), g.antiderivative(a)) {
        return Ok(hi - lo);
    }
    // Panels of doubling width keep each piece well resolved.
    let mut total = CompensatedSum::default();
    let mut lo = a;
    let mut width = 1.0;
    while lo < x {
        let hi = (lo + width).min(x);
        total.add(adaptive_simpson(&|t| g.value(t), lo, hi, 1e-14)?);
        lo = hi;
        width *= 2.0;
    }
    Ok(total.value())
}

/// Euler-Maclaurin tail for the constant: `sum_{m >= cut} I_m ~ -g/2 - g'/12`.
fn constant_tail(g: &dyn MonotoneFn, cut: f64) -> f64 {
    -0.5 * g.value(cut) - g.derivative(cut) / 12.0
}

fn constant_term(g: &dyn MonotoneFn, a: f64) -> Result<(f64, f64)> {
    let mut pieces = CompensatedSum::default();
    let floor_a = a.floor();
    let mut next = floor_a as usize;
    if a > floor_a {
        next += 1;
        pieces.add(adaptive_simpson(
            &|t| (t - floor_a) * g.derivative(t),
            a,
            next as f64,
            PIECE_TOL,
        )?);
    }
    // Boundary term {a} g(a); zero for integer a.
    pieces.add((a - floor_a) * g.value(a));
    let start = next;
    let mut cut = start + FIRST_CUTOFF;
    let mut previous: Option<f64> = None;
    loop {
        while next < cut {
            let m = next as f64;
            pieces.add(adaptive_simpson(&|t| (t - m) * g.derivative(t), m, m + 1.0, PIECE_TOL)?);
            next += 1;
        }
        let value = pieces.value() + constant_tail(g, cut as f64);
        if !value.is_finite() {
            return Err(Error::Numeric("non-finite constant term".into()));
        }
        if let Some(prev) = previous {
            let change = (value - prev).abs();
            if change <= CONSTANT_TOL {
                return Ok((value, change));
            }
        }
        if cut - start >= MAX_INTERVALS {
            return Err(Error::Numeric(format!(
                "constant term did not settle within {MAX_INTERVALS} unit intervals"
            )));
        }
        previous = Some(value);
        cut = start + 2 * (cut - start);
    }
}

/// Integral, constant and remainder scale for `sum_{a < n <= x} g(n)`.
pub fn euler_maclaurin_estimate(g: &dyn MonotoneFn, a: f64, x: f64) -> Result<EulerMaclaurinEstimate> {
    if !(a.is_finite() && x.is_finite()) || a < 0.0 || x < a {
        return Err(Error::invalid(format!("need finite 0 <= a <= x, got a = {a}, x = {x}")));
    }
    let integral = integral_of(g, a, x)?;
    let (constant, constant_error) = constant_term(g, a)?;
    Ok(EulerMaclaurinEstimate {
        integral,
        constant,
        error_bound: g.value(x).abs(),
        constant_error,
    })
}
