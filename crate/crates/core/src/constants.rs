//! `zeta(s)` for real `s > 1` and Euler's constant, each with an error bound.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    SeriesWithTail,
}

/// A real constant together with an absolute bound on its error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantValue {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
}

impl ConstantValue {
    pub fn closed_form(value: f64) -> Self {
        ConstantValue {
            value,
            error_bound: 0.0,
            method: Method::ClosedForm,
        }
    }

    /// Product with first-order error propagation.
    pub fn product(self, other: ConstantValue) -> ConstantValue {
        ConstantValue {
            value: self.value * other.value,
            error_bound: self.value.abs() * other.error_bound
                + other.value.abs() * self.error_bound
                + self.error_bound * other.error_bound,
            method: combine(self.method, other.method),
        }
    }

    /// Quotient; the divisor must be bounded away from zero.
    pub fn quotient(self, other: ConstantValue) -> ConstantValue {
        let q = self.value / other.value;
        let denom = other.value.abs() - other.error_bound;
        ConstantValue {
            value: q,
            error_bound: (self.error_bound + q.abs() * other.error_bound) / denom,
            method: combine(self.method, other.method),
        }
    }

    pub fn scale(self, c: f64) -> ConstantValue {
        ConstantValue {
            value: self.value * c,
            error_bound: self.error_bound * c.abs(),
            method: self.method,
        }
    }
}

fn combine(a: Method, b: Method) -> Method {
    if a == Method::ClosedForm && b == Method::ClosedForm {
        Method::ClosedForm
    } else {
        Method::SeriesWithTail
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("tolerance must be positive, got {tol}")))
    }
}

/// Euler-Maclaurin remainder after the `M^{-s-3}` correction term.
fn zeta_tail_bound(s: f64, m: f64) -> f64 {
    s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * m.powf(-s - 5.0)
}

/// `zeta(s)` for real `s > 1`.
///
/// Closed forms at `s = 2, 4`; elsewhere `sum_{n <= M} n^-s` plus the
/// integral tail `M^{1-s}/(s-1)` and its first three Euler-Maclaurin
/// corrections, with `M` the smallest cutoff whose remainder bound meets
/// `tol`. The reported bound also covers rounding, so it never drops below
/// a few ulps of the value.
pub fn zeta(s: f64, tol: f64) -> Result<ConstantValue> {
    if s.is_nan() || s <= 1.0 || s.is_infinite() {
        return Err(Error::Domain(format!("zeta needs real s > 1, got {s}")));
    }
    check_tol(tol)?;
    if s == 2.0 {
        return Ok(ConstantValue::closed_form(PI * PI / 6.0));
    }
    if s == 4.0 {
        return Ok(ConstantValue::closed_form(PI.powi(4) / 90.0));
    }
    // Smallest M with zeta_tail_bound(s, M) <= tol, never below 16.
    let scale = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0;
    let mut m = (scale / tol).powf(1.0 / (s + 5.0)).ceil().max(16.0);
    while zeta_tail_bound(s, m) > tol {
        m += 1.0;
    }
    let cutoff = m as u64;
    // Small terms first.
    let mut sum: CompensatedSum = (1..=cutoff).rev().map(|n| (n as f64).powf(-s)).collect();
    sum.add(m.powf(1.0 - s) / (s - 1.0));
    sum.add(-0.5 * m.powf(-s));
    sum.add(s * m.powf(-s - 1.0) / 12.0);
    sum.add(-s * (s + 1.0) * (s + 2.0) * m.powf(-s - 3.0) / 720.0);
    // zeta(s) < 1 + 1/(s-1), so the rounding allowance does not depend on M.
    let rounding = 4.0 * f64::EPSILON * (1.0 + 1.0 / (s - 1.0));
    Ok(ConstantValue {
        value: sum.value(),
        error_bound: zeta_tail_bound(s, m) + rounding,
        method: Method::SeriesWithTail,
    })
}

const GAMMA_MAX_CUTOFF: f64 = 1e7;

/// Euler's constant from `H_M - ln M - 1/(2M) + 1/(12M^2)`, remainder at
/// most `1/(120 M^4)`.
///
/// Requests tighter than the rounding floor (~1e-14) are clamped to it; the
/// returned bound is then larger than `tol`.
pub fn euler_gamma(tol: f64) -> Result<ConstantValue> {
    check_tol(tol)?;
    let mut m = (1.0 / (120.0 * tol)).powf(0.25).ceil().clamp(16.0, GAMMA_MAX_CUTOFF);
    while m < GAMMA_MAX_CUTOFF && 1.0 / (120.0 * m.powi(4)) > tol {
        m += 1.0;
    }
    let cutoff = m as u64;
    let mut sum: CompensatedSum = (1..=cutoff).rev().map(|n| 1.0 / n as f64).collect();
    sum.add(-m.ln());
    sum.add(-0.5 / m);
    sum.add(1.0 / (12.0 * m * m));
    // H_M and ln M are both below 17 for M <= 1e7.
    let rounding = 64.0 * f64::EPSILON;
    Ok(ConstantValue {
        value: sum.value(),
        error_bound: 1.0 / (120.0 * m.powi(4)) + rounding,
        method: Method::SeriesWithTail,
    })
}

/// `zeta(2)/zeta(4) = 15/pi^2`, the density-weighted sum of `|mu(n)|/n^2`.
pub fn zeta2_over_zeta4() -> ConstantValue {
    ConstantValue::closed_form(15.0 / (PI * PI))
}
