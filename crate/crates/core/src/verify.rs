//! Predicted leading terms for summatory functions and the finite-`x` checks
//! that decide whether measured sums follow them.
//!
//! Three shapes of law are supported:
//!
//! * power laws `C x^alpha`, checked through the relative deviation
//!   `|M(x) / (C x^alpha) - 1|` at each checkpoint, which must end below a
//!   tolerance and must not grow (beyond a slack factor) more than once over
//!   the last four checkpoints;
//! * logarithmic laws `A ln x (+ B)`, checked through the difference quotient
//!   `(S(x_j) - S(x_i)) / (ln x_j - ln x_i)` over the last checkpoint pair,
//!   which cancels the constant `B`;
//! * little-o bounds `o(x^alpha)`, checked through the decay of
//!   `r(x) = |S(x)| / x^alpha` between the first and last checkpoint.
//!
//! Convergence and divergence hypotheses on Dirichlet series are checked on
//! the table itself by comparing the contribution of the last decade
//! `(N/10, N]` with the whole sum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcs::{pow_n, ArithmeticTable, Table};
use crate::quadrature::CompensatedSum;
use crate::sums::{prefix_sums, AbelSums, PrefixSums, SumProvider};

pub const DEFAULT_POWER_TOL: f64 = 1e-3;
pub const DEFAULT_LOG_TOL: f64 = 1e-2;
pub const DEFAULT_DECAY_THRESHOLD: f64 = 0.1;
pub const DEFAULT_TREND_SLACK: f64 = 1.5;
pub const DEFAULT_CONVERGENCE_TAIL: f64 = 1e-3;
pub const DEFAULT_DIVERGENCE_SHARE: f64 = 0.1;

/// Number of trailing checkpoints inspected by the power-law trend rule.
const TREND_WINDOW: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum LawKind {
    PowerLaw {
        exponent: f64,
        coefficient: f64,
    },
    LogLaw {
        coefficient: f64,
        intercept_estimate: Option<f64>,
    },
    LittleO {
        exponent: f64,
    },
}

/// A predicted leading term together with a human-readable statement of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "crate::report::LawRecord", try_from = "crate::report::LawRecord")]
pub struct AsymptoticLaw {
    pub kind: LawKind,
    pub description: String,
    /// Which classical statement the law instantiates.
    pub anchor: String,
    /// Contribution of the last table decade to the defining series.
    pub series_tail: Option<f64>,
}

impl AsymptoticLaw {
    pub fn power_law(
        exponent: f64,
        coefficient: f64,
        description: impl Into<String>,
        anchor: impl Into<String>,
    ) -> Result<Self> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::invalid(format!(
                "power-law exponent must be positive, got {exponent}"
            )));
        }
        if !coefficient.is_finite() || coefficient == 0.0 {
            return Err(Error::invalid(format!(
                "power-law coefficient must be finite and nonzero, got {coefficient}"
            )));
        }
        Ok(AsymptoticLaw {
            kind: LawKind::PowerLaw { exponent, coefficient },
            description: description.into(),
            anchor: anchor.into(),
            series_tail: None,
        })
    }

    pub fn log_law(coefficient: f64, description: impl Into<String>, anchor: impl Into<String>) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::invalid(format!(
                "log-law coefficient must be finite, got {coefficient}"
            )));
        }
        Ok(AsymptoticLaw {
            kind: LawKind::LogLaw {
                coefficient,
                intercept_estimate: None,
            },
            description: description.into(),
            anchor: anchor.into(),
            series_tail: None,
        })
    }

    pub fn little_o(exponent: f64, description: impl Into<String>, anchor: impl Into<String>) -> Result<Self> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::invalid(format!(
                "little-o exponent must be positive, got {exponent}"
            )));
        }
        Ok(AsymptoticLaw {
            kind: LawKind::LittleO { exponent },
            description: description.into(),
            anchor: anchor.into(),
            series_tail: None,
        })
    }

    /// Leading coefficient for power and log laws.
    pub fn coefficient(&self) -> Option<f64> {
        match self.kind {
            LawKind::PowerLaw { coefficient, .. } | LawKind::LogLaw { coefficient, .. } => Some(coefficient),
            LawKind::LittleO { .. } => None,
        }
    }

    pub fn exponent(&self) -> Option<f64> {
        match self.kind {
            LawKind::PowerLaw { exponent, .. } | LawKind::LittleO { exponent } => Some(exponent),
            LawKind::LogLaw { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Pass only if every part passes; any failure fails the whole.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in verdicts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub x: u64,
    #[serde(with = "crate::report::sig17")]
    pub measured: f64,
    #[serde(with = "crate::report::sig17")]
    pub predicted: f64,
    /// Relative deviation for power and log laws, `|measured| / x^alpha`
    /// for little-o laws.
    #[serde(with = "crate::report::sig17")]
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(with = "crate::report::sig17")]
    pub tol_final: f64,
    #[serde(with = "crate::report::sig17")]
    pub trend_slack: f64,
    #[serde(with = "crate::report::sig17")]
    pub decay_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub law: AsymptoticLaw,
    /// What was measured, e.g. `M(phi, x)`.
    pub source: String,
    pub checkpoints: Vec<Checkpoint>,
    pub verdict: Verdict,
    pub tolerances: Tolerances,
    /// Difference-quotient slope for log laws.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::report::sig17_opt")]
    pub estimated_coefficient: Option<f64>,
}

impl VerificationReport {
    pub fn final_deviation(&self) -> f64 {
        self.checkpoints.last().map_or(f64::NAN, |c| c.deviation)
    }

    pub fn deviations(&self) -> Vec<f64> {
        self.checkpoints.iter().map(|c| c.deviation).collect()
    }
}

/// Thresholds for [`evaluate_law`]. `tol_final = None` picks the default
/// for the law's kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub tol_final: Option<f64>,
    pub trend_slack: f64,
    pub decay_threshold: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tol_final: None,
            trend_slack: DEFAULT_TREND_SLACK,
            decay_threshold: DEFAULT_DECAY_THRESHOLD,
        }
    }
}

impl EvalOptions {
    fn tolerances(&self, kind: &LawKind) -> Tolerances {
        let default_tol = match kind {
            LawKind::PowerLaw { .. } => DEFAULT_POWER_TOL,
            LawKind::LogLaw { .. } => DEFAULT_LOG_TOL,
            LawKind::LittleO { .. } => 0.0,
        };
        Tolerances {
            tol_final: self.tol_final.unwrap_or(default_tol),
            trend_slack: self.trend_slack,
            decay_threshold: self.decay_threshold,
        }
    }
}

/// Thresholds for the decade-tail series tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTests {
    /// A series counts as convergent when its last decade contributes at
    /// most this fraction of the absolute total.
    pub convergence_tail: f64,
    /// A series counts as divergent when its last decade contributes more
    /// than this fraction of the running total.
    pub divergence_share: f64,
}

impl Default for SeriesTests {
    fn default() -> Self {
        SeriesTests {
            convergence_tail: DEFAULT_CONVERGENCE_TAIL,
            divergence_share: DEFAULT_DIVERGENCE_SHARE,
        }
    }
}

/// Last-decade statistics of a series `sum_{n <= N} t(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecadeTail {
    pub total: f64,
    pub absolute_total: f64,
    /// Signed sum over `N/10 < n <= N`.
    pub last_decade: f64,
}

impl DecadeTail {
    pub fn of(limit: usize, term: impl Fn(usize) -> f64) -> Self {
        let start = limit / 10;
        let mut total = CompensatedSum::default();
        let mut absolute = CompensatedSum::default();
        let mut decade = CompensatedSum::default();
        for n in 1..=limit {
            let t = term(n);
            total.add(t);
            absolute.add(t.abs());
            if n > start {
                decade.add(t);
            }
        }
        DecadeTail {
            total: total.value(),
            absolute_total: absolute.value(),
            last_decade: decade.value(),
        }
    }

    /// `|last decade| / sum |t(n)|`; zero for the zero series.
    pub fn convergence_ratio(&self) -> f64 {
        if self.absolute_total == 0.0 {
            0.0
        } else {
            self.last_decade.abs() / self.absolute_total
        }
    }

    /// `|last decade| / |total|`.
    pub fn divergence_ratio(&self) -> f64 {
        if self.total == 0.0 {
            if self.last_decade == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.last_decade / self.total).abs()
        }
    }
}

fn require_convergent(tail: &DecadeTail, tests: &SeriesTests, what: &str) -> Result<()> {
    let ratio = tail.convergence_ratio();
    if ratio < tests.convergence_tail {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "{what} is not numerically convergent: last decade carries {ratio:.3e} of the total (limit {:.1e})",
            tests.convergence_tail
        )))
    }
}

fn require_table_decade<T: ArithmeticTable + ?Sized>(t: &T) -> Result<()> {
    if t.limit() < 10 {
        return Err(Error::invalid(format!(
            "series tests need a table of at least 10 entries, {} has {}",
            t.name(),
            t.limit()
        )));
    }
    Ok(())
}

/// `M(f, x) ~ x^{s+1}/(s+1) * sum g(n)/n^{s+1}` for `f = Id_s * g`.
///
/// The coefficient uses the truncated series over the table of `g`; the
/// absolute series `sum |g(n)|/n^{s+1}` must pass the convergence test.
pub fn wintner_law<T: ArithmeticTable + ?Sized>(g: &T, s: u32) -> Result<AsymptoticLaw> {
    wintner_law_with(g, s, &SeriesTests::default())
}

pub fn wintner_law_with<T: ArithmeticTable + ?Sized>(g: &T, s: u32, tests: &SeriesTests) -> Result<AsymptoticLaw> {
    require_table_decade(g)?;
    let alpha = s as f64 + 1.0;
    let weighted = |n: usize| g.value_f64(n) / pow_n(n, alpha);
    let tail = DecadeTail::of(g.limit(), |n| weighted(n).abs());
    require_convergent(&tail, tests, &format!("sum |{}(n)|/n^{}", g.name(), s + 1))?;
    let series: CompensatedSum = (1..=g.limit()).map(weighted).collect();
    let coefficient = series.value() / alpha;
    let mut law = AsymptoticLaw::power_law(
        alpha,
        coefficient,
        format!(
            "M(f, x) = x^{p}/{p} * sum {g}(n)/n^{p} + o(x^{p}) with f = Id_{s} * {g}",
            p = s + 1,
            g = g.name()
        ),
        format!("generalized Wintner mean value, s = {s}"),
    )?;
    law.series_tail = Some(tail.last_decade);
    Ok(law)
}

/// `sum_{n <= x} f(n) ~ A ln x * sum g(n)` for `f = (A/Id) * g`.
pub fn log_mean_law<T: ArithmeticTable + ?Sized>(g: &T, a: f64) -> Result<AsymptoticLaw> {
    log_mean_law_with(g, a, &SeriesTests::default())
}

pub fn log_mean_law_with<T: ArithmeticTable + ?Sized>(g: &T, a: f64, tests: &SeriesTests) -> Result<AsymptoticLaw> {
    require_table_decade(g)?;
    if !a.is_finite() {
        return Err(Error::invalid(format!("A must be finite, got {a}")));
    }
    let tail = DecadeTail::of(g.limit(), |n| g.value_f64(n).abs());
    require_convergent(&tail, tests, &format!("sum |{}(n)|", g.name()))?;
    let series: CompensatedSum = (1..=g.limit()).map(|n| g.value_f64(n)).collect();
    let mut law = AsymptoticLaw::log_law(
        a * series.value(),
        format!(
            "sum_(n<=x) f(n) = {a} ln x * sum {g}(n) + o(ln x) with f = ({a}/Id) * {g}",
            g = g.name()
        ),
        "logarithmic asymptotic mean",
    )?;
    law.series_tail = Some(tail.last_decade);
    Ok(law)
}

fn validate_checkpoints(checkpoints: &[usize], limit: usize) -> Result<()> {
    if checkpoints.len() < 3 {
        return Err(Error::invalid(format!(
            "need at least 3 checkpoints, got {}",
            checkpoints.len()
        )));
    }
    if checkpoints[0] == 0 {
        return Err(Error::invalid("checkpoints must be at least 1"));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("checkpoints must be strictly increasing"));
    }
    let last = *checkpoints.last().unwrap();
    if last > limit {
        return Err(Error::invalid(format!(
            "checkpoint {last} exceeds the table limit {limit}"
        )));
    }
    Ok(())
}

fn measure(sums: &dyn SumProvider, checkpoints: &[usize]) -> Result<Vec<f64>> {
    checkpoints
        .iter()
        .map(|&x| {
            let v = sums.sum_at(x)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Numeric(format!("non-finite measured sum at x = {x}")))
            }
        })
        .collect()
}

/// `(S(x_j) - S(x_i)) / (ln x_j - ln x_i)`.
pub fn log_difference_quotient(s_i: f64, x_i: usize, s_j: f64, x_j: usize) -> f64 {
    (s_j - s_i) / ((x_j as f64).ln() - (x_i as f64).ln())
}

fn relative_deviation(measured: f64, predicted: f64) -> f64 {
    if predicted == 0.0 {
        measured.abs()
    } else {
        (measured / predicted - 1.0).abs()
    }
}

/// Number of `deviation_i > slack * deviation_{i-1}` steps among the last
/// [`TREND_WINDOW`] checkpoints.
fn trend_violations(deviations: &[f64], slack: f64) -> usize {
    let start = deviations.len().saturating_sub(TREND_WINDOW);
    deviations[start..].windows(2).filter(|w| w[1] > slack * w[0]).count()
}

/// Measure `sums` at `checkpoints` and judge them against `law`.
///
/// Power law: pass when the last deviation is within `tol_final` and the
/// trend rule fails at most once; a good final deviation with an erratic
/// trend is inconclusive. Log law: pass when the difference-quotient slope
/// is within `tol_final` of the law's coefficient (absolute when the
/// coefficient is zero). Little-o: pass when `r_last <= decay_threshold *
/// r_first`, or when every `r` is zero.
pub fn evaluate_law(
    law: &AsymptoticLaw,
    sums: &dyn SumProvider,
    checkpoints: &[usize],
    opts: &EvalOptions,
) -> Result<VerificationReport> {
    validate_checkpoints(checkpoints, sums.limit())?;
    let measured = measure(sums, checkpoints)?;
    let tolerances = opts.tolerances(&law.kind);
    let mut law = law.clone();
    let mut estimated_coefficient = None;

    let (predicted, deviations, verdict): (Vec<f64>, Vec<f64>, Verdict) = match law.kind {
        LawKind::PowerLaw { exponent, coefficient } => {
            let predicted: Vec<f64> = checkpoints
                .iter()
                .map(|&x| coefficient * (x as f64).powf(exponent))
                .collect();
            let deviations: Vec<f64> = measured
                .iter()
                .zip(&predicted)
                .map(|(&m, &p)| relative_deviation(m, p))
                .collect();
            let last_ok = *deviations.last().unwrap() <= tolerances.tol_final;
            let trend_ok = trend_violations(&deviations, tolerances.trend_slack) <= 1;
            let verdict = match (last_ok, trend_ok) {
                (true, true) => Verdict::Pass,
                (true, false) => Verdict::Inconclusive,
                (false, _) => Verdict::Fail,
            };
            (predicted, deviations, verdict)
        }
        LawKind::LogLaw { coefficient, .. } => {
            let n = checkpoints.len();
            let slope =
                log_difference_quotient(measured[n - 2], checkpoints[n - 2], measured[n - 1], checkpoints[n - 1]);
            let intercept = measured[n - 1] - slope * (checkpoints[n - 1] as f64).ln();
            estimated_coefficient = Some(slope);
            law.kind = LawKind::LogLaw {
                coefficient,
                intercept_estimate: Some(intercept),
            };
            let predicted: Vec<f64> = checkpoints
                .iter()
                .map(|&x| coefficient * (x as f64).ln() + intercept)
                .collect();
            let deviations = measured
                .iter()
                .zip(&predicted)
                .map(|(&m, &p)| relative_deviation(m, p))
                .collect();
            let miss = relative_deviation(slope, coefficient);
            let verdict = if miss <= tolerances.tol_final {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            (predicted, deviations, verdict)
        }
        LawKind::LittleO { exponent } => {
            let ratios: Vec<f64> = measured
                .iter()
                .zip(checkpoints)
                .map(|(&m, &x)| m.abs() / (x as f64).powf(exponent))
                .collect();
            let first = ratios[0];
            let last = *ratios.last().unwrap();
            let verdict = if last <= tolerances.decay_threshold * first || (first == 0.0 && last == 0.0) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            (vec![0.0; ratios.len()], ratios, verdict)
        }
    };

    if let Some(bad) = deviations.iter().position(|d| !d.is_finite()) {
        return Err(Error::Numeric(format!(
            "non-finite deviation at x = {}",
            checkpoints[bad]
        )));
    }

    let checkpoints = checkpoints
        .iter()
        .zip(measured)
        .zip(predicted)
        .zip(deviations)
        .map(|(((&x, measured), predicted), deviation)| Checkpoint {
            x: x as u64,
            measured,
            predicted,
            deviation,
        })
        .collect();

    Ok(VerificationReport {
        law,
        source: sums.label(),
        checkpoints,
        verdict,
        tolerances,
        estimated_coefficient,
    })
}

/// Decades `10^first, 10^(first+1), ...` up to `limit`.
pub fn decade_checkpoints(first_exponent: u32, limit: usize) -> Vec<usize> {
    geometric_checkpoints(10usize.pow(first_exponent), 10, limit)
}

/// `start, start*ratio, ...` while `<= limit`.
pub fn geometric_checkpoints(start: usize, ratio: usize, limit: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut x = start.max(1);
    while x <= limit {
        out.push(x);
        match x.checked_mul(ratio.max(2)) {
            Some(next) => x = next,
            None => break,
        }
    }
    out
}

/// Decay family for `f` when `sum f(n)/n^s` converges but
/// `sum f(n)/n^{s-1}` diverges: `sum_{n<=x} f(n)/n^k = o(x^{s-k})` for
/// `k = 1..=k_max`, plus `sum_{n<=x} f(n)/n^{s-j} = o(x^j)` at `j = extra_k`.
///
/// Both series hypotheses are checked on the table first.
pub fn kronecker_decay_family(
    f: &Table,
    s: f64,
    k_max: u32,
    extra_k: u32,
    checkpoints: &[usize],
    opts: &EvalOptions,
    tests: &SeriesTests,
) -> Result<Vec<VerificationReport>> {
    require_table_decade(f)?;
    check_exponents(s, k_max, extra_k)?;
    let converge = DecadeTail::of(f.limit(), |n| f.value_f64(n) / pow_n(n, s));
    require_convergent(&converge, tests, &format!("sum {}(n)/n^{s}", f.name()))?;
    let diverge = DecadeTail::of(f.limit(), |n| f.value_f64(n) / pow_n(n, s - 1.0));
    let share = diverge.divergence_ratio();
    if share <= tests.divergence_share {
        return Err(Error::PreconditionViolated(format!(
            "sum {}(n)/n^{} is not numerically divergent: last decade carries only {share:.3e} of the total (need > {})",
            f.name(),
            s - 1.0,
            tests.divergence_share
        )));
    }
    let prefix = prefix_sums(f)?;
    kronecker_decay_reports(&prefix, s, k_max, extra_k, checkpoints, opts)
}

fn check_exponents(s: f64, k_max: u32, extra_k: u32) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::invalid(format!("s must be finite, got {s}")));
    }
    if k_max == 0 {
        return Err(Error::invalid("k_max must be at least 1"));
    }
    if s - k_max as f64 <= 0.0 {
        return Err(Error::PreconditionViolated(format!(
            "s - k_max must be positive, got s = {s}, k_max = {k_max}"
        )));
    }
    if extra_k == 0 || s - extra_k as f64 <= 0.0 {
        return Err(Error::PreconditionViolated(format!(
            "need 1 <= k < s for the o(x^k) bound, got k = {extra_k}, s = {s}"
        )));
    }
    Ok(())
}

/// The reports of [`kronecker_decay_family`] without the series checks.
pub fn kronecker_decay_reports(
    prefix: &PrefixSums,
    s: f64,
    k_max: u32,
    extra_k: u32,
    checkpoints: &[usize],
    opts: &EvalOptions,
) -> Result<Vec<VerificationReport>> {
    check_exponents(s, k_max, extra_k)?;
    let name = prefix.name();
    let mut reports = Vec::with_capacity(k_max as usize + 1);
    for k in 1..=k_max {
        let law = AsymptoticLaw::little_o(
            s - k as f64,
            format!("sum_(n<=x) {name}(n)/n^{k} = o(x^{})", s - k as f64),
            format!("Kronecker decay family, k = {k}"),
        )?;
        let sums = AbelSums { prefix, k: k as f64 };
        reports.push(evaluate_law(&law, &sums, checkpoints, opts)?);
    }
    let j = extra_k as f64;
    let law = AsymptoticLaw::little_o(
        j,
        format!("sum_(n<=x) {name}(n)/n^{} = o(x^{extra_k})", s - j),
        format!("Kronecker decay at shifted exponent, k = {extra_k}"),
    )?;
    let sums = AbelSums { prefix, k: s - j };
    reports.push(evaluate_law(&law, &sums, checkpoints, opts)?);
    Ok(reports)
}
