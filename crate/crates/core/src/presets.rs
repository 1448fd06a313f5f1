//! Ready-made verification runs for the classical worked examples.

use std::fmt;
use std::str::FromStr;

use crate::convolve::dirichlet_convolve_real;
use crate::error::{Error, Result};
use crate::funcs::{
    mobius_from_spf, phi_from_spf, scale_by_power, sieve_epsilon, sieve_sigma_k, sieve_unit, SmallestPrimeFactor, Table,
};
use crate::sums::PrefixSums;
use crate::verify::{
    decade_checkpoints, evaluate_law, kronecker_decay_family, log_mean_law_with, wintner_law_with, EvalOptions,
    SeriesTests, Verdict, VerificationReport,
};

pub const DEFAULT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetId {
    /// `M(phi, x) ~ 3x^2/pi^2`, from `phi = Id * mu`.
    PhiWintner,
    /// `M(sigma_k, x) ~ zeta(k+1) x^{k+1}/(k+1)`, from `sigma_k = Id_k * 1`.
    SigmaKWintner,
    /// `sum phi(n)/n ~ x/zeta(2)`, from `phi/Id = 1 * mu/Id`.
    PhiOverN,
    /// `sum (3/Id * mu/Id^2)(n) ~ 3 ln x / zeta(2)`.
    LogMean3Mu,
    /// `sum (1/Id * sigma/Id^3)(n) ~ zeta(2) zeta(3) ln x`.
    LogMeanSigma,
    /// `sum sigma_k(n)/n^j = o(x^{k+2-j})` for `j = 1..=k+1`.
    KroneckerSigmaK,
    /// `sum 1/n ~ ln x + gamma`.
    HarmonicGamma,
}

impl PresetId {
    pub const ALL: [PresetId; 7] = [
        PresetId::PhiWintner,
        PresetId::SigmaKWintner,
        PresetId::PhiOverN,
        PresetId::LogMean3Mu,
        PresetId::LogMeanSigma,
        PresetId::KroneckerSigmaK,
        PresetId::HarmonicGamma,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetId::PhiWintner => "phi-wintner",
            PresetId::SigmaKWintner => "sigma-k-wintner",
            PresetId::PhiOverN => "phi-over-n",
            PresetId::LogMean3Mu => "logmean-3mu",
            PresetId::LogMeanSigma => "logmean-sigma",
            PresetId::KroneckerSigmaK => "kronecker-sigma-k",
            PresetId::HarmonicGamma => "harmonic-gamma",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            PresetId::PhiWintner => "M(phi, x) = 3x^2/pi^2 + o(x^2)",
            PresetId::SigmaKWintner => "M(sigma_k, x) = zeta(k+1) x^(k+1)/(k+1) + o(x^(k+1))",
            PresetId::PhiOverN => "sum phi(n)/n = x/zeta(2) + o(x)",
            PresetId::LogMean3Mu => "sum (3/n * mu(n)/n^2) = 3 ln x/zeta(2) + o(ln x)",
            PresetId::LogMeanSigma => "sum (1/n * sigma(n)/n^3) = zeta(2)zeta(3) ln x + o(ln x)",
            PresetId::KroneckerSigmaK => "sum sigma_k(n)/n^j = o(x^(k+2-j)), j = 1..k+1",
            PresetId::HarmonicGamma => "sum 1/n = ln x + gamma + O(1/x)",
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown preset {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PresetConfig {
    pub limit: usize,
    /// Defaults to the decades `10^3 ..= limit`.
    pub checkpoints: Option<Vec<usize>>,
    /// `k` for the `sigma_k` presets.
    pub k: u32,
    pub eval: EvalOptions,
    pub series: SeriesTests,
}

impl Default for PresetConfig {
    fn default() -> Self {
        PresetConfig {
            limit: DEFAULT_LIMIT,
            checkpoints: None,
            k: 1,
            eval: EvalOptions::default(),
            series: SeriesTests::default(),
        }
    }
}

impl PresetConfig {
    pub fn checkpoints(&self) -> Vec<usize> {
        self.checkpoints
            .clone()
            .unwrap_or_else(|| decade_checkpoints(3, self.limit))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PresetOutcome {
    pub preset: PresetId,
    pub reports: Vec<VerificationReport>,
    pub verdict: Verdict,
}

fn single(preset: PresetId, report: VerificationReport) -> PresetOutcome {
    PresetOutcome {
        preset,
        verdict: report.verdict,
        reports: vec![report],
    }
}

pub fn run_preset(preset: PresetId, config: &PresetConfig) -> Result<PresetOutcome> {
    let limit = config.limit;
    let checkpoints = config.checkpoints();
    let eval = &config.eval;
    let series = &config.series;
    match preset {
        PresetId::PhiWintner => {
            let spf = SmallestPrimeFactor::new(limit)?;
            let law = wintner_law_with(&mobius_from_spf(&spf), 1, series)?;
            let sums = PrefixSums::from_int(&phi_from_spf(&spf))?;
            Ok(single(preset, evaluate_law(&law, &sums, &checkpoints, eval)?))
        }
        PresetId::SigmaKWintner => {
            let law = wintner_law_with(&sieve_unit(limit)?, config.k, series)?;
            let sums = PrefixSums::from_int(&sieve_sigma_k(config.k, limit)?)?;
            Ok(single(preset, evaluate_law(&law, &sums, &checkpoints, eval)?))
        }
        PresetId::PhiOverN => {
            let spf = SmallestPrimeFactor::new(limit)?;
            let g = scale_by_power(&mobius_from_spf(&spf), 1.0)?;
            let law = wintner_law_with(&g, 0, series)?;
            let f = scale_by_power(&phi_from_spf(&spf), 1.0)?;
            let sums = PrefixSums::from_real(&f);
            Ok(single(preset, evaluate_law(&law, &sums, &checkpoints, eval)?))
        }
        PresetId::LogMean3Mu => {
            let spf = SmallestPrimeFactor::new(limit)?;
            let g = scale_by_power(&mobius_from_spf(&spf), 2.0)?;
            log_mean_run(preset, 3.0, &g, config)
        }
        PresetId::LogMeanSigma => {
            let g = scale_by_power(&sieve_sigma_k(1, limit)?, 3.0)?;
            log_mean_run(preset, 1.0, &g, config)
        }
        PresetId::HarmonicGamma => {
            let g = sieve_epsilon(limit)?.to_real();
            log_mean_run(preset, 1.0, &g, config)
        }
        PresetId::KroneckerSigmaK => {
            let k = config.k;
            let f = Table::Int(sieve_sigma_k(k, limit)?);
            let s = k as f64 + 2.0;
            let reports = kronecker_decay_family(&f, s, k + 1, 1, &checkpoints, eval, series)?;
            let verdict = Verdict::combine(reports.iter().map(|r| r.verdict));
            Ok(PresetOutcome {
                preset,
                reports,
                verdict,
            })
        }
    }
}

/// `f = (A/Id) * g` measured against the log-mean law of `g`.
fn log_mean_run(preset: PresetId, a: f64, g: &crate::funcs::RealTable, config: &PresetConfig) -> Result<PresetOutcome> {
    let law = log_mean_law_with(g, a, &config.series)?;
    let base = scale_by_power(&sieve_unit(config.limit)?, 1.0)?.scaled(a)?;
    let f = dirichlet_convolve_real(&base, g)?;
    let sums = PrefixSums::from_real(&f);
    Ok(single(
        preset,
        evaluate_law(&law, &sums, &config.checkpoints(), &config.eval)?,
    ))
}
