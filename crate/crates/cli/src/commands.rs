use std::fs;
use std::io::Write;
use std::thread;

use dirichlet_lab::catalog::{BaseFn, FunctionSpec};
use dirichlet_lab::constants::{euler_gamma, zeta, ConstantValue};
use dirichlet_lab::convolve::dirichlet_convolve;
use dirichlet_lab::funcs::{scale_by_power, sieve_id_pow, sieve_unit, Table};
use dirichlet_lab::presets::{run_preset, PresetConfig, PresetId};
use dirichlet_lab::sums::{abel_partial_sum, prefix_sums, PrefixSums};
use dirichlet_lab::verify::{
    decade_checkpoints, evaluate_law, log_mean_law_with, wintner_law_with, AsymptoticLaw, EvalOptions, Verdict,
    VerificationReport, DEFAULT_DECAY_THRESHOLD, DEFAULT_TREND_SLACK,
};

use crate::args::{
    ConstantsArgs, ConvolveArgs, CustomLaw, FnArgs, GenArgs, LawChoice, SeriesArgs, SumArgs, VerifyArgs,
};
use crate::error::CliError;
use crate::output;

type Result<T> = std::result::Result<T, CliError>;

impl FnArgs {
    /// The function with `--k` and `--s` applied.
    fn resolve(&self) -> Result<FunctionSpec> {
        let mut spec = self.function;
        if let Some(k) = self.k {
            if !matches!(spec.base, BaseFn::Id(_) | BaseFn::Sigma(_)) {
                return Err(CliError::usage(format!("--k does not apply to {}", spec.base)));
            }
            spec.base = spec.base.with_k(k);
        }
        if let Some(s) = self.s {
            if spec.scale != 0.0 {
                return Err(CliError::usage(format!(
                    "{} already divides by n^{}",
                    self.function, spec.scale
                )));
            }
            if !s.is_finite() {
                return Err(CliError::usage("--s must be finite"));
            }
            spec.scale = s;
        }
        Ok(spec)
    }
}

fn positive(name: &str, v: Option<f64>) -> Result<Option<f64>> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(CliError::usage(format!("{name} must be positive, got {x}"))),
        other => Ok(other),
    }
}

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let spec = args.function.resolve()?;
    let table = spec.build(args.limit.limit)?;
    output::table(out, &spec.to_string(), &table, args.format)
}

pub fn convolve(args: &ConvolveArgs, out: &mut dyn Write) -> Result<()> {
    let spec = args.function.resolve()?;
    let limit = args.limit.limit;
    let f = spec.build(limit)?;
    let g = args.with.build(limit)?;
    let h = dirichlet_convolve(&f, &g)?;
    let name = format!("({spec})*({})", args.with);
    match args.x {
        Some(x) if x == 0 || x > limit => Err(CliError::usage(format!("--x {x} outside 1..={limit}"))),
        Some(x) => output::scalar(out, &name, x, &h, args.format),
        None => output::table(out, &name, &h, args.format),
    }
}

pub fn sum(args: &SumArgs, out: &mut dyn Write) -> Result<()> {
    let spec = args.function.resolve()?;
    if args.x == 0 {
        return Err(CliError::usage("--x must be at least 1"));
    }
    let value = if args.abel {
        let base = FunctionSpec { scale: 0.0, ..spec };
        abel_partial_sum(&base.build(args.x)?, spec.scale, args.x)?
    } else {
        prefix_sums(&spec.build(args.x)?)?.at(args.x)
    };
    output::sum_value(out, &spec.to_string(), args.x, value, args.format)
}

pub fn series(args: &SeriesArgs, out: &mut dyn Write) -> Result<()> {
    let spec = args.function.resolve()?;
    let limit = args.limit.limit;
    let cutoffs = args.checkpoints.clone().unwrap_or_else(|| decade_checkpoints(1, limit));
    if let Some(&bad) = cutoffs.iter().find(|&&x| x == 0 || x > limit) {
        return Err(CliError::usage(format!("checkpoint {bad} outside 1..={limit}")));
    }
    let sums = prefix_sums(&spec.build(limit)?)?;
    let points: Vec<(usize, f64)> = cutoffs.iter().map(|&x| (x, sums.at(x))).collect();
    output::series(out, &spec.to_string(), &points, args.format)
}

pub fn constants(args: &ConstantsArgs, out: &mut dyn Write) -> Result<()> {
    let (name, value): (String, ConstantValue) = match args.zeta {
        Some(s) => (format!("zeta({s})"), zeta(s, args.tol)?),
        None => ("gamma".into(), euler_gamma(args.tol)?),
    };
    output::constant(out, &name, &value, args.format)
}

/// One labelled batch of reports.
pub struct Run {
    pub name: String,
    pub reports: Vec<VerificationReport>,
}

impl Run {
    fn verdict(&self) -> Verdict {
        Verdict::combine(self.reports.iter().map(|r| r.verdict))
    }
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<Verdict> {
    let eval = EvalOptions {
        tol_final: positive("--tol", args.tol)?,
        trend_slack: positive("--trend-slack", args.trend_slack)?.unwrap_or(DEFAULT_TREND_SLACK),
        decay_threshold: positive("--decay-threshold", args.decay_threshold)?.unwrap_or(DEFAULT_DECAY_THRESHOLD),
    };
    let config = PresetConfig {
        limit: args.limit.limit,
        checkpoints: args.checkpoints.clone(),
        k: args.k,
        eval,
        ..PresetConfig::default()
    };
    let runs = match args.target.as_str() {
        "all" => run_all(&config)?,
        "custom" => vec![Run {
            name: "custom".into(),
            reports: vec![custom(&args.custom, &config)?],
        }],
        id => {
            let preset: PresetId = id.parse().map_err(|_| {
                let known: Vec<_> = PresetId::ALL.iter().map(|p| p.as_str()).collect();
                CliError::usage(format!(
                    "unknown verify target {id:?}; expected custom, all or one of {}",
                    known.join(", ")
                ))
            })?;
            let outcome = run_preset(preset, &config)?;
            vec![Run {
                name: preset.to_string(),
                reports: outcome.reports,
            }]
        }
    };
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir)?;
        for run in &runs {
            for (i, report) in run.reports.iter().enumerate() {
                let stem = if run.reports.len() == 1 {
                    run.name.clone()
                } else {
                    format!("{}-{}", run.name, i + 1)
                };
                fs::write(dir.join(format!("{stem}.json")), report.to_json()?)?;
                fs::write(dir.join(format!("{stem}.csv")), report.to_csv())?;
            }
        }
    }
    output::reports(out, &runs, args.format)?;
    Ok(Verdict::combine(runs.iter().map(Run::verdict)))
}

fn run_all(config: &PresetConfig) -> Result<Vec<Run>> {
    let outcomes: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = PresetId::ALL
            .into_iter()
            .map(|p| scope.spawn(move || run_preset(p, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("preset worker panicked"))
            .collect()
    });
    outcomes
        .into_iter()
        .map(|o| {
            let o = o?;
            Ok(Run {
                name: o.preset.to_string(),
                reports: o.reports,
            })
        })
        .collect()
}

fn require<T: Copy>(v: Option<T>, flag: &str, law: &str) -> Result<T> {
    v.ok_or_else(|| CliError::usage(format!("--law {law} needs {flag}")))
}

fn custom(c: &CustomLaw, config: &PresetConfig) -> Result<VerificationReport> {
    let law_choice = c.law.ok_or_else(|| CliError::usage("verify custom needs --law"))?;
    let limit = config.limit;
    let checkpoints = config.checkpoints();
    let (law, measured): (AsymptoticLaw, Table) = match law_choice {
        LawChoice::Wintner => {
            let g_spec = require(c.g, "--g", "wintner")?;
            let s = require(c.s, "--s", "wintner")?;
            let g = g_spec.build(limit)?;
            let law = wintner_law_with(&g, s, &config.series)?;
            let f = match c.function {
                Some(f) => f.build(limit)?,
                None => dirichlet_convolve(&Table::Int(sieve_id_pow(s, limit)?), &g)?,
            };
            (law, f)
        }
        LawChoice::Logmean => {
            let g_spec = require(c.g, "--g", "logmean")?;
            let a = require(c.a, "--a", "logmean")?;
            let g = g_spec.build(limit)?;
            let law = log_mean_law_with(&g, a, &config.series)?;
            let f = match c.function {
                Some(f) => f.build(limit)?,
                None => {
                    let base = scale_by_power(&sieve_unit(limit)?, 1.0)?.scaled(a)?;
                    dirichlet_convolve(&Table::Real(base), &g)?
                }
            };
            (law, f)
        }
        LawChoice::LittleO => {
            let f = require(c.function, "--fn", "little-o")?;
            let alpha = require(c.alpha, "--alpha", "little-o")?;
            let law = AsymptoticLaw::little_o(alpha, format!("M({f}, x) = o(x^{alpha})"), "user-supplied law")?;
            (law, f.build(limit)?)
        }
    };
    let sums: PrefixSums = prefix_sums(&measured)?;
    Ok(evaluate_law(&law, &sums, &checkpoints, &config.eval)?)
}
