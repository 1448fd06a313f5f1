use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dirichlet_lab::catalog::FunctionSpec;

/// Arithmetic-function tables, Dirichlet convolutions and asymptotic-law checks.
#[derive(Debug, Parser)]
#[command(name = "dirichlet-lab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the table of an arithmetic function for n = 1..=limit.
    Gen(GenArgs),
    /// Dirichlet convolution of two functions.
    Convolve(ConvolveArgs),
    /// Summatory value sum_{n <= x} f(n)/n^s.
    Sum(SumArgs),
    /// Partial sums of a Dirichlet series at a list of cutoffs.
    Series(SeriesArgs),
    /// Check an asymptotic law against measured sums.
    Verify(VerifyArgs),
    /// zeta(s) and Euler's constant with error bounds.
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A function given as `name[:k][/s]`, adjusted by `--k` and `--s`.
#[derive(Debug, Args)]
pub struct FnArgs {
    /// unit, epsilon, id, mobius, phi or sigma, optionally `:k` and `/s`.
    #[arg(long = "fn", value_name = "SPEC", value_parser = parse_spec)]
    pub function: FunctionSpec,
    /// The k of `id:k` or `sigma:k`.
    #[arg(long)]
    pub k: Option<u32>,
    /// Divide by n^s.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LimitArg {
    /// Table size N; accepts `1000000`, `1_000_000` or `1e6`.
    #[arg(long, env = "DIRICHLET_LAB_LIMIT", default_value = "1000000", value_parser = parse_count)]
    pub limit: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub function: FnArgs,
    #[command(flatten)]
    pub limit: LimitArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConvolveArgs {
    #[command(flatten)]
    pub function: FnArgs,
    /// The second factor, `name[:k][/s]`.
    #[arg(long = "with", value_name = "SPEC", value_parser = parse_spec)]
    pub with: FunctionSpec,
    #[command(flatten)]
    pub limit: LimitArg,
    /// Print only the value at n = x.
    #[arg(long, value_parser = parse_count)]
    pub x: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[command(flatten)]
    pub function: FnArgs,
    /// Upper end of the sum.
    #[arg(long, value_parser = parse_count)]
    pub x: usize,
    /// Evaluate through summation by parts on the unscaled prefix sums.
    #[arg(long)]
    pub abel: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub function: FnArgs,
    #[command(flatten)]
    pub limit: LimitArg,
    /// Comma-separated cutoffs; decades 10..=limit by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub checkpoints: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawChoice {
    /// Power law from sum g(n)/n^{s+1}: needs `--g` and `--s`.
    Wintner,
    /// Log law A sum g(n): needs `--g` and `--a`.
    Logmean,
    /// M(f, x) = o(x^alpha): needs `--fn` and `--alpha`.
    LittleO,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A preset id, `custom`, or `all`.
    pub target: String,
    #[command(flatten)]
    pub limit: LimitArg,
    /// Comma-separated checkpoints; decades 10^3..=limit by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub checkpoints: Option<Vec<usize>>,
    /// Final-deviation tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest accepted decade-decay ratio for little-o laws.
    #[arg(long)]
    pub decay_threshold: Option<f64>,
    /// Allowed growth of deviations between checkpoints.
    #[arg(long)]
    pub trend_slack: Option<f64>,
    /// k for the sigma_k presets.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write one file per report into this directory.
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(flatten)]
    pub custom: CustomLaw,
}

#[derive(Debug, Args)]
pub struct CustomLaw {
    #[arg(long, value_enum)]
    pub law: Option<LawChoice>,
    /// Measured function; for wintner and logmean it defaults to the
    /// convolution the law describes.
    #[arg(long = "fn", value_name = "SPEC", value_parser = parse_spec)]
    pub function: Option<FunctionSpec>,
    /// The g of the wintner or logmean law.
    #[arg(long, value_name = "SPEC", value_parser = parse_spec)]
    pub g: Option<FunctionSpec>,
    /// Wintner exponent s.
    #[arg(long)]
    pub s: Option<u32>,
    /// Log-mean constant A.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Little-o exponent.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["zeta", "gamma"]))]
pub struct ConstantsArgs {
    /// Evaluate zeta at this real s > 1.
    #[arg(long)]
    pub zeta: Option<f64>,
    /// Euler's constant.
    #[arg(long)]
    pub gamma: bool,
    /// Requested absolute accuracy.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn parse_spec(s: &str) -> Result<FunctionSpec, String> {
    s.parse().map_err(|e: dirichlet_lab::Error| e.to_string())
}

/// Positive integer, with `_` separators or `1e6` shorthand.
pub fn parse_count(s: &str) -> Result<usize, String> {
    let clean = s.trim().replace('_', "");
    if let Ok(n) = clean.parse::<usize>() {
        return Ok(n);
    }
    let (mantissa, exp) = clean
        .split_once(['e', 'E'])
        .ok_or_else(|| format!("{s:?} is not a count"))?;
    let mantissa: usize = mantissa.parse().map_err(|_| format!("{s:?} is not a count"))?;
    let exp: u32 = exp.parse().map_err(|_| format!("{s:?} is not a count"))?;
    10usize
        .checked_pow(exp)
        .and_then(|p| p.checked_mul(mantissa))
        .ok_or_else(|| format!("{s:?} is too large"))
}
