//! Renderers for every subcommand. CSV uses CRLF line ends and 17
//! significant digits; JSON numbers round-trip exactly.

use std::io::Write;

use dirichlet_lab::constants::ConstantValue;
use dirichlet_lab::funcs::{ArithmeticTable, Table};
use dirichlet_lab::report::{format_sig17, reports_to_json};
use dirichlet_lab::verify::{LawKind, VerificationReport};
use serde_json::{json, Value};

use crate::args::Format;
use crate::commands::Run;
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn cell(table: &Table, n: usize) -> (String, Value) {
    match table {
        Table::Int(t) => {
            let v = t.get(n);
            (v.to_string(), json!(v))
        }
        Table::Real(t) => {
            let v = t.get(n);
            (format_sig17(v), json!(v))
        }
    }
}

fn write_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

pub fn table(out: &mut dyn Write, name: &str, table: &Table, format: Format) -> Result<()> {
    let limit = table.limit();
    match format {
        Format::Text => {
            for n in 1..=limit {
                match table {
                    Table::Int(t) => writeln!(out, "{n} {}", t.get(n))?,
                    Table::Real(t) => writeln!(out, "{n} {}", t.get(n))?,
                }
            }
        }
        Format::Csv => {
            write!(out, "n,value\r\n")?;
            for n in 1..=limit {
                write!(out, "{n},{}\r\n", cell(table, n).0)?;
            }
        }
        Format::Json => {
            let values: Vec<Value> = (1..=limit).map(|n| cell(table, n).1).collect();
            write_json(out, &json!({ "function": name, "limit": limit, "values": values }))?;
        }
    }
    Ok(())
}

pub fn scalar(out: &mut dyn Write, name: &str, n: usize, table: &Table, format: Format) -> Result<()> {
    let (text, value) = cell(table, n);
    match format {
        Format::Text => writeln!(out, "{name}({n}) = {value}")?,
        Format::Csv => write!(out, "n,value\r\n{n},{text}\r\n")?,
        Format::Json => write_json(out, &json!({ "function": name, "n": n, "value": value }))?,
    }
    Ok(())
}

pub fn sum_value(out: &mut dyn Write, name: &str, x: usize, value: f64, format: Format) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "sum_{{n <= {x}}} {name}(n) = {value}")?,
        Format::Csv => write!(out, "x,value\r\n{x},{}\r\n", format_sig17(value))?,
        Format::Json => write_json(out, &json!({ "function": name, "x": x, "value": value }))?,
    }
    Ok(())
}

pub fn series(out: &mut dyn Write, name: &str, points: &[(usize, f64)], format: Format) -> Result<()> {
    match format {
        Format::Text => {
            for (x, v) in points {
                writeln!(out, "{x:>12} {v}")?;
            }
        }
        Format::Csv => {
            write!(out, "x,value\r\n")?;
            for (x, v) in points {
                write!(out, "{x},{}\r\n", format_sig17(*v))?;
            }
        }
        Format::Json => {
            let pts: Vec<Value> = points.iter().map(|(x, v)| json!({ "x": x, "value": v })).collect();
            write_json(out, &json!({ "function": name, "points": pts }))?;
        }
    }
    Ok(())
}

pub fn constant(out: &mut dyn Write, name: &str, c: &ConstantValue, format: Format) -> Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "{name} = {}", c.value)?;
            writeln!(out, "error bound: {}", c.error_bound)?;
        }
        Format::Csv => write!(
            out,
            "name,value,error_bound\r\n{name},{},{}\r\n",
            format_sig17(c.value),
            format_sig17(c.error_bound)
        )?,
        Format::Json => {
            let mut v = serde_json::to_value(c).map_err(std::io::Error::from)?;
            v["name"] = json!(name);
            write_json(out, &v)?;
        }
    }
    Ok(())
}

fn law_line(report: &VerificationReport) -> String {
    match report.law.kind {
        LawKind::PowerLaw { exponent, coefficient } => format!("{} ~ {coefficient} x^{exponent}", report.source),
        LawKind::LogLaw { coefficient, .. } => format!("{} ~ {coefficient} ln x", report.source),
        LawKind::LittleO { exponent } => format!("{} = o(x^{exponent})", report.source),
    }
}

fn text_report(out: &mut dyn Write, report: &VerificationReport) -> Result<()> {
    writeln!(out, "  {}", report.law.description)?;
    writeln!(out, "  {}: {}", law_line(report), report.verdict)?;
    writeln!(
        out,
        "  {:>10} {:>24} {:>24} {:>12}",
        "x", "measured", "predicted", "deviation"
    )?;
    for c in &report.checkpoints {
        writeln!(
            out,
            "  {:>10} {:>24.16e} {:>24.16e} {:>12.3e}",
            c.x, c.measured, c.predicted, c.deviation
        )?;
    }
    if let LawKind::LogLaw {
        intercept_estimate: Some(b),
        ..
    } = report.law.kind
    {
        writeln!(out, "  estimated intercept: {b}")?;
    }
    if let Some(a) = report.estimated_coefficient {
        writeln!(out, "  estimated coefficient: {a}")?;
    }
    Ok(())
}

/// A single report prints as one object or table; several reports print as
/// a JSON array, or as CSV tables separated by a blank line.
pub fn reports(out: &mut dyn Write, runs: &[Run], format: Format) -> Result<()> {
    let all: Vec<&VerificationReport> = runs.iter().flat_map(|r| &r.reports).collect();
    match format {
        Format::Text => {
            for run in runs {
                let verdict = dirichlet_lab::verify::Verdict::combine(run.reports.iter().map(|r| r.verdict));
                writeln!(out, "{}: {verdict}", run.name)?;
                for report in &run.reports {
                    text_report(out, report)?;
                }
            }
        }
        Format::Json => {
            let text = match all.as_slice() {
                [one] => one.to_json()?,
                many => reports_to_json(&many.iter().map(|r| (*r).clone()).collect::<Vec<_>>())?,
            };
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            for (i, report) in all.iter().enumerate() {
                if i > 0 {
                    write!(out, "\r\n")?;
                }
                write!(out, "{}", report.to_csv())?;
            }
        }
    }
    Ok(())
}
