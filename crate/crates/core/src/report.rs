//! JSON and CSV encodings of verification reports.
//!
//! Reals are written with 17 significant digits in both encodings so a JSON
//! report and the CSV of the same run carry identical decimal strings, and
//! parsing a report back reproduces every `f64` bit for bit.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verify::{AsymptoticLaw, LawKind, VerificationReport};

/// `v` with 17 significant digits in scientific notation.
pub fn format_sig17(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) mod sig17 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::value::RawValue;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if !v.is_finite() {
            return Err(serde::ser::Error::custom(format!("cannot encode non-finite value {v}")));
        }
        let raw = RawValue::from_string(super::format_sig17(*v)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        f64::deserialize(d)
    }
}

pub(crate) mod sig17_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::sig17::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<f64>::deserialize(d)
    }
}

/// Flat wire form of [`AsymptoticLaw`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawRecord {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "sig17_opt")]
    alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "sig17_opt")]
    coefficient: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "sig17_opt")]
    intercept: Option<f64>,
    description: String,
    paper_anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "sig17_opt")]
    series_tail: Option<f64>,
}

impl From<AsymptoticLaw> for LawRecord {
    fn from(law: AsymptoticLaw) -> Self {
        let (kind, alpha, coefficient, intercept) = match law.kind {
            LawKind::PowerLaw { exponent, coefficient } => ("power_law", Some(exponent), Some(coefficient), None),
            LawKind::LogLaw {
                coefficient,
                intercept_estimate,
            } => ("log_law", None, Some(coefficient), intercept_estimate),
            LawKind::LittleO { exponent } => ("little_o", Some(exponent), None, None),
        };
        LawRecord {
            kind: kind.into(),
            alpha,
            coefficient,
            intercept,
            description: law.description,
            paper_anchor: law.anchor,
            series_tail: law.series_tail,
        }
    }
}

impl TryFrom<LawRecord> for AsymptoticLaw {
    type Error = String;

    fn try_from(r: LawRecord) -> std::result::Result<Self, String> {
        let missing = |field: &str| format!("{} law is missing `{field}`", r.kind);
        let kind = match r.kind.as_str() {
            "power_law" => LawKind::PowerLaw {
                exponent: r.alpha.ok_or_else(|| missing("alpha"))?,
                coefficient: r.coefficient.ok_or_else(|| missing("coefficient"))?,
            },
            "log_law" => LawKind::LogLaw {
                coefficient: r.coefficient.ok_or_else(|| missing("coefficient"))?,
                intercept_estimate: r.intercept,
            },
            "little_o" => LawKind::LittleO {
                exponent: r.alpha.ok_or_else(|| missing("alpha"))?,
            },
            other => return Err(format!("unknown law kind {other:?}")),
        };
        Ok(AsymptoticLaw {
            kind,
            description: r.description,
            anchor: r.paper_anchor,
            series_tail: r.series_tail,
        })
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Numeric(format!("JSON encoding: {e}"))
}

impl VerificationReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(json_error)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad report JSON: {e}")))
    }

    /// One row per checkpoint under the header `x,measured,predicted,deviation`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,measured,predicted,deviation\r\n");
        for c in &self.checkpoints {
            let _ = write!(
                out,
                "{},{},{},{}\r\n",
                c.x,
                format_sig17(c.measured),
                format_sig17(c.predicted),
                format_sig17(c.deviation)
            );
        }
        out
    }
}

/// JSON array of several reports.
pub fn reports_to_json(reports: &[VerificationReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(json_error)
}

pub fn reports_from_json(text: &str) -> Result<Vec<VerificationReport>> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad report JSON: {e}")))
}
