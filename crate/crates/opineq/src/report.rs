//! Check results and report documents, with JSON and CSV emission.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{OpIneqError, Result};
use crate::hermitian::TolerancePolicy;

/// One side of an inequality: a real number for norm/trace checks, or the
/// `"operator"` tag for Loewner comparisons in dimension > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Side {
    Scalar(f64),
    Operator,
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Side::Scalar(x) => s.serialize_f64(*x),
            Side::Operator => s.serialize_str("operator"),
        }
    }
}

impl<'de> Deserialize<'de> for Side {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct SideVisitor;
        impl Visitor<'_> for SideVisitor {
            type Value = Side;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a number or the string \"operator\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Side, E> {
                Ok(Side::Scalar(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Side, E> {
                Ok(Side::Scalar(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Side, E> {
                Ok(Side::Scalar(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Side, E> {
                if v == "operator" {
                    Ok(Side::Operator)
                } else {
                    Err(E::custom(format!("unexpected side tag `{v}`")))
                }
            }
        }
        d.deserialize_any(SideVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of one inequality verification.
///
/// For norm-valued checks `margin = rhs - lhs` and `ratio = lhs/rhs`; for
/// Loewner checks `margin` is the smallest eigenvalue of the difference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: Side,
    pub rhs: Side,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub status: Status,
    pub notes: String,
}

impl CheckResult {
    /// Builds a Pass/Fail result from a margin and the scale it is measured
    /// against.
    pub fn from_margin(
        check_id: &str,
        params: BTreeMap<String, String>,
        lhs: Side,
        rhs: Side,
        margin: f64,
        ratio: Option<f64>,
        scale: f64,
        tol: &TolerancePolicy,
    ) -> CheckResult {
        let holds = margin >= -tol.slack(scale);
        CheckResult {
            check_id: check_id.to_string(),
            params,
            lhs,
            rhs,
            margin: Some(margin),
            ratio,
            holds: Some(holds),
            status: if holds { Status::Pass } else { Status::Fail },
            notes: String::new(),
        }
    }

    /// Result for an instance outside a theorem's domain. `witness` records
    /// the offending scalar value.
    pub fn not_applicable(
        check_id: &str,
        params: BTreeMap<String, String>,
        witness: &str,
    ) -> CheckResult {
        CheckResult {
            check_id: check_id.to_string(),
            params,
            lhs: Side::Operator,
            rhs: Side::Operator,
            margin: None,
            ratio: None,
            holds: None,
            status: Status::NotApplicable,
            notes: format!("domain violation: {witness}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryCounts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

/// A full verification report: plan echo plus per-check tallies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub timestamp: String,
    pub plan: serde_json::Value,
    pub results: Vec<CheckResult>,
    pub summary: BTreeMap<String, SummaryCounts>,
}

impl ReportDocument {
    pub fn new(plan: serde_json::Value, results: Vec<CheckResult>) -> ReportDocument {
        let mut summary: BTreeMap<String, SummaryCounts> = BTreeMap::new();
        for r in &results {
            let counts = summary.entry(r.check_id.clone()).or_default();
            match r.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::NotApplicable => counts.not_applicable += 1,
            }
        }
        ReportDocument {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            plan,
            results,
            summary,
        }
    }

    pub fn total_failures(&self) -> usize {
        self.summary.values().map(|c| c.fail).sum()
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// CSV with one row per result; params are flattened to dotted columns
    /// (`params.v`, `params.p`, ...) in sorted order for a stable layout.
    pub fn to_csv(&self) -> Result<String> {
        let mut param_keys: BTreeSet<String> = BTreeSet::new();
        for r in &self.results {
            param_keys.extend(r.params.keys().cloned());
        }
        let mut wtr = csv::Writer::from_writer(vec![]);
        let mut header = vec![
            "check_id".to_string(),
            "status".to_string(),
            "holds".to_string(),
            "lhs".to_string(),
            "rhs".to_string(),
            "margin".to_string(),
            "ratio".to_string(),
            "notes".to_string(),
        ];
        header.extend(param_keys.iter().map(|k| format!("params.{k}")));
        wtr.write_record(&header)
            .map_err(|e| OpIneqError::IoFailure(e.to_string()))?;
        let fmt_side = |s: &Side| match s {
            Side::Scalar(x) => format!("{x}"),
            Side::Operator => "operator".to_string(),
        };
        for r in &self.results {
            let mut row = vec![
                r.check_id.clone(),
                format!("{:?}", r.status),
                r.holds.map(|h| h.to_string()).unwrap_or_default(),
                fmt_side(&r.lhs),
                fmt_side(&r.rhs),
                r.margin.map(|x| format!("{x}")).unwrap_or_default(),
                r.ratio.map(|x| format!("{x}")).unwrap_or_default(),
                r.notes.clone(),
            ];
            for k in &param_keys {
                row.push(r.params.get(k).cloned().unwrap_or_default());
            }
            wtr.write_record(&row)
                .map_err(|e| OpIneqError::IoFailure(e.to_string()))?;
        }
        let bytes = wtr
            .into_inner()
            .map_err(|e| OpIneqError::IoFailure(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| OpIneqError::IoFailure(e.to_string()))
    }

    pub fn emit(&self, format: ReportFormat, path: &Path) -> Result<()> {
        let body = match format {
            ReportFormat::Json => self.to_json_pretty(),
            ReportFormat::Csv => self.to_csv()?,
        };
        let mut file =
            std::fs::File::create(path).map_err(|e| OpIneqError::IoFailure(e.to_string()))?;
        file.write_all(body.as_bytes())
            .map_err(|e| OpIneqError::IoFailure(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}
