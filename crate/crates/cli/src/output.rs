//! Report envelopes and CSV rows shared by `check` and `sweep`.

use equising_core::criteria::CriterionReport;
use equising_core::invariants::InvariantRecord;
use equising_core::rational::{approx, fmt_q, Q};
use serde::{Deserialize, Serialize};

pub const TOOL: &str = "equising";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
}

impl Default for Meta {
    fn default() -> Self {
        Meta {
            tool: TOOL.into(),
            version: VERSION.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub meta: Meta,
    pub report: CriterionReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariants: Vec<InvariantRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsEnvelope {
    pub meta: Meta,
    pub invariants: InvariantRecord,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub const RESULT_COLUMNS: [&str; 7] = [
    "lhs",
    "rhs",
    "margin",
    "margin_approx",
    "verdict",
    "strictness",
    "detail",
];

fn opt(value: &Option<Q>) -> String {
    value.as_ref().map(fmt_q).unwrap_or_default()
}

/// The result columns of a report; `margin_approx` is a lossy decimal.
pub fn result_cells(report: &CriterionReport) -> Vec<String> {
    let failed: Vec<&str> = report
        .hypotheses
        .iter()
        .filter(|h| !h.ok)
        .map(|h| h.reason.as_str())
        .collect();
    vec![
        opt(&report.lhs),
        opt(&report.rhs),
        opt(&report.margin),
        report
            .margin
            .as_ref()
            .map(|m| format!("{:.6}", approx(m)))
            .unwrap_or_default(),
        report.verdict.as_str().into(),
        report.strictness.to_string(),
        failed.join("; "),
    ]
}

/// Result columns for a grid point whose input was rejected.
pub fn error_cells(message: &str) -> Vec<String> {
    let mut cells = vec![String::new(); RESULT_COLUMNS.len()];
    cells[4] = "INVALID_INPUT".into();
    cells[6] = message.into();
    cells
}
