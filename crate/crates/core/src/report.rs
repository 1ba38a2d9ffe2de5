//! Serializable run reports.
//!
//! One report row per analyzed group. Reports must be byte-identical across
//! runs with the same seed, so every floating-point value is rendered
//! through one fixed 12-significant-digit scientific format and orders are
//! carried as exact decimal strings.

use serde::Serialize;

use crate::arith::BigCount;
use crate::theorem::{Diagnostic, PipelineOutcome};

/// Fixed rendering for every real-valued report field.
pub fn format_real(x: f64) -> String {
    format!("{x:.11e}")
}

/// One recorded inequality, with its sides pre-rendered.
#[derive(Clone, Debug, Serialize)]
pub struct DiagnosticRecord {
    pub inequality_id: String,
    pub lhs_log2: String,
    pub rhs_log2: String,
    pub holds: bool,
}

impl DiagnosticRecord {
    fn from_diagnostic(d: &Diagnostic) -> Self {
        DiagnosticRecord {
            inequality_id: d.inequality_id.to_string(),
            lhs_log2: format_real(d.lhs_log2),
            rhs_log2: format_real(d.rhs_log2),
            holds: d.holds,
        }
    }
}

/// Per-group report row. Serialization order follows the declaration
/// order of the fields below.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub order: String,
    pub radical_order: String,
    pub path: String,
    pub subgroup_order: String,
    pub class: u32,
    pub threshold_log2: String,
    pub size_log2: String,
    pub margin_log2: String,
    pub diagnostics: Vec<DiagnosticRecord>,
    pub seed: u64,
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl BoundReport {
    pub fn from_outcome(name: &str, outcome: &PipelineOutcome, seed: u64) -> Self {
        BoundReport {
            name: name.to_string(),
            order: outcome.order.to_string(),
            radical_order: outcome.radical_order.to_string(),
            path: outcome.path.as_str().to_string(),
            subgroup_order: outcome.certificate.size.to_string(),
            class: outcome.certificate.class,
            threshold_log2: format_real(outcome.threshold_log2),
            size_log2: format_real(outcome.size_log2),
            margin_log2: format_real(outcome.margin_log2),
            diagnostics: outcome
                .diagnostics
                .iter()
                .map(DiagnosticRecord::from_diagnostic)
                .collect(),
            seed,
        }
    }

    /// True when the witness cleared the bound (the strict final check).
    pub fn clears_bound(&self) -> bool {
        self.diagnostics
            .iter()
            .filter(|d| d.inequality_id == "final_vs_threshold")
            .all(|d| d.holds)
    }

    /// True when every recorded inequality held.
    pub fn all_hold(&self) -> bool {
        self.diagnostics.iter().all(|d| d.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report rows always serialize")
    }

    pub fn csv_header() -> &'static str {
        "name,order,radical_order,path,subgroup_order,class,threshold_log2,size_log2,margin_log2,diagnostics,seed"
    }

    /// Flat row matching [`BoundReport::csv_header`]. The diagnostics cell
    /// packs `id=lhs|rhs|holds` entries joined by semicolons.
    pub fn to_csv_row(&self) -> String {
        let diagnostics = self
            .diagnostics
            .iter()
            .map(|d| {
                format!(
                    "{}={}|{}|{}",
                    d.inequality_id, d.lhs_log2, d.rhs_log2, d.holds
                )
            })
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            csv_field(&self.name),
            self.order,
            self.radical_order,
            self.path,
            self.subgroup_order,
            self.class,
            self.threshold_log2,
            self.size_log2,
            self.margin_log2,
            diagnostics,
            self.seed
        )
    }
}

/// Standard wording for groups whose order sits below the smallest order
/// the bound covers; such inputs are reported, not failed.
pub fn out_of_range_notice(name: &str, order: &BigCount) -> String {
    format!("notice: {name} has order {order}, below the smallest order the bound covers; skipped")
}
