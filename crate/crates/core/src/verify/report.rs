use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::scalar::ScalarKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<ScalarKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<u64>,
}

/// Result of one check. A failing report carries enough in `witness` to
/// replay the failure; `details` holds check-specific facts on success.
/// Composite runs nest their parts in `reports`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: ReportParams,
    pub outcome: Outcome,
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub details: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub reports: Vec<VerificationReport>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// Copy with every `elapsed_ms` zeroed, for comparing runs.
    pub fn without_timing(&self) -> VerificationReport {
        VerificationReport {
            elapsed_ms: 0,
            reports: self.reports.iter().map(Self::without_timing).collect(),
            ..self.clone()
        }
    }

    pub fn to_json_pretty(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}
