//! Stable machine-readable run reports. Schema version bumps on any
//! breaking change; human-readable rendering is derived from the
//! structured form.

use serde::Serialize;

use crate::checkers::CheckReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub indices: Vec<usize>,
    pub defect: Vec<String>,
    pub equation: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub identity: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
}

impl CheckEntry {
    pub fn from_report(r: &CheckReport) -> CheckEntry {
        CheckEntry {
            identity: r.identity.clone(),
            pass: r.pass,
            witness: r.witness.as_ref().map(|w| WitnessEntry {
                indices: w.indices.clone(),
                defect: w.defect.iter().map(|d| d.to_string()).collect(),
                equation: w.equation.clone(),
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckEntry>,
    /// command-specific payload (constructed file, basis listing, …)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: String) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            checks: Vec::new(),
            data: None,
            elapsed_ms: 0,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{}: {}\n",
                c.identity,
                if c.pass { "pass" } else { "FAIL" }
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!(
                    "  witness indices {:?}, defect [{}], equation {}\n",
                    w.indices,
                    w.defect.join(", "),
                    w.equation
                ));
            }
        }
        out
    }
}
