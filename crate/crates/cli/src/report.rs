//! The machine-readable report document every command emits.
//!
//! Reports are deterministic: field order is fixed, all maps are ordered,
//! and nothing time- or machine-dependent is recorded. Two runs over the
//! same inputs produce byte-identical output.

use serde::{Deserialize, Serialize};

use coarse_core::{BoundCertificate, CheckReport, DefeatReport, Envelope, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument {
    /// The subcommand that produced this report.
    pub command: String,
    /// SHA-256 of the spec file bytes, hex encoded.
    pub spec_hash: String,
    /// Evaluation budget the run was limited to.
    pub budget_limit: u64,
    /// Aggregate verdict; the process exit code is 0 iff this is pass.
    pub verdict: Verdict,
    pub items: Vec<ReportItem>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ReportItem {
    Check {
        label: String,
        report: CheckReport,
    },
    Certificate {
        label: String,
        certificate: BoundCertificate,
    },
    Envelope {
        label: String,
        envelope: Envelope,
    },
    Defeat {
        report: DefeatReport,
    },
}

impl ReportDocument {
    pub fn new(
        command: &str,
        spec_hash: String,
        budget_limit: u64,
        items: Vec<ReportItem>,
    ) -> Self {
        let pass = items.iter().all(|item| match item {
            ReportItem::Check { report, .. } => report.is_pass(),
            ReportItem::Defeat { report } => report.all_verified,
            ReportItem::Certificate { .. } | ReportItem::Envelope { .. } => true,
        });
        ReportDocument {
            command: command.to_string(),
            spec_hash,
            budget_limit,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            items,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }
}
