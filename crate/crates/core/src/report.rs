//! Check results and verification reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{format_coeff, ModuleVector, VacuumModule};

pub const SCHEMA_VERSION: &str = "sugawara-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The input vector (or scalar argument) on which the check failed.
    pub input: String,
    /// First monomial where the two sides differ.
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(id: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, witness: Option<Witness>) -> Self {
        Check {
            id: id.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            pass: witness.is_none(),
            witness,
        }
    }

    /// A check whose computation raised an error.
    pub fn errored(id: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, e: &Error) -> Self {
        Check::new(
            id,
            lhs,
            rhs,
            Some(Witness {
                input: "-".into(),
                monomial: "-".into(),
                lhs: format!("error: {e}"),
                rhs: "-".into(),
            }),
        )
    }
}

/// Witness for the first monomial where `lhs` and `rhs` differ.
pub fn vector_witness(module: &VacuumModule, input: &str, lhs: &ModuleVector, rhs: &ModuleVector) -> Option<Witness> {
    let (m, a, b) = lhs.first_difference(rhs)?;
    Some(Witness {
        input: input.to_string(),
        monomial: module.format_monomial(&m),
        lhs: format_coeff(&a),
        rhs: format_coeff(&b),
    })
}

/// Collects the first failure over a family of inputs.
#[derive(Default)]
pub struct FirstFailure(pub Option<Witness>);

impl FirstFailure {
    pub fn record(&mut self, w: Option<Witness>) {
        if self.0.is_none() {
            self.0 = w;
        }
    }

    pub fn failed(&self) -> bool {
        self.0.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub algebra: String,
    pub level_structure: i64,
    pub degree: i64,
    pub mode_range: i64,
    /// Parameter assignments as canonical text, `k, c, lambda, mu`.
    pub params: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub suite: String,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    pub aggregate_pass: bool,
    pub wall_time_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl VerificationReport {
    pub fn new(suite: &str, config: ConfigEcho, checks: Vec<Check>, wall_time_ms: u64) -> Self {
        let aggregate_pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            schema_version: SCHEMA_VERSION.into(),
            suite: suite.into(),
            config,
            checks,
            aggregate_pass,
            wall_time_ms,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn emit_report(r: &VerificationReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        ReportFormat::Text => {
            let mut s = String::new();
            let c = &r.config;
            let _ = writeln!(
                s,
                "suite {} | {} n={} D={} N={} | {}",
                r.suite,
                c.algebra,
                c.level_structure,
                c.degree,
                c.mode_range,
                c.params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            for ch in &r.checks {
                let _ = writeln!(s, "{} {}", if ch.pass { "PASS" } else { "FAIL" }, ch.id);
                if let Some(w) = &ch.witness {
                    let _ = writeln!(s, "    check: {} == {}", ch.lhs, ch.rhs);
                    let _ = writeln!(s, "    input: {}", w.input);
                    let _ = writeln!(s, "    at {}: lhs {} rhs {}", w.monomial, w.lhs, w.rhs);
                }
            }
            let passed = r.checks.iter().filter(|c| c.pass).count();
            let _ = writeln!(
                s,
                "{} ({}/{} checks passed, {} ms)",
                if r.aggregate_pass { "ALL PASS" } else { "FAILED" },
                passed,
                r.checks.len(),
                r.wall_time_ms
            );
            s.into_bytes()
        }
    }
}
