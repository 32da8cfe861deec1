//! Report schema shared by the verification suites and the CLI.
//!
//! Checks are either theorem-backed (their failure is a build failure) or
//! claims under test (their failure is reported but does not gate). Checks
//! are sorted by name so reports are byte-for-byte reproducible.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::complexes::dr::IdentityCheck;

#[derive(Serialize, Clone, Debug)]
pub struct CounterexampleOut {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Theorem,
    Claim,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleOut>,
}

impl Check {
    pub fn theorem(name: impl Into<String>, ok: bool, cex: Option<CounterexampleOut>) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Theorem,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            counterexample: if ok { None } else { cex },
        }
    }

    pub fn claim(name: impl Into<String>, ok: bool, cex: Option<CounterexampleOut>) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Claim,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            counterexample: if ok { None } else { cex },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Convert a deformation-retraction identity check, prefixing the name.
    pub fn from_identity(prefix: &str, ic: &IdentityCheck) -> Self {
        Check::theorem(
            format!("{prefix}_{}", ic.name),
            ic.ok,
            ic.counterexample.as_ref().map(|c| CounterexampleOut {
                input: c.input.clone(),
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
            }),
        )
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub claims_failed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: BTreeMap<String, String>, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let claims_failed = checks
            .iter()
            .any(|c| c.kind == CheckKind::Claim && !c.passed());
        Report {
            suite: suite.into(),
            params,
            checks,
            claims_failed,
            elapsed_ms: None,
        }
    }

    /// True when every theorem-backed check passed.
    pub fn theorems_pass(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Theorem)
            .all(|c| c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite: {}\n", self.suite));
        for (k, v) in &self.params {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for c in &self.checks {
            let kind = match c.kind {
                CheckKind::Theorem => "theorem",
                CheckKind::Claim => "claim",
            };
            let status = if c.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("  [{status}] ({kind}) {}\n", c.name));
            if let Some(cex) = &c.counterexample {
                out.push_str(&format!("      input: {}\n", cex.input));
                out.push_str(&format!("      lhs:   {}\n", cex.lhs));
                out.push_str(&format!("      rhs:   {}\n", cex.rhs));
            }
        }
        if self.claims_failed {
            out.push_str("  claims_failed: true\n");
        }
        out
    }
}

/// Compare two displayable values into a theorem check.
pub fn eq_check<T: PartialEq, F: Fn(&T) -> String>(
    name: impl Into<String>,
    input: &str,
    lhs: &T,
    rhs: &T,
    show: F,
) -> Check {
    Check::theorem(
        name,
        lhs == rhs,
        Some(CounterexampleOut {
            input: input.to_string(),
            lhs: show(lhs),
            rhs: show(rhs),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_sorts_and_flags_claims() {
        let checks = vec![
            Check::theorem("b_check", true, None),
            Check::claim("a_check", false, None),
        ];
        let r = Report::new("demo", BTreeMap::new(), checks);
        assert_eq!(r.checks[0].name, "a_check");
        assert!(r.claims_failed);
        assert!(r.theorems_pass());
        let json = r.to_json();
        assert!(json.contains("\"kind\": \"claim\""));
        assert!(json.contains("\"status\": \"fail\""));
    }
}
