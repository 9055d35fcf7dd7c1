//! Rendering of verification reports and the optimal-penalty table.

use std::fmt::Write as _;

use penalty_core::oracles::{CheckStatus, VerifyReport};
use penalty_core::Sig;
use serde::Serialize;

use crate::output::OptimalRow;

#[derive(Serialize)]
struct CheckDoc<'a> {
    check: &'a str,
    expected: f64,
    actual: f64,
    tol: f64,
    status: &'static str,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    passed: bool,
    violations: Vec<String>,
    checks: Vec<CheckDoc<'a>>,
}

fn status_key(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::KnownDiscrepancy => "known_discrepancy",
    }
}

/// Machine-readable form. Non-finite numbers become `null`.
pub fn report_json(report: &VerifyReport) -> String {
    let doc = ReportDoc {
        passed: report.passed(),
        violations: report.violations.iter().map(|v| v.to_string()).collect(),
        checks: report
            .records
            .iter()
            .map(|r| CheckDoc {
                check: &r.name,
                expected: r.expected,
                actual: r.actual,
                tol: r.tolerance,
                status: status_key(r.status),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

/// Human-readable table, one row per check, followed by a summary line.
pub fn report_table(report: &VerifyReport) -> String {
    let mut out = String::new();
    for v in &report.violations {
        let _ = writeln!(out, "invalid parameters: {v}");
    }
    if !report.records.is_empty() {
        let width = report.records.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(
            out,
            "{:<width$}  {:>16}  {:>16}  {:>16}  {:>16}  status",
            "check", "expected", "actual", "delta", "tol"
        );
        for r in &report.records {
            let _ = writeln!(
                out,
                "{:<width$}  {:>16}  {:>16}  {:>16}  {:>16}  {}",
                r.name,
                Sig(r.expected).to_string(),
                Sig(r.actual).to_string(),
                Sig(r.delta()).to_string(),
                Sig(r.tolerance).to_string(),
                r.status.label()
            );
        }
    }
    let count = |s| report.records.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "{}: {} passed, {} known discrepancies, {} failed",
        if report.passed() { "PASS" } else { "FAIL" },
        count(CheckStatus::Pass),
        count(CheckStatus::KnownDiscrepancy),
        count(CheckStatus::Fail) + report.violations.len()
    );
    out
}

pub fn optimal_table(rows: &[OptimalRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<9} {:<36} {:>16}", "regime", "approach", "value");
    for r in rows {
        let value = r.value.map_or_else(|| "n/a".to_string(), |v| Sig(v).to_string());
        let _ = writeln!(out, "{:<9} {:<36} {:>16}", r.regime, r.approach, value);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use penalty_core::oracles::{verify_report, VerifyOptions};
    use penalty_core::ModelParams;

    #[test]
    fn json_has_required_fields() {
        let report = verify_report(&ModelParams::new(1.0, 2.0, 0.3, 0.5, 1.0), &VerifyOptions::default());
        let doc: serde_json::Value = serde_json::from_str(&report_json(&report)).unwrap();
        assert_eq!(doc["passed"], true);
        let first = &doc["checks"][0];
        for key in ["check", "expected", "actual", "tol", "status"] {
            assert!(first.get(key).is_some(), "{key}");
        }
        let flagged = doc["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "known_discrepancy").count();
        assert!(flagged >= 3);
    }

    #[test]
    fn table_lists_violations() {
        let report = verify_report(&ModelParams::new(1.0, 1.0, 0.6, 0.5, 1.0), &VerifyOptions::default());
        let table = report_table(&report);
        assert!(table.contains("A2 violated: (1+k)M = 1.2 ≥ 1"));
        assert!(table.starts_with("invalid parameters"));
        assert!(table.trim_end().ends_with("1 failed"));
    }
}
