use std::collections::BTreeMap;
use std::path::Path;

use qdet_core::report::{CheckReport, CheckStatus};
use serde::Serialize;

use crate::config::ConfigSummary;
use crate::CliError;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: String,
    pub witness: String,
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn new(name: &str, params: BTreeMap<String, String>) -> Self {
        Self {
            name: name.to_string(),
            params,
            checks: Vec::new(),
        }
    }

    pub fn absorb(&mut self, report: CheckReport, ms: u64) {
        self.absorb_prefixed("", report, ms);
    }

    pub fn absorb_prefixed(&mut self, prefix: &str, report: CheckReport, ms: u64) {
        for c in report.checks {
            self.checks.push(CheckRecord {
                name: format!("{prefix}{}", c.name),
                status: c.status.to_string(),
                witness: c.witness,
                ms,
            });
        }
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        let s = status.to_string();
        self.checks.iter().filter(|c| c.status == s).count()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[SuiteReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.pass += r.count(CheckStatus::Pass);
            s.fail += r.count(CheckStatus::Fail);
            s.skipped += r.count(CheckStatus::Skipped);
        }
        s
    }

    pub fn line(&self) -> String {
        format!("pass {} / fail {}", self.pass, self.fail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument<'a> {
    pub version: u32,
    pub config: &'a ConfigSummary,
    pub suites: &'a [SuiteReport],
    pub summary: Summary,
}

pub fn render_report(config: &ConfigSummary, reports: &[SuiteReport]) -> Result<String, CliError> {
    let doc = ReportDocument {
        version: REPORT_VERSION,
        config,
        suites: reports,
        summary: Summary::of(reports),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

/// Writes the JSON report and returns the human readable summary.
pub fn emit_report(config: &ConfigSummary, reports: &[SuiteReport], path: &Path) -> Result<String, CliError> {
    std::fs::write(path, render_report(config, reports)?)?;
    Ok(human_summary(reports))
}

/// Process exit status: 1 when some check failed, 0 otherwise.
pub fn exit_status(reports: &[SuiteReport]) -> u8 {
    u8::from(Summary::of(reports).fail > 0)
}

pub fn human_summary(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "{} [{}]: pass {} / fail {}\n",
            r.name,
            params.join(" "),
            r.count(CheckStatus::Pass),
            r.count(CheckStatus::Fail)
        ));
        for c in r.checks.iter().filter(|c| c.status == "fail") {
            out.push_str(&format!("  FAIL {}: {}\n", c.name, c.witness));
        }
    }
    out.push_str(&Summary::of(reports).line());
    out.push('\n');
    out
}
