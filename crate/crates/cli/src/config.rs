use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Pbw,
    Laplace,
    Centrality,
    Minors,
    Mfamily,
    Torus,
    OreTower,
    GammaNormal,
    FactorBasis,
    Ctau,
    Theta,
    Counts,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Pbw,
        Suite::Laplace,
        Suite::Centrality,
        Suite::Minors,
        Suite::Mfamily,
        Suite::Torus,
        Suite::OreTower,
        Suite::GammaNormal,
        Suite::FactorBasis,
        Suite::Ctau,
        Suite::Theta,
        Suite::Counts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pbw => "pbw",
            Suite::Laplace => "laplace",
            Suite::Centrality => "centrality",
            Suite::Minors => "minors",
            Suite::Mfamily => "mfamily",
            Suite::Torus => "torus",
            Suite::OreTower => "ore-tower",
            Suite::GammaNormal => "gamma-normal",
            Suite::FactorBasis => "factor-basis",
            Suite::Ctau => "ctau",
            Suite::Theta => "theta",
            Suite::Counts => "counts",
        }
    }

    /// Suites that run once per `γ`.
    pub fn per_gamma(self) -> bool {
        !matches!(self, Suite::Pbw | Suite::Laplace | Suite::Centrality | Suite::Minors)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a comma separated suite list; `all` expands to every suite.
/// The result is sorted and free of duplicates.
pub fn parse_suites(text: &str) -> Result<Vec<Suite>, CliError> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Suite::ALL);
            continue;
        }
        let s = Suite::ALL
            .into_iter()
            .find(|s| s.name() == part)
            .ok_or_else(|| CliError::Config(format!("unknown suite '{part}'")))?;
        out.push(s);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QMode {
    Exact,
    Specialize(Vec<BigRational>),
}

impl FromStr for QMode {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "exact" => Ok(QMode::Exact),
            "specialize" => Ok(QMode::Specialize(Vec::new())),
            _ => Err(CliError::Config(format!("unknown q-mode '{s}'"))),
        }
    }
}

/// Parses `"7/3,5/2"`.
pub fn parse_q_values(text: &str) -> Result<Vec<BigRational>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<BigRational>()
                .map_err(|_| CliError::Config(format!("bad q value '{p}'")))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct WorkbenchConfig {
    pub m: usize,
    pub n: usize,
    pub gamma: Option<String>,
    pub max_degree: usize,
    pub q_mode: QMode,
    pub suites: Vec<Suite>,
    pub report_path: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
    /// Record wall times. Off by default so reports are reproducible.
    pub timings: bool,
    /// Number of random samples in the `pbw` suite.
    pub samples: usize,
}

impl WorkbenchConfig {
    pub fn new(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            gamma: None,
            max_degree: 4,
            q_mode: QMode::Exact,
            suites: Vec::new(),
            report_path: None,
            cache_dir: None,
            jobs: 1,
            timings: false,
            samples: 200,
        }
    }
}

/// The part of the configuration written into reports.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigSummary {
    pub m: usize,
    pub n: usize,
    pub gamma: Option<String>,
    pub max_degree: usize,
    pub q_mode: String,
    pub q_values: Vec<String>,
    pub suites: Vec<Suite>,
    pub samples: usize,
}

impl From<&WorkbenchConfig> for ConfigSummary {
    fn from(c: &WorkbenchConfig) -> Self {
        let (q_mode, q_values) = match &c.q_mode {
            QMode::Exact => ("exact".to_string(), Vec::new()),
            QMode::Specialize(v) => ("specialize".to_string(), v.iter().map(ToString::to_string).collect()),
        };
        Self {
            m: c.m,
            n: c.n,
            gamma: c.gamma.clone(),
            max_degree: c.max_degree,
            q_mode,
            q_values,
            suites: c.suites.clone(),
            samples: c.samples,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(parse_suites("all").unwrap().len(), 12);
        assert_eq!(parse_suites("ctau,pbw,ctau").unwrap(), vec![Suite::Pbw, Suite::Ctau]);
        assert!(parse_suites("").unwrap().is_empty());
        assert!(parse_suites("nope").is_err());
    }

    #[test]
    fn q_values() {
        let v = parse_q_values("7/3,5/2").unwrap();
        assert_eq!(v[0], BigRational::new(7.into(), 3.into()));
        assert!(parse_q_values("x").is_err());
    }
}
