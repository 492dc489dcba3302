//! Verification driver: runs named suites of identity and oracle checks
//! against the `quatrep` numerics and assembles versioned reports.

pub mod config;
pub mod report;
mod suites;

pub use config::{ParityChoice, Suite, SuiteConfig, UsageError, GENERATOR};
pub use report::{emit_report, CheckRecord, Cx, OutputFormat, Param, Summary, VerificationReport, SCHEMA_VERSION};
pub use suites::Tol;

use std::time::Instant;

/// Runs the configured suite (every suite for [`Suite::All`]) and returns the
/// report with checks ordered by `check_id`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, UsageError> {
    cfg.validate()?;
    let start = Instant::now();
    let suites: Vec<Suite> = match cfg.suite {
        Suite::All => Suite::INDIVIDUAL.to_vec(),
        s => vec![s],
    };
    let mut checks = Vec::new();
    let mut non_convergence = false;
    for s in suites {
        let (c, nc) = suites::run_one(cfg, s);
        checks.extend(c);
        non_convergence |= nc;
    }
    checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    let summary = Summary {
        passed: checks.iter().filter(|c| c.pass).count(),
        failed: checks.iter().filter(|c| !c.pass).count(),
        skipped: 0,
    };
    let wall_ms = if cfg.fixed_clock {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        suite: cfg.suite.name().to_string(),
        config_echo: cfg.clone(),
        checks,
        summary,
        wall_ms,
        non_convergence,
    })
}
