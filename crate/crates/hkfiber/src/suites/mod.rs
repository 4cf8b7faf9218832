//! Named verification suites keyed to the pointwise lemmas, run over
//! seeded random instances on either scalar backend.

mod common;
mod conventions;
mod hodge_riemann;
mod lemma26;
mod lemma27;
mod lemma52;
mod lemma72;
mod lemma74;
mod lemma92;
mod sec9;

pub use common::Runner;

use crate::error::SuiteError;
use crate::report::{Backend, SuiteConfig, VerificationReport};
use crate::scalar::RealScalar;
use num_rational::BigRational;

/// Registry of suite names, in the order `all` runs them.
pub const SUITE_NAMES: &[&str] = &[
    "conventions",
    "lemma26",
    "lemma27",
    "lemma52",
    "lemma72",
    "lemma74",
    "lemma92",
    "sec9",
    "hodge_riemann",
];

fn dispatch<F: RealScalar>(
    cfg: &SuiteConfig,
    only_sample: Option<u64>,
) -> Result<VerificationReport, SuiteError> {
    match cfg.suite.as_str() {
        "conventions" => conventions::run::<F>(cfg, only_sample),
        "lemma26" => lemma26::run::<F>(cfg, only_sample),
        "lemma27" => lemma27::run::<F>(cfg, only_sample),
        "lemma52" => lemma52::run::<F>(cfg, only_sample),
        "lemma72" => lemma72::run::<F>(cfg, only_sample),
        "lemma74" => lemma74::run::<F>(cfg, only_sample),
        "lemma92" => lemma92::run::<F>(cfg, only_sample),
        "sec9" => sec9::run::<F>(cfg, only_sample),
        "hodge_riemann" => hodge_riemann::run::<F>(cfg, only_sample),
        other => Err(SuiteError::UnknownSuite(other.to_string())),
    }
}

/// Run one suite deterministically for its configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, SuiteError> {
    validate(cfg)?;
    match cfg.backend {
        Backend::Exact => dispatch::<BigRational>(cfg, None),
        Backend::Float => dispatch::<f64>(cfg, None),
    }
}

/// Re-run a single sample of a suite; used to replay serialized
/// counterexamples (identical per-sample RNG streams make this exact).
pub fn replay_sample(cfg: &SuiteConfig, sample: u64) -> Result<VerificationReport, SuiteError> {
    validate(cfg)?;
    match cfg.backend {
        Backend::Exact => dispatch::<BigRational>(cfg, Some(sample)),
        Backend::Float => dispatch::<f64>(cfg, Some(sample)),
    }
}

/// A failure is reproducible when re-running its sample under the same
/// configuration raises the same check again.
pub fn replay_failure(
    cfg: &SuiteConfig,
    failure: &crate::report::Failure,
) -> Result<bool, SuiteError> {
    let report = match failure.sample {
        Some(s) => replay_sample(cfg, s)?,
        None => run_suite(cfg)?,
    };
    Ok(report
        .failures
        .iter()
        .any(|f| f.check == failure.check && f.sample == failure.sample))
}

fn validate(cfg: &SuiteConfig) -> Result<(), SuiteError> {
    if !SUITE_NAMES.contains(&cfg.suite.as_str()) {
        return Err(SuiteError::UnknownSuite(cfg.suite.clone()));
    }
    if cfg.n < 1 || cfg.n > crate::fiber::MAX_QUAT_DIM {
        return Err(SuiteError::InvalidConfig(format!(
            "n = {} outside supported range 1..={}",
            cfg.n,
            crate::fiber::MAX_QUAT_DIM
        )));
    }
    if cfg.rank < 1 || cfg.rank > crate::curvature::MAX_RANK {
        return Err(SuiteError::InvalidConfig(format!(
            "rank = {} outside supported range 1..={}",
            cfg.rank,
            crate::curvature::MAX_RANK
        )));
    }
    // Suites built on r₂ ∧ ω^{N−3} need N ≥ 3.
    if matches!(cfg.suite.as_str(), "lemma52") && 2 * cfg.n < 3 {
        return Err(SuiteError::InvalidConfig(format!(
            "suite {} needs complex dimension N >= 3, got N = {}",
            cfg.suite,
            2 * cfg.n
        )));
    }
    if matches!(cfg.suite.as_str(), "hodge_riemann") && 2 * cfg.n < 2 {
        return Err(SuiteError::InvalidConfig(
            "hodge_riemann needs N >= 2".into(),
        ));
    }
    if matches!(cfg.suite.as_str(), "sec9") && cfg.rank < 2 {
        return Err(SuiteError::InvalidConfig(
            "sec9 splits rank into sub + quotient; needs rank >= 2".into(),
        ));
    }
    Ok(())
}

/// Configurations `all` runs: every suite over its supported (n, rank)
/// grid, scaled by the base config's sample count.
pub fn all_configs(base: &SuiteConfig) -> Vec<SuiteConfig> {
    let mut out = Vec::new();
    for suite in SUITE_NAMES {
        let ns: &[usize] = match *suite {
            "lemma52" | "hodge_riemann" => &[2, 3],
            "sec9" => &[2, 3],
            _ => &[1, 2, 3],
        };
        let ranks: &[usize] = match *suite {
            "lemma52" | "hodge_riemann" => &[2, 3, 4],
            "sec9" => &[2, 3, 4],
            _ => &[2],
        };
        for &n in ns {
            for &rank in ranks {
                let mut cfg = base.clone();
                cfg.suite = suite.to_string();
                cfg.n = n;
                cfg.rank = rank;
                out.push(cfg);
            }
        }
    }
    out
}

/// Run every suite in the registry; per-suite errors become failed reports
/// so the run continues.
pub fn run_all(base: &SuiteConfig) -> Vec<Result<VerificationReport, SuiteError>> {
    all_configs(base).iter().map(run_suite).collect()
}
