//! Suite configuration, structured verification reports, and the seeded
//! RNG scheme. Reports are stable-schema JSON documents; a report is
//! byte-identical across runs and worker counts once the wall-time field is
//! cleared.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Float => write!(f, "float"),
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend `{other}` (exact|float)")),
        }
    }
}

/// Fully explicit description of one suite run; everything that affects the
/// outcome is in here.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub n: usize,
    pub rank: usize,
    pub samples: u64,
    pub seed: u64,
    pub backend: Backend,
    /// Coefficient tolerance; used by the float backend only.
    pub tolerance: f64,
    #[serde(default)]
    pub fault_inject: bool,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig {
            suite: suite.to_string(),
            n: 2,
            rank: 2,
            samples: 100,
            seed: 1,
            backend: Backend::Exact,
            tolerance: 1e-9,
            fault_inject: false,
        }
    }
}

/// One replayable failure: the sample index pins the deterministic RNG
/// stream, the witness carries the offending data bit-exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub sample: Option<u64>,
    pub message: String,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub config: SuiteConfig,
    pub passed: bool,
    pub pass_count: u64,
    pub fail_count: u64,
    pub degenerate_count: u64,
    pub constants: BTreeMap<String, Value>,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    /// Serialization with the wall-time field cleared; the determinism
    /// contract is byte-identity of this document.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.wall_time_ms = 0;
        serde_json::to_string_pretty(&copy).expect("report serialization")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Per-sample generator: one ChaCha stream per (seed, sample index), so
/// results do not depend on evaluation order or worker count.
pub fn sample_rng(seed: u64, sample_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_index.wrapping_add(1));
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn sample_streams_are_independent_and_deterministic() {
        let mut a1 = sample_rng(42, 0);
        let mut a2 = sample_rng(42, 0);
        let mut b = sample_rng(42, 1);
        let x1: u64 = a1.gen();
        let x2: u64 = a2.gen();
        let y: u64 = b.gen();
        assert_eq!(x1, x2);
        assert_ne!(x1, y);
    }

    #[test]
    fn canonical_json_hides_wall_time() {
        let cfg = SuiteConfig::new("conventions");
        let mut r = VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: cfg.suite.clone(),
            config: cfg,
            passed: true,
            pass_count: 1,
            fail_count: 0,
            degenerate_count: 0,
            constants: BTreeMap::new(),
            failures: vec![],
            wall_time_ms: 123,
        };
        let a = r.canonical_json();
        r.wall_time_ms = 456;
        assert_eq!(a, r.canonical_json());
    }
}
