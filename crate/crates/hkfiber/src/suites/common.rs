//! Shared harness for the suites: sample loop, failure capture, constants
//! that must agree across samples, and report assembly.

use crate::report::{Failure, SuiteConfig, VerificationReport, SCHEMA_VERSION};
use serde_json::Value;
use std::collections::BTreeMap;
use std::time::Instant;

/// Keeps at most this many serialized failures per report; the counters
/// still see all of them.
const MAX_STORED_FAILURES: usize = 12;

pub struct Runner {
    cfg: SuiteConfig,
    only_sample: Option<u64>,
    pass: u64,
    fail: u64,
    degenerate: u64,
    constants: BTreeMap<String, Value>,
    constant_conflicts: BTreeMap<String, u64>,
    failures: Vec<Failure>,
    failures_total: u64,
    started: Instant,
}

/// Collects the checks of one sample.
pub struct SampleCtx {
    index: Option<u64>,
    failures: Vec<Failure>,
    degenerate: bool,
}

impl SampleCtx {
    pub fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> Value) {
        if !ok {
            self.failures.push(Failure {
                check: name.to_string(),
                sample: self.index,
                message: format!("check `{name}` failed"),
                witness: witness(),
            });
        }
    }

    pub fn check_msg(
        &mut self,
        name: &str,
        ok: bool,
        message: String,
        witness: impl FnOnce() -> Value,
    ) {
        if !ok {
            self.failures.push(Failure {
                check: name.to_string(),
                sample: self.index,
                message,
                witness: witness(),
            });
        }
    }

    /// Mark the sample degenerate (counted separately, never as a pass).
    pub fn degenerate(&mut self) {
        self.degenerate = true;
    }
}

impl Runner {
    pub fn new(cfg: &SuiteConfig, only_sample: Option<u64>) -> Self {
        Runner {
            cfg: cfg.clone(),
            only_sample,
            pass: 0,
            fail: 0,
            degenerate: 0,
            constants: BTreeMap::new(),
            constant_conflicts: BTreeMap::new(),
            failures: Vec::new(),
            failures_total: 0,
            started: Instant::now(),
        }
    }

    pub fn cfg(&self) -> &SuiteConfig {
        &self.cfg
    }

    pub fn samples(&self) -> u64 {
        self.cfg.samples
    }

    /// Run one sample body; skipped when replaying a different sample.
    pub fn sample(&mut self, index: u64, body: impl FnOnce(&mut SampleCtx)) {
        if let Some(only) = self.only_sample {
            if only != index {
                return;
            }
        }
        let mut ctx = SampleCtx {
            index: Some(index),
            failures: Vec::new(),
            degenerate: false,
        };
        body(&mut ctx);
        self.absorb(ctx);
    }

    /// Run a one-off (non-indexed) check block; skipped during replay of a
    /// specific sample.
    pub fn global(&mut self, body: impl FnOnce(&mut SampleCtx)) {
        if self.only_sample.is_some() {
            return;
        }
        let mut ctx = SampleCtx {
            index: None,
            failures: Vec::new(),
            degenerate: false,
        };
        body(&mut ctx);
        self.absorb(ctx);
    }

    fn absorb(&mut self, ctx: SampleCtx) {
        if ctx.degenerate {
            self.degenerate += 1;
            return;
        }
        if ctx.failures.is_empty() {
            self.pass += 1;
        } else {
            self.fail += 1;
            self.failures_total += ctx.failures.len() as u64;
            for f in ctx.failures {
                if self.failures.len() < MAX_STORED_FAILURES {
                    self.failures.push(f);
                }
            }
        }
    }

    /// Record a measured constant; re-recording with a different value is a
    /// verification failure (the constancy is the test).
    pub fn constant(&mut self, name: &str, value: Value) {
        match self.constants.get(name) {
            None => {
                self.constants.insert(name.to_string(), value);
            }
            Some(existing) if *existing == value => {}
            Some(existing) => {
                let count = self.constant_conflicts.entry(name.to_string()).or_insert(0);
                *count += 1;
                if self.failures.len() < MAX_STORED_FAILURES {
                    self.failures.push(Failure {
                        check: format!("constant:{name}"),
                        sample: None,
                        message: format!(
                            "constant `{name}` changed across samples: {existing} vs {value}"
                        ),
                        witness: serde_json::json!({"old": existing, "new": value}),
                    });
                }
                self.failures_total += 1;
                self.fail += 1;
            }
        }
    }

    /// Record a constant that is informational only (no constancy check).
    pub fn info_constant(&mut self, name: &str, value: Value) {
        self.constants.insert(name.to_string(), value);
    }

    pub fn finish(self) -> VerificationReport {
        let passed = self.fail == 0 && self.failures_total == 0;
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: self.cfg.suite.clone(),
            config: self.cfg,
            passed,
            pass_count: self.pass,
            fail_count: self.fail,
            degenerate_count: self.degenerate,
            constants: self.constants,
            failures: self.failures,
            wall_time_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}
