//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see them). Sample counts, tolerances and runtime budgets are pinned
//! here.

use hkfiber::report::{Backend, SuiteConfig, VerificationReport};
use hkfiber::suites::{replay_failure, run_suite};
use std::time::Instant;

const SEED: u64 = 20240817;

fn cfg(suite: &str, n: usize, rank: usize, samples: u64, backend: Backend) -> SuiteConfig {
    SuiteConfig {
        suite: suite.to_string(),
        n,
        rank,
        samples,
        seed: SEED,
        backend,
        tolerance: 1e-9,
        fault_inject: false,
    }
}

fn must_pass(report: &VerificationReport) {
    if !report.passed {
        for f in &report.failures {
            eprintln!(
                "  failure: {} (sample {:?}): {}",
                f.check, f.sample, f.message
            );
        }
    }
    assert!(
        report.passed,
        "suite {} failed: pass={} fail={} degenerate={}",
        report.suite, report.pass_count, report.fail_count, report.degenerate_count
    );
}

fn criterion_line(id: &str, ok: bool, detail: &str) {
    println!(
        "criterion {id} {}: {}",
        if ok { "PASS" } else { "FAIL" },
        detail
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

#[test]
fn criterion_1_lemma26_invariant_forms_have_zero_lambda() {
    let t0 = Instant::now();
    for n in 1..=3 {
        let report = run_suite(&cfg("lemma26", n, 2, 500, Backend::Exact)).unwrap();
        must_pass(&report);
    }
    for n in 1..=3 {
        let report = run_suite(&cfg("lemma26", n, 2, 500, Backend::Float)).unwrap();
        must_pass(&report);
    }
    let elapsed = t0.elapsed();
    criterion_line(
        "1",
        elapsed.as_secs_f64() <= 30.0,
        &format!(
            "lemma26: 500 invariant 2-forms x 10 structures per n in {{1,2,3}}, exact and float; runtime {:.1}s (budget 30s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_lemma52_positivity_of_r2_wedge_power() {
    let t0 = Instant::now();
    for n in [2usize, 3] {
        for rank in [2usize, 3, 4] {
            let report = run_suite(&cfg("lemma52", n, rank, 200, Backend::Exact)).unwrap();
            must_pass(&report);
            // 200 random samples plus the suite's one global check block.
            assert!(
                report.pass_count >= 200 && report.degenerate_count == 0,
                "expected 200 non-degenerate samples for n={n} rank={rank}, got pass={} degenerate={}",
                report.pass_count,
                report.degenerate_count
            );
        }
    }
    let elapsed = t0.elapsed();
    criterion_line(
        "2",
        elapsed.as_secs_f64() <= 300.0,
        &format!(
            "lemma52: r2 ^ omega^(N-3) positive, sum A_kk = 0, A_kk = -A_(k+1,k+1) over 200 samples x (n,r) in {{2,3}}x{{2,3,4}}; runtime {:.1}s (budget 300s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_3_b_c_cross_checks() {
    // Same sample space as criterion 2 (smaller grid is enough for the
    // formula agreement; the constants are recorded by the suite).
    let mut agreement = String::new();
    for (n, rank) in [(2usize, 3usize), (3, 2)] {
        let report = run_suite(&cfg("lemma52", n, rank, 200, Backend::Exact)).unwrap();
        must_pass(&report);
        let b = report
            .constants
            .get("b_formula_agreement")
            .expect("b agreement recorded")
            .clone();
        let c = report
            .constants
            .get("c_identities")
            .expect("c identities recorded")
            .clone();
        agreement = format!("b={b}, c={c}");
        // The build is acceptable with a recorded discrepancy as long as
        // positivity held (must_pass above); exact agreement is what the
        // implementation actually delivers.
        assert_eq!(b, serde_json::json!("exact"), "B_ii formula disagreed with the direct expansion");
        assert_eq!(c, serde_json::json!("exact"), "C_ii identities disagreed");
    }
    criterion_line(
        "3",
        true,
        &format!("B_ii direct-vs-formula and C_ii identities exact on lemma52 samples ({agreement})"),
    );
}

#[test]
fn criterion_4_lemma72_weight_split_matches_k_hodge_split() {
    for n in 1..=3 {
        let report = run_suite(&cfg("lemma72", n, 2, 500, Backend::Exact)).unwrap();
        must_pass(&report);
    }
    criterion_line(
        "4",
        true,
        "lemma72: eta0 = eta^(1,1)_K, eta+ = eta^(2,0)_K + eta^(0,2)_K, K20 roundtrip identity, real structure; 500 samples per n, coefficient-exact",
    );
}

#[test]
fn criterion_5_lemma74_e_form_constants() {
    let mut cs = Vec::new();
    for n in 1..=3 {
        let report = run_suite(&cfg("lemma74", n, 2, 200, Backend::Exact)).unwrap();
        must_pass(&report);
        let c = report
            .constants
            .get(&format!("c_{n}"))
            .expect("c_n recorded")
            .clone();
        // Stability across runs: an identical configuration reproduces the
        // same constant.
        let again = run_suite(&cfg("lemma74", n, 2, 200, Backend::Exact)).unwrap();
        assert_eq!(again.constants.get(&format!("c_{n}")), Some(&c));
        cs.push((n, c));
    }
    assert_eq!(cs[0].1, serde_json::json!("1/1"), "c_1 must be exactly 1");
    criterion_line(
        "5",
        true,
        &format!(
            "lemma74: E-form proportional to omega^(N-1), c_1 = 1 exactly, c_2 = {}, c_3 = {}, degree identity holds with one measured constant (200 samples per n)",
            cs[1].1, cs[2].1
        ),
    );
}

#[test]
fn criterion_6_lemma92_positivity_of_weight2_part() {
    for n in 1..=3 {
        let report = run_suite(&cfg("lemma92", n, 2, 500, Backend::Exact)).unwrap();
        must_pass(&report);
    }
    criterion_line(
        "6",
        true,
        "lemma92: eta+ positive and nonzero for nonzero positive eta, -K(eta) positive, K-positivity bridge; 500 samples per n",
    );
}

#[test]
fn criterion_7_sec9_subbundle_curvature() {
    for (n, rank) in [(2usize, 2usize), (2, 4), (3, 2)] {
        let report = run_suite(&cfg("sec9", n, rank, 200, Backend::Exact)).unwrap();
        must_pass(&report);
    }
    criterion_line(
        "7",
        true,
        "sec9: trace identity exact, sqrt(-1)-normalized Tr(A ^ A-perp) PSD, degree of -Tr(Theta') >= 0 with equality iff A = 0; 200 block instances per config",
    );
}

#[test]
fn criterion_8_hodge_riemann_ratio() {
    let mut lines = Vec::new();
    for n in [2usize, 3] {
        let mut per_rank = Vec::new();
        for rank in [2usize, 3] {
            let report = run_suite(&cfg("hodge_riemann", n, rank, 100, Backend::Exact)).unwrap();
            must_pass(&report);
            let ratio = report
                .constants
                .get("hodge_riemann_ratio")
                .expect("ratio recorded")
                .clone();
            let factor = report
                .constants
                .get("hodge_riemann_vs_reference_factor")
                .expect("factor recorded")
                .clone();
            per_rank.push((ratio, factor));
        }
        // The ratio is a single rational, identical across ranks too.
        assert_eq!(per_rank[0].0, per_rank[1].0, "ratio differs across ranks at n={n}");
        lines.push(format!(
            "n={n}: ratio {} (x4(N^2-N) = {})",
            per_rank[0].0, per_rank[0].1
        ));
    }
    criterion_line(
        "8",
        true,
        &format!(
            "hodge_riemann: single positive rational across 100 samples per config; {}",
            lines.join("; ")
        ),
    );
}

#[test]
fn criterion_9_mutation_self_test() {
    let mut failed_suites = Vec::new();
    for suite in ["lemma52", "lemma72", "conventions"] {
        let mut c = cfg(suite, 2, 2, 10, Backend::Exact);
        c.fault_inject = true;
        let report = run_suite(&c).unwrap();
        if !report.passed {
            // Every stored failure must replay: re-running its sample under
            // the same configuration reproduces the same check failure.
            let failure = report
                .failures
                .iter()
                .find(|f| f.sample.is_some())
                .or_else(|| report.failures.first())
                .expect("failed suite stores a counterexample");
            assert!(
                replay_failure(&c, failure).unwrap(),
                "counterexample for {}/{} did not replay",
                suite,
                failure.check
            );
            assert!(
                !failure.witness.is_null(),
                "counterexample carries no witness data"
            );
            failed_suites.push(suite);
        }
    }
    criterion_line(
        "9",
        !failed_suites.is_empty(),
        &format!(
            "fault injection (J-dictionary sign flip) detected by {:?} with replayable counterexamples",
            failed_suites
        ),
    );
}

#[test]
fn reports_are_deterministic_modulo_wall_time() {
    let c = cfg("lemma52", 2, 2, 25, Backend::Exact);
    let a = run_suite(&c).unwrap();
    let b = run_suite(&c).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
    let f = cfg("lemma74", 2, 2, 25, Backend::Float);
    let a = run_suite(&f).unwrap();
    let b = run_suite(&f).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
}

#[test]
fn report_json_roundtrip_is_lossless() {
    let c = cfg("lemma26", 2, 2, 10, Backend::Exact);
    let report = run_suite(&c).unwrap();
    let json = report.to_json_string();
    let back: VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report.canonical_json(), back.canonical_json());
}

#[test]
fn invalid_configurations_are_rejected() {
    // lemma52 needs N >= 3 (quaternionic n >= 2).
    let bad = cfg("lemma52", 1, 2, 10, Backend::Exact);
    assert!(run_suite(&bad).is_err());
    // unknown suite
    let unknown = cfg("lemma99", 2, 2, 10, Backend::Exact);
    assert!(run_suite(&unknown).is_err());
    // out-of-range dimensions
    let big = cfg("lemma26", 7, 2, 10, Backend::Exact);
    assert!(run_suite(&big).is_err());
    let rank = cfg("lemma52", 2, 9, 10, Backend::Exact);
    assert!(run_suite(&rank).is_err());
}
