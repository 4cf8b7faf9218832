//! Invariance ⟺ Hodge type (p,p) for all induced structures: the
//! operational criterion, its agreement with the degree-2 projector, and
//! the L-independence of invariant pairings.

use super::common::Runner;
use crate::error::SuiteError;
use crate::fiber::FiberModel;
use crate::kahler::KahlerData;
use crate::report::{sample_rng, SuiteConfig, VerificationReport};
use crate::sample;
use crate::scalar::RealScalar;
use crate::su2::{invariant_projection, is_invariant, weight2_part};

pub fn run<F: RealScalar>(
    cfg: &SuiteConfig,
    only_sample: Option<u64>,
) -> Result<VerificationReport, SuiteError> {
    let md = if cfg.fault_inject {
        FiberModel::with_j_fault(cfg.n)?
    } else {
        FiberModel::new(cfg.n)?
    };
    let kd = KahlerData::<F>::new(md)?;
    let tol = cfg.tolerance;
    let mut runner = Runner::new(cfg, only_sample);

    runner.global(|ctx| {
        let mut rng = sample_rng(cfg.seed, u64::MAX);
        // ω_I is (1,1)_I but not invariant.
        match is_invariant(kd.omega_i(), tol, &mut rng) {
            Ok(v) => ctx.check("lemma27:omega_not_invariant", !v, || {
                serde_json::json!("omega_I claimed invariant")
            }),
            Err(e) => ctx.check("lemma27:omega_eval", false, || serde_json::json!(e.to_string())),
        }
        // The volume form is invariant.
        match is_invariant(kd.vol(), tol, &mut rng) {
            Ok(v) => ctx.check("lemma27:vol_invariant", v, || {
                serde_json::json!("volume form not invariant")
            }),
            Err(e) => ctx.check("lemma27:vol_eval", false, || serde_json::json!(e.to_string())),
        }
    });

    for s in 0..runner.samples() {
        runner.sample(s, |ctx| {
            let mut rng = sample_rng(cfg.seed, s);
            // Projector output is invariant and agrees with the criterion.
            let eta = sample::random_invariant_2form::<F>(md, &mut rng);
            if eta.is_zero_tol(tol) {
                ctx.degenerate();
                return;
            }
            match is_invariant(&eta, tol, &mut rng) {
                Ok(v) => ctx.check("lemma27:projected_is_invariant", v, || {
                    serde_json::json!({"eta": eta.to_json()})
                }),
                Err(e) => ctx.check("lemma27:inv_eval", false, || serde_json::json!(e.to_string())),
            }

            // Degree-2 agreement: is_invariant(f) ⟺ invariant_projection(f) = f.
            let f = sample::random_real_2form::<F>(md, &mut rng);
            let proj = invariant_projection(&f).expect("degree 2");
            let by_projector = proj.approx_eq(&f, tol);
            let by_criterion = is_invariant(&f, tol, &mut rng).expect("homogeneous");
            ctx.check(
                "lemma27:criterion_matches_projector",
                by_projector == by_criterion,
                || serde_json::json!({"f": f.to_json()}),
            );

            // A (1,1)_I form with nonzero weight-2 part is not invariant.
            let g = sample::random_real_11::<F>(md, &mut rng);
            let w2 = weight2_part(&g).expect("degree 2");
            if !w2.is_zero_tol(tol) {
                match is_invariant(&g, tol, &mut rng) {
                    Ok(v) => ctx.check("lemma27:weight2_not_invariant", !v, || {
                        serde_json::json!({"g": g.to_json()})
                    }),
                    Err(e) => {
                        ctx.check("lemma27:w2_eval", false, || serde_json::json!(e.to_string()))
                    }
                }
            }

            // r₂ of an invariant curvature is an invariant 4-form, and its
            // pairings against ω_I^{N−2} and ω_J^{N−2} agree.
            let theta = sample::random_ym::<F>(md, cfg.rank.max(2), true, &mut rng);
            if theta.is_zero() {
                ctx.degenerate();
                return;
            }
            let r2 = crate::curvature::r2(&theta);
            match is_invariant(&r2, tol, &mut rng) {
                Ok(v) => ctx.check("lemma27:r2_invariant", v, || {
                    serde_json::json!({"theta": theta.to_json()})
                }),
                Err(e) => ctx.check("lemma27:r2_eval", false, || serde_json::json!(e.to_string())),
            }
            let nn = md.complex_dim();
            if nn >= 2 {
                let with_i = kd.vol_component(&r2.wedge(kd.omega_i_pow(nn - 2)).unwrap());
                let oj = kd.omega_j().pow(nn - 2).unwrap();
                let with_j = kd.vol_component(&r2.wedge(&oj).unwrap());
                ctx.check(
                    "lemma27:invariant_pairing_l_independent",
                    crate::scalar::cx_close(&with_i, &with_j, tol),
                    || {
                        serde_json::json!({
                            "with_i": [with_i.re.to_f64(), with_i.im.to_f64()],
                            "with_j": [with_j.re.to_f64(), with_j.im.to_f64()],
                        })
                    },
                );
            }
        });
    }

    Ok(runner.finish())
}
