//! Λ_L of SU(2)-invariant 2-forms vanishes for every induced structure,
//! both through the adapted-basis trace and through the degree integrand.

use super::common::Runner;
use crate::error::SuiteError;
use crate::fiber::FiberModel;
use crate::kahler::{degree_integrand, lambda2, KahlerData};
use crate::quat::random_structure;
use crate::report::{sample_rng, SuiteConfig, VerificationReport};
use crate::sample;
use crate::scalar::{cx_is_zero_tol, RealScalar};

pub const STRUCTURES_PER_SAMPLE: usize = 10;

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

    for s in 0..runner.samples() {
        runner.sample(s, |ctx| {
            let mut rng = sample_rng(cfg.seed, s);
            let eta = sample::random_invariant_2form::<F>(md, &mut rng);
            if eta.is_zero_tol(tol) {
                ctx.degenerate();
                return;
            }
            for _ in 0..STRUCTURES_PER_SAMPLE {
                let l = random_structure::<F>(&mut rng);
                match lambda2(&eta, &l) {
                    Ok(lam) => ctx.check("lemma26:lambda_zero", cx_is_zero_tol(&lam, tol), || {
                        serde_json::json!({
                            "eta": eta.to_json(),
                            "l": [l.a.to_f64(), l.b.to_f64(), l.c.to_f64()],
                            "lambda": [lam.re.to_f64(), lam.im.to_f64()],
                        })
                    }),
                    Err(e) => ctx.check("lemma26:lambda_eval", false, || {
                        serde_json::json!(e.to_string())
                    }),
                }
            }
            // The degree route must vanish as well (independent wedge
            // computation of the same quantity).
            let l = random_structure::<F>(&mut rng);
            match degree_integrand(&kd, &eta, &l, tol) {
                Ok(d) => ctx.check("lemma26:degree_zero", d.is_zero_tol(tol), || {
                    serde_json::json!({"eta": eta.to_json(), "degree": d.to_f64()})
                }),
                Err(e) => ctx.check("lemma26:degree_eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }
        });
    }

    Ok(runner.finish())
}
