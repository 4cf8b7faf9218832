//! Constancy and positivity of the pointwise Hodge–Riemann ratio
//! [r₂ ∧ ω^{N−2}]_Vol / ‖Θ‖² over invariant Yang–Mills curvatures.

use super::common::Runner;
use crate::curvature::hodge_riemann_ratio;
use crate::error::SuiteError;
use crate::fiber::FiberModel;
use crate::kahler::KahlerData;
use crate::report::{sample_rng, SuiteConfig, VerificationReport};
use crate::sample;
use crate::scalar::{real_close, RealScalar};

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
    let mut ratio: Option<F> = None;

    for s in 0..runner.samples() {
        runner.sample(s, |ctx| {
            let mut rng = sample_rng(cfg.seed, s);
            let mut theta = sample::random_ym::<F>(md, cfg.rank, true, &mut rng);
            for _ in 0..4 {
                if !theta.is_zero() {
                    break;
                }
                theta = sample::random_ym::<F>(md, cfg.rank, true, &mut rng);
            }
            if theta.is_zero() {
                // Θ = 0 has an undefined ratio: a degenerate sample.
                ctx.degenerate();
                return;
            }
            match hodge_riemann_ratio(&kd, &theta, tol) {
                Ok(Some(r)) => {
                    ctx.check("hodge_riemann:positive", r > F::zero(), || {
                        serde_json::json!({"ratio": r.to_f64(), "theta": theta.to_json()})
                    });
                    match &ratio {
                        None => ratio = Some(r),
                        Some(prev) => ctx.check("hodge_riemann:constant", real_close(prev, &r, tol), || {
                            serde_json::json!({
                                "previous": prev.to_f64(),
                                "current": r.to_f64(),
                                "theta": theta.to_json(),
                            })
                        }),
                    }
                }
                Ok(None) => ctx.degenerate(),
                Err(e) => ctx.check("hodge_riemann:eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }
        });
    }

    if let Some(r) = &ratio {
        runner.info_constant("hodge_riemann_ratio", r.json_value());
        // Quotient against the reference value (4(N²−N))⁻¹; it records
        // the convention constant of the frozen metric and norm
        // normalizations.
        let nn = 2 * cfg.n as i64;
        let reference = F::from_ratio(1, 4 * (nn * nn - nn));
        let factor = r.clone() / reference;
        runner.info_constant("hodge_riemann_vs_reference_factor", factor.json_value());
    }

    Ok(runner.finish())
}
