//! Sub-bundle curvature: the second-fundamental-form identity, positivity
//! of the Gram term, and non-negativity of the degree integrand of −Tr Θ′
//! with equality exactly at A = 0.

use super::common::Runner;
use crate::curvature::{chern_integrands, subbundle_curvature, BundleForm, SecondForm};
use crate::error::SuiteError;
use crate::fiber::FiberModel;
use crate::kahler::{degree_integrand, is_positive_11, KahlerData};
use crate::quat::InducedStructure;
use crate::report::{sample_rng, SuiteConfig, VerificationReport};
use crate::sample;
use crate::scalar::{cx_close, RealScalar};

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
    let sub_rank = cfg.rank.div_ceil(2);
    let quot_rank = cfg.rank - sub_rank;
    let mut runner = Runner::new(cfg, only_sample);

    runner.global(|ctx| {
        // A = 0: Θ′ is the plain block and the degree vanishes.
        let mut rng = sample_rng(cfg.seed, u64::MAX - 2);
        let theta = sample::random_ym::<F>(md, cfg.rank, false, &mut rng);
        let zero_a = SecondForm::zero(md, sub_rank, quot_rank);
        match subbundle_curvature(&theta, &zero_a) {
            Ok(block) => {
                let d = degree_integrand(&kd, &block.trace_form().neg(), &InducedStructure::i(), tol);
                match d {
                    Ok(v) => ctx.check("sec9:zero_a_zero_degree", v.is_zero_tol(tol), || {
                        serde_json::json!({"degree": v.to_f64()})
                    }),
                    Err(e) => ctx.check("sec9:zero_a_degree_eval", false, || {
                        serde_json::json!(e.to_string())
                    }),
                }
            }
            Err(e) => ctx.check("sec9:zero_a", false, || serde_json::json!(e.to_string())),
        }
    });

    for s in 0..runner.samples() {
        runner.sample(s, |ctx| {
            let mut rng = sample_rng(cfg.seed, s);
            let theta = sample::random_ym::<F>(md, cfg.rank, false, &mut rng);
            let mats: Vec<_> = (0..md.complex_dim())
                .map(|_| sample::random_matrix::<F>(quot_rank, sub_rank, &mut rng))
                .collect();
            let a = match SecondForm::new(md, sub_rank, quot_rank, mats) {
                Ok(a) => a,
                Err(e) => {
                    ctx.check("sec9:second_form", false, || serde_json::json!(e.to_string()));
                    return;
                }
            };
            if a.is_zero() {
                ctx.degenerate();
                return;
            }

            let tprime = match subbundle_curvature(&theta, &a) {
                Ok(t) => t,
                Err(e) => {
                    ctx.check("sec9:subbundle", false, || serde_json::json!(e.to_string()));
                    return;
                }
            };
            // Θ′ stays in the reality class.
            ctx.check("sec9:reality", tprime.reality_ok(tol), || {
                serde_json::json!({"theta_prime": tprime.to_json()})
            });

            // Tr Θ′ + (√−1-normalized Tr A∧A^⊥) = Tr Θ|F′, coefficient-exact.
            let gram = a.gram_form();
            let zero_a = SecondForm::zero(md, sub_rank, quot_rank);
            let block = subbundle_curvature(&theta, &zero_a).expect("shapes fixed");
            ctx.check(
                "sec9:trace_identity",
                tprime
                    .trace_form()
                    .add(&gram)
                    .approx_eq(&block.trace_form(), tol),
                || {
                    serde_json::json!({
                        "trace_theta_prime": tprime.trace_form().to_json(),
                        "gram": gram.to_json(),
                    })
                },
            );

            // The Gram form is a positive (1,1) form.
            match is_positive_11(&gram, tol) {
                Ok(v) => ctx.check("sec9:gram_psd", v, || {
                    serde_json::json!({"gram": gram.to_json()})
                }),
                Err(e) => ctx.check("sec9:gram_eval", false, || serde_json::json!(e.to_string())),
            }

            // Θ = 0 route: −Tr Θ′ equals the Gram form.
            let zero_theta = BundleForm::<F>::zero(md, cfg.rank);
            let t0 = subbundle_curvature(&zero_theta, &a).expect("shapes fixed");
            ctx.check(
                "sec9:zero_theta_gram",
                t0.trace_form().neg().approx_eq(&gram, tol),
                || serde_json::json!({"gram": gram.to_json()}),
            );

            // Degree integrand of −Tr Θ′: positive for A ≠ 0 (the invariant
            // block contributes zero).
            match degree_integrand(&kd, &tprime.trace_form().neg(), &InducedStructure::i(), tol) {
                Ok(d) => ctx.check("sec9:degree_positive", d.to_f64() > -tol && !d.is_zero_tol(tol), || {
                    serde_json::json!({"degree": d.to_f64(), "a_nonzero": !a.is_zero()})
                }),
                Err(e) => ctx.check("sec9:degree_eval", false, || serde_json::json!(e.to_string())),
            }

            // Chern integrand sanity on the ambient curvature: the c1
            // density pairs equally against ω_I^{N−2} and ω_J^{N−2} through
            // the discriminant density.
            if let Ok((_c1, disc)) = chern_integrands(&theta) {
                let nn = md.complex_dim();
                let with_i = kd.vol_component(&disc.wedge(kd.omega_i_pow(nn - 2)).unwrap());
                let oj = kd.omega_j().pow(nn - 2).unwrap();
                let with_j = kd.vol_component(&disc.wedge(&oj).unwrap());
                ctx.check("sec9:disc_pairing_l_independent", cx_close(&with_i, &with_j, tol), || {
                    serde_json::json!({
                        "with_i": [with_i.re.to_f64(), with_i.im.to_f64()],
                        "with_j": [with_j.re.to_f64(), with_j.im.to_f64()],
                    })
                });
            }
        });
    }

    runner.info_constant(
        "c1_normalization_note",
        serde_json::json!("c1 density emitted as Tr(Theta); 2*pi*c1 = Tr(Theta); disc density = 4*pi^2*D"),
    );

    Ok(runner.finish())
}
