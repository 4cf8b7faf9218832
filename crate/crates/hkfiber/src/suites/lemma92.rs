//! Positivity of the weight-2 part of positive (1,1)_I forms, positivity
//! of −K(η), K-positivity, and the rotation bridge between the (2,0)_I
//! predicates and K-positivity.

use super::common::Runner;
use crate::error::SuiteError;
use crate::fiber::{j_vector_action, CovAction, FiberModel};
use crate::form::Form;
use crate::kahler::{is_k_positive, is_positive_11};
use crate::linalg::{is_psd, CMatrix};
use crate::quat::cyclic_rotation;
use crate::report::{sample_rng, SuiteConfig, VerificationReport};
use crate::sample;
use crate::scalar::{c_i, c_one, c_zero, Cx, RealScalar};
use crate::su2::{to_k20, weight2_part};

/// Hermitian matrix of the §8 predicate: H_kl = η(Z_k, J Z̄_l) for a
/// (2,0)_I form η with J(η) = conj(η).
fn predicate_b_matrix<F: RealScalar>(eta: &Form<F>) -> CMatrix<F> {
    let md = eta.model();
    let nn = md.complex_dim();
    CMatrix::from_fn(nn, nn, |k, l| {
        let mut v = vec![c_zero::<F>(); 2 * nn];
        v[md.z(k)] = c_one();
        let mut w = vec![c_zero::<F>(); 2 * nn];
        w[md.zbar(l)] = c_one();
        let jw = j_vector_action(&md, &w);
        eta.eval2(&v, &jw).expect("degree 2")
    })
}

pub fn run<F: RealScalar>(
    cfg: &SuiteConfig,
    only_sample: Option<u64>,
) -> Result<VerificationReport, SuiteError> {
    let md = if cfg.fault_inject {
        FiberModel::with_j_fault(cfg.n)?
    } else {
        FiberModel::new(cfg.n)?
    };
    let tol = cfg.tolerance;
    let mut runner = Runner::new(cfg, only_sample);
    let g = cyclic_rotation::<F>();
    let to_k = CovAction::group(md, &g.inverse());
    let to_i = CovAction::group(md, &g);

    runner.global(|ctx| {
        // A deterministic indefinite instance: η = √−1(z1∧z̄1 − 2 z2∧z̄2)
        // has η₊ = −½(√−1 z1∧z̄1 + √−1 z2∧z̄2), which is negative; the
        // corresponding ρ fails K-positivity.
        let eta: Form<F> = Form::monomial(md, &[md.z(0), md.zbar(0)], c_i())
            .add(&Form::monomial(md, &[md.z(1), md.zbar(1)], {
                let two = Cx::new(F::from_i64(2), F::zero());
                -(c_i::<F>() * two)
            }));
        let etap = weight2_part(&eta).expect("degree 2");
        match is_positive_11(&etap, tol) {
            Ok(v) => ctx.check("lemma92:indefinite_weight2_not_positive", !v, || {
                serde_json::json!({"etap": etap.to_json()})
            }),
            Err(e) => ctx.check("lemma92:indef_eval", false, || serde_json::json!(e.to_string())),
        }
        match to_k20(&etap, tol).and_then(|rho| is_k_positive(&rho, tol)) {
            Ok(v) => ctx.check("lemma92:indefinite_rho_not_k_positive", !v, || {
                serde_json::json!({"etap": etap.to_json()})
            }),
            Err(e) => ctx.check("lemma92:indef_k_eval", false, || serde_json::json!(e.to_string())),
        }
        // ρ = 0 is K-positive.
        ctx.check(
            "lemma92:zero_k_positive",
            is_k_positive(&Form::<F>::zero(md), tol).unwrap_or(false),
            || serde_json::json!("zero form rejected"),
        );
    });

    for s in 0..runner.samples() {
        runner.sample(s, |ctx| {
            let mut rng = sample_rng(cfg.seed, s);
            let eta = sample::random_positive_11::<F>(md, &mut rng);
            if eta.is_zero_tol(tol) {
                ctx.degenerate();
                return;
            }
            let etap = weight2_part(&eta).expect("degree 2");

            // Lemma 9.2: η₊ positive and nonzero for nonzero positive η.
            ctx.check("lemma92:weight2_nonzero", !etap.is_zero_tol(tol), || {
                serde_json::json!({"eta": eta.to_json()})
            });
            match is_positive_11(&etap, tol) {
                Ok(v) => ctx.check("lemma92:weight2_positive", v, || {
                    serde_json::json!({"eta": eta.to_json(), "etap": etap.to_json()})
                }),
                Err(e) => ctx.check("lemma92:weight2_eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }

            // Proof step: −K(η) is positive for positive η.
            let k_eta = eta.apply(&CovAction::structure_k(md));
            match is_positive_11(&k_eta.neg(), tol) {
                Ok(v) => ctx.check("lemma92:minus_k_positive", v, || {
                    serde_json::json!({"eta": eta.to_json()})
                }),
                Err(e) => ctx.check("lemma92:minus_k_eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }

            // K-positive instance through the correspondence: ρ = (η₊)^{2,0}_K
            // has Re(ρ) = ½ η₊ ≥ 0.
            let rho = match to_k20(&etap, tol) {
                Ok(r) => r,
                Err(e) => {
                    ctx.check("lemma92:to_k20", false, || serde_json::json!(e.to_string()));
                    return;
                }
            };
            match is_k_positive(&rho, tol) {
                Ok(v) => ctx.check("lemma92:rho_k_positive", v, || {
                    serde_json::json!({"rho": rho.to_json()})
                }),
                Err(e) => ctx.check("lemma92:k_positive_eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }

            // §8 bridge: ζ := g(ρ) is (2,0)_I with J(ζ) = conj(ζ), and the
            // predicate "η(x, J x̄) ≥ 0" agrees with K-positivity of ρ.
            let zeta = rho.apply(&to_i);
            ctx.check("lemma92:zeta_is_20_i", zeta.is_zero_tol(tol) || zeta.bidegree_i() == Some((2, 0)), || {
                serde_json::json!({"zeta": zeta.to_json()})
            });
            let j_zeta = zeta.apply(&CovAction::structure_j(md));
            ctx.check("lemma92:zeta_reality", j_zeta.approx_eq(&zeta.conj(), tol), || {
                serde_json::json!({"zeta": zeta.to_json()})
            });
            let h = predicate_b_matrix(&zeta);
            match is_psd(&h, tol) {
                Ok(v) => ctx.check("lemma92:bridge_positive_case", v, || {
                    serde_json::json!({"zeta": zeta.to_json()})
                }),
                Err(e) => ctx.check("lemma92:bridge_eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }

            // Bridge on a generic (2,0)_I form with the symmetrized reality:
            // the two predicates must agree whatever the verdict.
            let raw = sample::random_20_i::<F>(md, &mut rng);
            let zeta2 = raw.add(&raw.apply(&CovAction::structure_j(md)).conj());
            if zeta2.is_zero_tol(tol) {
                return;
            }
            let rho2 = zeta2.apply(&to_k);
            let via_k = is_k_positive(&rho2, tol);
            let h2 = predicate_b_matrix(&zeta2);
            let via_b = is_psd(&h2, tol);
            match (via_k, via_b) {
                (Ok(a), Ok(b)) => ctx.check("lemma92:bridge_agreement", a == b, || {
                    serde_json::json!({
                        "zeta": zeta2.to_json(),
                        "k_positive": a,
                        "predicate_b": b,
                    })
                }),
                (ka, kb) => ctx.check_msg(
                    "lemma92:bridge_errors",
                    false,
                    format!("bridge evaluation failed: {ka:?} / {kb:?}"),
                    || serde_json::json!({"zeta": zeta2.to_json()}),
                ),
            }
        });
    }

    Ok(runner.finish())
}
