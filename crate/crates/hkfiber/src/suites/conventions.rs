//! Foundation checks: quaternion relations, the frozen covector dictionary,
//! metric normalizations, action compatibilities, Killing-form sign facts,
//! and serialization round-trips.

use super::common::Runner;
use crate::error::SuiteError;
use crate::fiber::{CovAction, FiberModel};
use crate::form::Form;
use crate::kahler::{omega, KahlerData};
use crate::quat::{conjugate_structure, random_structure, random_unit_quaternion, InducedStructure, Quaternion};
use crate::report::{sample_rng, SuiteConfig, VerificationReport};
use crate::sample;
use crate::scalar::{c_i, c_one, real_close, RealScalar};

fn model(cfg: &SuiteConfig) -> Result<FiberModel, SuiteError> {
    Ok(if cfg.fault_inject {
        FiberModel::with_j_fault(cfg.n)?
    } else {
        FiberModel::new(cfg.n)?
    })
}

pub fn run<F: RealScalar>(
    cfg: &SuiteConfig,
    only_sample: Option<u64>,
) -> Result<VerificationReport, SuiteError> {
    let md = model(cfg)?;
    let tol = cfg.tolerance;
    let mut runner = Runner::new(cfg, only_sample);

    runner.global(|ctx| {
        // Quaternion relations.
        let i = Quaternion::<F>::i();
        let j = Quaternion::<F>::j();
        let k = Quaternion::<F>::k();
        let m1 = Quaternion::<F>::one().neg();
        ctx.check("quat:i2", i.mul(&i) == m1, || serde_json::json!("i*i != -1"));
        ctx.check("quat:j2", j.mul(&j) == m1, || serde_json::json!("j*j != -1"));
        ctx.check("quat:k2", k.mul(&k) == m1, || serde_json::json!("k*k != -1"));
        ctx.check("quat:ij=k", i.mul(&j) == k, || serde_json::json!("i*j != k"));
        ctx.check("quat:ji=-k", j.mul(&i) == k.neg(), || serde_json::json!("j*i != -k"));
        let p = Quaternion::<F>::from_i64(1, 1, 0, 0);
        ctx.check(
            "quat:norm_factorization",
            p.mul(&p.conj()) == Quaternion::from_i64(2, 0, 0, 0),
            || serde_json::json!("(1+i)(1-i) != 2"),
        );

        // Covector dictionary relations in application order.
        let ai = CovAction::<F>::structure_i(md);
        let aj = CovAction::<F>::structure_j(md);
        let ak = CovAction::<F>::structure_k(md);
        let minus_id = crate::linalg::CMatrix::<F>::identity(4).neg();
        ctx.check("dict:i_squared", ai.compose(&ai).matrix().approx_eq(&minus_id, tol), || {
            serde_json::json!("I∘I != -1 on covectors")
        });
        ctx.check("dict:j_squared", aj.compose(&aj).matrix().approx_eq(&minus_id, tol), || {
            serde_json::json!("J∘J != -1 on covectors")
        });
        ctx.check("dict:k_squared", ak.compose(&ak).matrix().approx_eq(&minus_id, tol), || {
            serde_json::json!("K∘K != -1 on covectors")
        });
        ctx.check(
            "dict:ij_eq_k",
            aj.compose(&ai).matrix().approx_eq(ak.matrix(), tol),
            || serde_json::json!("(I then J) != K on covectors"),
        );
        ctx.check(
            "dict:ji_eq_minus_k",
            ai.compose(&aj).matrix().approx_eq(&ak.matrix().neg(), tol),
            || serde_json::json!("(J then I) != -K on covectors"),
        );

        // J(z1 ∧ z̄1) = −z2 ∧ z̄2.
        let z1zb1: Form<F> = Form::monomial(md, &[md.z(0), md.zbar(0)], c_one());
        let expect: Form<F> = Form::monomial(md, &[md.z(1), md.zbar(1)], -c_one::<F>());
        ctx.check(
            "dict:j_on_diagonal",
            z1zb1.apply(&aj).approx_eq(&expect, tol),
            || serde_json::json!({"got": z1zb1.apply(&aj).to_json()}),
        );

        // Canonical Kähler forms and the frozen symplectic normalization.
        match KahlerData::<F>::new(md) {
            Ok(kd) => {
                let mut oi = Form::<F>::zero(md);
                for t in 0..md.complex_dim() {
                    oi = oi.add(&Form::monomial(md, &[md.z(t), md.zbar(t)], c_i()));
                }
                ctx.check("omega:canonical_i", kd.omega_i().approx_eq(&oi, tol), || {
                    serde_json::json!({"omega_i": kd.omega_i().to_json()})
                });
                let mut sym = Form::<F>::zero(md);
                for a in 0..md.quaternionic_dim() {
                    sym = sym.add(&Form::monomial(
                        md,
                        &[md.z(2 * a), md.z(2 * a + 1)],
                        crate::scalar::c_from_i64(2, 0),
                    ));
                }
                let omega_sym = kd.omega_j().add(&kd.omega_k().scale(&c_i::<F>()));
                ctx.check("omega:symplectic_normalization", omega_sym.approx_eq(&sym, tol), || {
                    serde_json::json!({"omega_j_plus_i_omega_k": omega_sym.to_json()})
                });
                for (name, f) in [("i", kd.omega_i()), ("j", kd.omega_j()), ("k", kd.omega_k())] {
                    ctx.check_msg(
                        "omega:real",
                        f.is_real(tol),
                        format!("omega_{name} is not real"),
                        || serde_json::json!({"omega": f.to_json()}),
                    );
                }
            }
            Err(e) => ctx.check("omega:construct", false, || serde_json::json!(e.to_string())),
        }
    });

    for s in 0..runner.samples() {
        runner.sample(s, |ctx| {
            let mut rng = sample_rng(cfg.seed, s);

            // conjugate_structure is a group action and lands on the sphere.
            let p = random_unit_quaternion::<F>(&mut rng);
            let q = random_unit_quaternion::<F>(&mut rng);
            let l = random_structure::<F>(&mut rng);
            let via_product = conjugate_structure(&p.mul(&q), &l);
            let via_steps = conjugate_structure(&p, &conjugate_structure(&q, &l));
            ctx.check(
                "conj:group_action",
                real_close(&via_product.a, &via_steps.a, tol)
                    && real_close(&via_product.b, &via_steps.b, tol)
                    && real_close(&via_product.c, &via_steps.c, tol),
                || serde_json::json!("conjugate_structure(pq) != nested conjugation"),
            );
            let norm = via_product.a.clone() * via_product.a.clone()
                + via_product.b.clone() * via_product.b.clone()
                + via_product.c.clone() * via_product.c.clone();
            ctx.check("conj:sphere_preserved", (norm - F::one()).is_zero_tol(tol), || {
                serde_json::json!("|gLg^-1| != 1")
            });
            // Orientation: determinant of the image triple (I, J, K) is +1.
            let gi = conjugate_structure(&p, &InducedStructure::i());
            let gj = conjugate_structure(&p, &InducedStructure::j());
            let gk = conjugate_structure(&p, &InducedStructure::k());
            let det = gi.a.clone() * (gj.b.clone() * gk.c.clone() - gj.c.clone() * gk.b.clone())
                - gj.a.clone() * (gi.b.clone() * gk.c.clone() - gi.c.clone() * gk.b.clone())
                + gk.a.clone() * (gi.b.clone() * gj.c.clone() - gi.c.clone() * gj.b.clone());
            ctx.check("conj:orientation", (det - F::one()).is_zero_tol(tol), || {
                serde_json::json!("det of rotated triple != +1")
            });

            // Multiplicativity of both action branches.
            let g = random_unit_quaternion::<F>(&mut rng);
            let ug = CovAction::group(md, &g);
            let f1 = sample::random_form::<F>(md, 1, &mut rng);
            let f2 = sample::random_form::<F>(md, 2, &mut rng);
            let lhs = f1.wedge(&f2).unwrap().apply(&ug);
            let rhs = f1.apply(&ug).wedge(&f2.apply(&ug)).unwrap();
            ctx.check("action:multiplicative_group", lhs.approx_eq(&rhs, tol), || {
                serde_json::json!({"f1": f1.to_json(), "f2": f2.to_json()})
            });
            let al = CovAction::structure(md, &l);
            let lhs = f1.wedge(&f2).unwrap().apply(&al);
            let rhs = f1.apply(&al).wedge(&f2.apply(&al)).unwrap();
            ctx.check("action:multiplicative_structure", lhs.approx_eq(&rhs, tol), || {
                serde_json::json!({"l": [l.a.to_f64(), l.b.to_f64(), l.c.to_f64()]})
            });

            // g · ω_μ = ω_{gμg⁻¹} for μ ∈ {I, J, K}.
            for mu in [InducedStructure::i(), InducedStructure::j(), InducedStructure::k()] {
                let lhs = omega::<F>(md, &mu).apply(&ug);
                let rhs = omega::<F>(md, &conjugate_structure(&g, &mu));
                ctx.check("action:omega_equivariance", lhs.approx_eq(&rhs, tol), || {
                    serde_json::json!({
                        "mu": [mu.a.to_f64(), mu.b.to_f64(), mu.c.to_f64()],
                        "g": [g.quaternion().w.to_f64(), g.quaternion().x.to_f64(),
                               g.quaternion().y.to_f64(), g.quaternion().z.to_f64()],
                    })
                });
            }

            // ω_L is linear in L.
            let kd_oi = omega::<F>(md, &InducedStructure::i());
            let kd_oj = omega::<F>(md, &InducedStructure::j());
            let kd_ok = omega::<F>(md, &InducedStructure::k());
            let direct = omega::<F>(md, &l);
            let linear = kd_oi
                .scale(&crate::scalar::c_real(l.a.clone()))
                .add(&kd_oj.scale(&crate::scalar::c_real(l.b.clone())))
                .add(&kd_ok.scale(&crate::scalar::c_real(l.c.clone())));
            ctx.check("omega:linear_in_l", direct.approx_eq(&linear, tol), || {
                serde_json::json!({"l": [l.a.to_f64(), l.b.to_f64(), l.c.to_f64()]})
            });

            // Killing-sign facts: Tr(AA†) ≥ 0 with equality iff A = 0;
            // Tr(A²) ≤ 0 for anti-Hermitian A.
            let a = sample::random_matrix::<F>(3, 3, &mut rng);
            let fro = a.frobenius_sq();
            ctx.check("killing:frobenius_nonneg", fro >= F::zero(), || {
                serde_json::json!("Tr(AA†) < 0")
            });
            ctx.check(
                "killing:frobenius_definite",
                fro.is_zero_tol(tol) == a.is_zero_tol(tol),
                || serde_json::json!("Tr(AA†) = 0 without A = 0"),
            );
            let anti = a.sub(&a.adjoint());
            let tr_sq = anti.mul(&anti).trace();
            ctx.check(
                "killing:anti_hermitian_square",
                tr_sq.im.is_zero_tol(tol) && tr_sq.re <= F::zero(),
                || serde_json::json!("Tr(A²) > 0 for anti-Hermitian A"),
            );

            // Structure action vs group action of the same quaternion:
            // opposite on 1-forms, equal on 2-forms.
            let mu_unit = crate::quat::UnitQuaternion::new(l.as_quaternion(), 1e-12)
                .expect("structures are unit");
            let u_mu = CovAction::group(md, &mu_unit);
            let s_mu = CovAction::structure(md, &l);
            ctx.check(
                "action:branch_parity_1forms",
                f1.apply(&u_mu).approx_eq(&f1.apply(&s_mu).neg(), tol),
                || serde_json::json!("U_mu != -(structure action) on 1-forms"),
            );
            ctx.check(
                "action:branch_parity_2forms",
                f2.apply(&u_mu).approx_eq(&f2.apply(&s_mu), tol),
                || serde_json::json!("U_mu != structure action on 2-forms"),
            );

            // Wedge anticommutativity and conjugation involution.
            let g1 = sample::random_form::<F>(md, 1, &mut rng);
            ctx.check(
                "form:anticommutative",
                f1.wedge(&g1).unwrap().approx_eq(&g1.wedge(&f1).unwrap().neg(), tol),
                || serde_json::json!("1-forms do not anticommute"),
            );
            ctx.check(
                "form:conj_involution",
                f2.conj().conj().approx_eq(&f2, tol),
                || serde_json::json!("conj∘conj != id"),
            );

            // Serialization round-trip (bit-exact in the rational backend).
            let json = f2.to_json();
            let back = Form::<F>::from_json(md, &json);
            ctx.check(
                "form:serialization_roundtrip",
                back.map_or(false, |b| b.approx_eq(&f2, if F::EXACT { 0.0 } else { tol })),
                || serde_json::json!({"form": json}),
            );

            // Two routes to the Kähler trace: the degree integrand must be
            // (N−1)!·Λ_L on random real 2-forms.
            if let Ok(kd) = KahlerData::<F>::new(md) {
                let eta = sample::random_real_2form::<F>(md, &mut rng);
                let nn = md.complex_dim();
                let mut fact = F::one();
                for v in 2..=(nn - 1) as i64 {
                    fact = fact * F::from_i64(v);
                }
                let deg = crate::kahler::degree_integrand(&kd, &eta, &l, tol);
                let lam = crate::kahler::lambda2(&eta, &l);
                match (deg, lam) {
                    (Ok(d), Ok(lm)) => ctx.check(
                        "kahler:degree_equals_factorial_lambda",
                        lm.im.is_zero_tol(tol) && real_close(&d, &(fact * lm.re.clone()), tol),
                        || serde_json::json!({"eta": eta.to_json(), "degree": d.to_f64()}),
                    ),
                    _ => ctx.check("kahler:degree_lambda_eval", false, || {
                        serde_json::json!("evaluation error")
                    }),
                }
            }

            // Unit quaternion sampling invariants.
            let u = random_unit_quaternion::<F>(&mut rng);
            ctx.check(
                "quat:random_unit_norm",
                (u.quaternion().norm_sq() - F::one()).is_zero_tol(tol.max(1e-12)),
                || serde_json::json!("|q|^2 != 1"),
            );
        });
    }

    Ok(runner.finish())
}
