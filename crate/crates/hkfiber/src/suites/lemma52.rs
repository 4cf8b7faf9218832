//! Positivity of r₂ ∧ ω^{N−3} for invariant Yang–Mills curvatures, the
//! generator contract, and the B/C coefficient cross-checks.
//!
//! The B_ii formula agreement and the C_ii identities are recorded as
//! measured constants: a mismatch surfaces in the report without masking
//! the headline positivity verdict, which is the hard gate.

use super::common::Runner;
use crate::curvature::{
    b_formula_ii, c_ii_def, c_ii_final, c_ii_intermediate, lambda_endo, r2,
};
use crate::error::SuiteError;
use crate::fiber::FiberModel;
use crate::kahler::{codim1_hermitian, KahlerData};
use crate::linalg::is_psd;
use crate::report::{sample_rng, SuiteConfig, VerificationReport};
use crate::sample;
use crate::scalar::{c_zero, real_close, Cx, RealScalar};

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
    let nn = md.complex_dim();
    let mut runner = Runner::new(cfg, only_sample);
    let mut b_exact = true;
    let mut b_max_diff = 0.0f64;
    let mut c_ok = true;

    for s in 0..runner.samples() {
        let mut sample_b_exact = true;
        let mut sample_b_diff = 0.0f64;
        let mut sample_c_ok = true;
        runner.sample(s, |ctx| {
            let mut rng = sample_rng(cfg.seed, s);
            let mut theta = sample::random_ym::<F>(md, cfg.rank, true, &mut rng);
            // Bounded retry before declaring the sample degenerate; su(1)
            // stays identically zero and is recorded as a trivial sample.
            for _ in 0..4 {
                if !theta.is_zero() {
                    break;
                }
                theta = sample::random_ym::<F>(md, cfg.rank, true, &mut rng);
            }
            if theta.is_zero() {
                ctx.degenerate();
                return;
            }

            // Generator contract.
            ctx.check("lemma52:reality", theta.reality_ok(tol), || {
                serde_json::json!({"theta": theta.to_json()})
            });
            ctx.check(
                "lemma52:form_invariant",
                theta.invariant_projection().apply_eq(&theta, tol),
                || serde_json::json!({"theta": theta.to_json()}),
            );
            match lambda_endo(&theta) {
                Ok(le) => ctx.check("lemma52:sum_a_kk_zero", le.is_zero_tol(tol), || {
                    serde_json::json!({"theta": theta.to_json()})
                }),
                Err(e) => ctx.check("lemma52:lambda_eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }
            for k in (0..nn).step_by(2) {
                ctx.check(
                    "lemma52:diagonal_pairing",
                    theta.a(k, k).approx_eq(&theta.a(k + 1, k + 1).neg(), tol),
                    || serde_json::json!({"k": k, "theta": theta.to_json()}),
                );
            }

            // Headline: the polarized Hermitian matrix of r₂ ∧ ω^{N−3} is PSD.
            let nu = match r2(&theta).wedge(kd.omega_i_pow(nn - 3)) {
                Ok(f) => f,
                Err(e) => {
                    ctx.check("lemma52:nu_eval", false, || serde_json::json!(e.to_string()));
                    return;
                }
            };
            let h = match codim1_hermitian(&kd, &nu, tol) {
                Ok(h) => h,
                Err(e) => {
                    ctx.check("lemma52:polarization", false, || {
                        serde_json::json!(e.to_string())
                    });
                    return;
                }
            };
            match is_psd(&h, tol) {
                Ok(v) => ctx.check("lemma52:codim1_positive", v, || {
                    serde_json::json!({"theta": theta.to_json(), "nu": nu.to_json()})
                }),
                Err(e) => ctx.check("lemma52:psd_eval", false, || {
                    serde_json::json!(e.to_string())
                }),
            }

            // Basis positivity bridge: a random unit-ish direction gives a
            // non-negative quadratic value (diagonal of a rotated basis).
            let c: Vec<Cx<F>> = (0..nn).map(|_| sample::rand_cx(&mut rng)).collect();
            let mut q = c_zero::<F>();
            for i in 0..nn {
                for j in 0..nn {
                    q = q + c[i].clone() * c[j].conj() * h[(i, j)].clone();
                }
            }
            let nonneg = if F::EXACT {
                q.re >= F::zero()
            } else {
                q.re.to_f64() >= -tol * (1.0 + q.re.to_f64().abs())
            };
            ctx.check(
                "lemma52:random_direction_nonneg",
                q.im.is_zero_tol(tol) && nonneg,
                || serde_json::json!({"q": [q.re.to_f64(), q.im.to_f64()]}),
            );

            // B/C cross-checks (soft: recorded as measured constants).
            for i in 0..nn {
                let direct = h[(i, i)].re.clone();
                let formula = b_formula_ii(&theta, i).expect("dims checked");
                if !real_close(&direct, &formula, tol) {
                    sample_b_exact = false;
                    sample_b_diff = sample_b_diff
                        .max((direct.to_f64() - formula.to_f64()).abs());
                }
                let cd = c_ii_def(&theta, i).expect("index in range");
                let cf = c_ii_final(&theta, i).expect("index in range");
                let cm = c_ii_intermediate(&theta, i).expect("index in range");
                if !(cd >= -F::from_f64(tol)
                    && real_close(&cd, &cf, tol)
                    && real_close(&cd, &cm, tol))
                {
                    sample_c_ok = false;
                }
            }
        });
        b_exact &= sample_b_exact;
        b_max_diff = b_max_diff.max(sample_b_diff);
        c_ok &= sample_c_ok;
    }

    // Yang–Mills-but-not-invariant spot check for the intermediate C identity
    // ("true for all Kähler manifolds"): diagonal anti-Hermitian blocks with
    // Σ A_kk = 0 and no invariance.
    runner.global(|ctx| {
        let mut rng = sample_rng(cfg.seed, u64::MAX - 1);
        let r = cfg.rank;
        let mut theta = crate::curvature::BundleForm::<F>::zero(md, r);
        let mut acc = crate::linalg::CMatrix::<F>::zero(r, r);
        for k in 0..nn - 1 {
            let m = sample::random_matrix::<F>(r, r, &mut rng);
            let anti = m
                .sub(&m.adjoint())
                .scale(&crate::scalar::c_real(F::from_ratio(1, 2)));
            acc = acc.add(&anti);
            theta.set_a(k, k, anti);
        }
        theta.set_a(nn - 1, nn - 1, acc.neg());
        // also one off-diagonal pair to keep it generic
        let m = sample::random_matrix::<F>(r, r, &mut rng);
        theta.set_a(0, 1, m.clone());
        theta.set_a(1, 0, m.adjoint().neg());
        let ok_ym = lambda_endo(&theta).map(|l| l.is_zero_tol(tol)).unwrap_or(false);
        ctx.check("lemma52:ym_spot_setup", ok_ym && theta.reality_ok(tol), || {
            serde_json::json!("constructed YM sample invalid")
        });
        for i in 0..nn {
            let cd = c_ii_def(&theta, i).expect("in range");
            let cm = c_ii_intermediate(&theta, i).expect("in range");
            ctx.check("lemma52:c_intermediate_ym_only", real_close(&cd, &cm, tol), || {
                serde_json::json!({"i": i, "def": cd.to_f64(), "intermediate": cm.to_f64()})
            });
        }
    });

    runner.info_constant(
        "b_formula_agreement",
        if b_exact {
            serde_json::json!("exact")
        } else {
            serde_json::json!({ "max_abs_discrepancy": b_max_diff })
        },
    );
    runner.info_constant(
        "c_identities",
        if c_ok {
            serde_json::json!("exact")
        } else {
            serde_json::json!("discrepancy observed")
        },
    );

    Ok(runner.finish())
}

trait ApplyEq<F: RealScalar> {
    fn apply_eq(&self, other: &crate::curvature::BundleForm<F>, tol: f64) -> bool;
}

impl<F: RealScalar> ApplyEq<F> for crate::curvature::BundleForm<F> {
    fn apply_eq(&self, other: &crate::curvature::BundleForm<F>, tol: f64) -> bool {
        if F::EXACT {
            return self == other;
        }
        let nn = self.model().complex_dim();
        for k in 0..nn {
            for l in 0..nn {
                if !self.a(k, l).approx_eq(&other.a(k, l), tol) {
                    return false;
                }
            }
        }
        true
    }
}
