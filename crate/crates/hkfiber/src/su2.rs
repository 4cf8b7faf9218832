//! SU(2) weight decomposition of 2-forms: invariant projection, the pure
//! weight-2 part, and the correspondence with (2,0)_K forms together with
//! its real structure.
//!
//! On 2-forms the SU(2) action factors through the three commuting
//! involutions given by I, J, K, so the Haar projector onto invariants is
//! the finite average ¼(1 + I + J + K); this is itself cross-checked against
//! random unit-quaternion actions in the suites.

use crate::error::AlgebraError;
use crate::fiber::CovAction;
use crate::form::Form;
use crate::kahler::hodge_type_decompose;
use crate::quat::{random_unit_quaternion, InducedStructure};
use crate::scalar::{c_real, RealScalar};
use rand::Rng;

/// η ↦ ¼(η + Iη + Jη + Kη); the SU(2)-invariant part of a 2-form.
pub fn invariant_projection<F: RealScalar>(eta: &Form<F>) -> Result<Form<F>, AlgebraError> {
    eta.expect_degree(2)?;
    let model = eta.model();
    let i = eta.apply(&CovAction::structure_i(model));
    let j = eta.apply(&CovAction::structure_j(model));
    let k = eta.apply(&CovAction::structure_k(model));
    Ok(eta
        .add(&i)
        .add(&j)
        .add(&k)
        .scale(&c_real(F::from_ratio(1, 4))))
}

/// η₊ = η − η₀, the pure weight-2 part.
pub fn weight2_part<F: RealScalar>(eta: &Form<F>) -> Result<Form<F>, AlgebraError> {
    Ok(eta.sub(&invariant_projection(eta)?))
}

/// ½(η − Kη): for (1,1)_I forms this must agree with [`weight2_part`];
/// exposed so the agreement is testable as two independent routes.
pub fn weight2_via_k<F: RealScalar>(eta: &Form<F>) -> Result<Form<F>, AlgebraError> {
    eta.expect_degree(2)?;
    let k = eta.apply(&CovAction::structure_k(eta.model()));
    Ok(eta.sub(&k).scale(&c_real(F::from_ratio(1, 2))))
}

/// The (2,0)_K Hodge component of a pure weight-2 (1,1)_I form.
pub fn to_k20<F: RealScalar>(eta_plus: &Form<F>, tol: f64) -> Result<Form<F>, AlgebraError> {
    eta_plus.expect_degree(2)?;
    if !eta_plus.is_zero() {
        match eta_plus.bidegree_i() {
            Some((1, 1)) => {}
            _ => return Err(AlgebraError::WrongHodgeType { expected: "(1,1)_I" }),
        }
        if !invariant_projection(eta_plus)?.is_zero_tol(tol) {
            return Err(AlgebraError::NotPureWeight2);
        }
    }
    let parts = hodge_type_decompose(eta_plus, &InducedStructure::k())?;
    Ok(parts
        .get(&(2, 0))
        .cloned()
        .unwrap_or_else(|| Form::zero(eta_plus.model())))
}

/// Inverse of [`to_k20`]: ρ + I(ρ). Real exactly when I(ρ) = conj(ρ), and
/// always pure of weight 2.
pub fn from_k20<F: RealScalar>(rho: &Form<F>, tol: f64) -> Result<Form<F>, AlgebraError> {
    rho.expect_degree(2)?;
    if !rho.is_zero() {
        let parts = hodge_type_decompose(rho, &InducedStructure::k())?;
        let k20 = parts.get(&(2, 0)).cloned().unwrap_or_else(|| Form::zero(rho.model()));
        if !rho.sub(&k20).is_zero_tol(tol) {
            return Err(AlgebraError::WrongHodgeType { expected: "(2,0)_K" });
        }
    }
    let i_rho = rho.apply(&CovAction::structure_i(rho.model()));
    Ok(rho.add(&i_rho))
}

/// SU(2) invariance via Lemma-2.7 style criterion: (p,p) with respect to
/// both I and J (sufficient, the generated group is all of SU(2)), plus a
/// few random unit-quaternion spot checks where the degree keeps the
/// expansion small.
pub fn is_invariant<F: RealScalar>(
    f: &Form<F>,
    tol: f64,
    rng: &mut impl Rng,
) -> Result<bool, AlgebraError> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.degree().ok_or(AlgebraError::NonHomogeneous)?;
    if d % 2 != 0 {
        return Ok(false);
    }
    let model = f.model();
    // (p,p) with respect to I: bidegree filter.
    if !f.sub(&f.component_pq_i(d / 2, d / 2)).is_zero_tol(tol) {
        return Ok(false);
    }
    // (p,p) with respect to J: rotate J to I by the rational non-unit
    // representative g₀ = 1 − i·j = 1 − k (the overall scale cannot change
    // bidegree membership), then filter.
    let g0 = crate::quat::Quaternion::<F>::one().add(&crate::quat::Quaternion::k().neg());
    let rot = CovAction::scaled_pullback(model, &g0.conj());
    let fr = f.apply(&rot);
    if !fr.sub(&fr.component_pq_i(d / 2, d / 2)).is_zero_tol(tol) {
        return Ok(false);
    }
    // Spot checks with random SU(2) elements; skipped for degrees where the
    // multiplicative expansion is large (top degree is handled by the
    // determinant fast path inside `apply`).
    if d <= 4 || d == model.covector_count() {
        for _ in 0..5 {
            let g = random_unit_quaternion::<F>(rng);
            let gf = f.apply(&CovAction::group(model, &g));
            if !gf.approx_eq(f, tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
