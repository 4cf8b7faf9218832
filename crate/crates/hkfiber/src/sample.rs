//! Seeded random generators for forms, matrices and curvatures.
//!
//! Exact and float backends draw the same small-rational values through
//! `RealScalar::from_ratio`, so a float run mirrors the exact run at f64
//! precision. Coefficients are kept small to bound denominators in the
//! rational backend.

use crate::curvature::BundleForm;
use crate::fiber::FiberModel;
use crate::form::Form;
use crate::linalg::CMatrix;
use crate::scalar::{c_i, cx, Cx, RealScalar};
use rand::Rng;

pub fn rand_ratio<F: RealScalar>(rng: &mut impl Rng) -> F {
    F::from_ratio(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3))
}

pub fn rand_int<F: RealScalar>(rng: &mut impl Rng) -> F {
    F::from_i64(rng.gen_range(-4i64..=4))
}

pub fn rand_cx<F: RealScalar>(rng: &mut impl Rng) -> Cx<F> {
    cx(rand_ratio(rng), rand_ratio(rng))
}

pub fn rand_cx_int<F: RealScalar>(rng: &mut impl Rng) -> Cx<F> {
    cx(rand_int(rng), rand_int(rng))
}

/// Random homogeneous form of the given degree with small coefficients on
/// a random subset of monomials.
pub fn random_form<F: RealScalar>(model: FiberModel, degree: usize, rng: &mut impl Rng) -> Form<F> {
    let count = model.covector_count();
    let mut f = Form::zero(model);
    let monomial_budget = 2 * count;
    for _ in 0..monomial_budget {
        let mut idx = Vec::with_capacity(degree);
        while idx.len() < degree {
            let c = rng.gen_range(0..count);
            if !idx.contains(&c) {
                idx.push(c);
            }
        }
        f = f.add(&Form::monomial(model, &idx, rand_cx(rng)));
    }
    f
}

/// Random real 2-form: g + conj(g).
pub fn random_real_2form<F: RealScalar>(model: FiberModel, rng: &mut impl Rng) -> Form<F> {
    let g = random_form(model, 2, rng);
    g.add(&g.conj())
}

/// Random r×c complex matrix with small integer entries.
pub fn random_matrix<F: RealScalar>(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix<F> {
    CMatrix::from_fn(rows, cols, |_, _| rand_cx_int(rng))
}

/// Random Hermitian matrix.
pub fn random_hermitian<F: RealScalar>(nn: usize, rng: &mut impl Rng) -> CMatrix<F> {
    let m = random_matrix(nn, nn, rng);
    // (m + m†) has even entries; halve to keep coefficients small.
    m.add(&m.adjoint()).scale(&cx(F::from_ratio(1, 2), F::zero()))
}

/// Random PSD Hermitian matrix G = M·M†.
pub fn random_psd<F: RealScalar>(nn: usize, rng: &mut impl Rng) -> CMatrix<F> {
    let m = random_matrix(nn, nn, rng);
    m.mul(&m.adjoint())
}

/// Random real (1,1)_I form √−1 Σ h_kl z_k ∧ z̄_l with Hermitian h.
pub fn random_real_11<F: RealScalar>(model: FiberModel, rng: &mut impl Rng) -> Form<F> {
    form_from_h(model, &random_hermitian(model.complex_dim(), rng))
}

/// Random positive (1,1)_I form (Gram coefficient matrix).
pub fn random_positive_11<F: RealScalar>(model: FiberModel, rng: &mut impl Rng) -> Form<F> {
    form_from_h(model, &random_psd(model.complex_dim(), rng))
}

/// √−1 Σ h_kl z_k ∧ z̄_l from a coefficient matrix.
pub fn form_from_h<F: RealScalar>(model: FiberModel, h: &CMatrix<F>) -> Form<F> {
    let nn = model.complex_dim();
    let mut f = Form::zero(model);
    for k in 0..nn {
        for l in 0..nn {
            let c = c_i::<F>() * h[(k, l)].clone();
            f = f.add(&Form::monomial(model, &[model.z(k), model.zbar(l)], c));
        }
    }
    f
}

/// Random (2,0)_I form.
pub fn random_20_i<F: RealScalar>(model: FiberModel, rng: &mut impl Rng) -> Form<F> {
    let nn = model.complex_dim();
    let mut f = Form::zero(model);
    for p in 0..nn {
        for q in (p + 1)..nn {
            f = f.add(&Form::monomial(model, &[model.z(p), model.z(q)], rand_cx(rng)));
        }
    }
    f
}

/// Random SU(2)-invariant real 2-form (projector applied to a random real
/// 2-form).
pub fn random_invariant_2form<F: RealScalar>(model: FiberModel, rng: &mut impl Rng) -> Form<F> {
    let f = random_real_2form(model, rng);
    crate::su2::invariant_projection(&f).expect("degree 2 by construction")
}

/// Random Yang–Mills invariant curvature; thin wrapper so suites share one
/// entry point.
pub fn random_ym<F: RealScalar>(
    model: FiberModel,
    rank: usize,
    traceless: bool,
    rng: &mut impl Rng,
) -> BundleForm<F> {
    crate::curvature::random_invariant_ym_curvature(model, rank, traceless, rng)
        .expect("valid dimensions")
}
