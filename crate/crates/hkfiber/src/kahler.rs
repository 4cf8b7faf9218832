//! Kähler forms of induced structures, the Λ operator on 2-forms, degree
//! integrands, the E-form identity, Hodge-type decompositions for arbitrary
//! induced structures, and the positivity predicates.
//!
//! Conventions frozen here: the metric is scaled so that
//! ω_I = √−1 Σ_k z_k∧z̄_k exactly; consequently ω_J + √−1 ω_K =
//! 2 Σ_a z_{2a−1}∧z_{2a} (the holomorphic symplectic form of I carries the
//! factor 2 in this normalization). Vol := ω_I^N / N!.

use crate::error::AlgebraError;
use crate::fiber::{CovAction, FiberModel};
use crate::form::Form;
use crate::linalg::{is_psd, CMatrix};
use crate::quat::{InducedStructure, Quaternion};
use crate::scalar::{c_i, c_one, c_real, c_zero, Cx, RealScalar};
use std::collections::BTreeMap;

/// Canonical Kähler data of a model fiber: the three Kähler forms, cached
/// powers of ω_I, and the volume form. Construct once per model and share.
#[derive(Debug, Clone)]
pub struct KahlerData<F: RealScalar> {
    model: FiberModel,
    omega_i: Form<F>,
    omega_j: Form<F>,
    omega_k: Form<F>,
    omega_i_pows: Vec<Form<F>>,
    vol: Form<F>,
    vol_coeff: Cx<F>,
}

/// Local complex d-coordinates of the dual tangent basis, per block:
/// Z_even = ½(∂x − √−1 ∂u), Z_odd = ½(∂v − √−1 ∂w) and conjugates.
fn dual_vector_d_coords<F: RealScalar>(local: usize) -> [Cx<F>; 4] {
    let h = F::from_ratio(1, 2);
    let half = Cx::new(h.clone(), F::zero());
    let imh = Cx::new(F::zero(), h);
    let z = c_zero::<F>();
    match local {
        0 => [half, -imh, z.clone(), z],
        1 => [z.clone(), z, half, -imh],
        2 => [half, imh, z.clone(), z],
        3 => [z.clone(), z, half, imh],
        _ => unreachable!(),
    }
}

fn left_mult_apply<F: RealScalar>(q: &Quaternion<F>, v: &[Cx<F>; 4]) -> [Cx<F>; 4] {
    // M_q columns are images of (1, i, j, k).
    let cols: [[F; 4]; 4] = [
        [q.w.clone(), q.x.clone(), q.y.clone(), q.z.clone()],
        [-q.x.clone(), q.w.clone(), q.z.clone(), -q.y.clone()],
        [-q.y.clone(), -q.z.clone(), q.w.clone(), q.x.clone()],
        [-q.z.clone(), q.y.clone(), -q.x.clone(), q.w.clone()],
    ];
    let mut out = [c_zero::<F>(), c_zero(), c_zero(), c_zero()];
    for (c, vc) in v.iter().enumerate() {
        for r in 0..4 {
            let add = Cx::new(cols[c][r].clone(), F::zero()) * vc.clone();
            out[r] = out[r].clone() + add;
        }
    }
    out
}

/// ⟨·,·⟩ = 2 × Euclidean, extended complex-bilinearly.
fn metric_pair<F: RealScalar>(v: &[Cx<F>; 4], w: &[Cx<F>; 4]) -> Cx<F> {
    let mut acc = c_zero::<F>();
    for k in 0..4 {
        acc = acc + v[k].clone() * w[k].clone();
    }
    acc * Cx::new(F::from_i64(2), F::zero())
}

/// The Kähler form of an induced structure, computed as ⟨L·,·⟩ on the real
/// model and expressed in the canonical covector basis.
pub fn omega<F: RealScalar>(model: FiberModel, l: &InducedStructure<F>) -> Form<F> {
    let mu = l.as_quaternion();
    let mut f = Form::zero(model);
    // Block-diagonal: only same-block pairs pair nontrivially.
    for block in 0..model.quaternionic_dim() {
        for la in 0..4usize {
            for lb in (la + 1)..4usize {
                let va = dual_vector_d_coords::<F>(la);
                let vb = dual_vector_d_coords::<F>(lb);
                let c = metric_pair(&left_mult_apply(&mu, &va), &vb);
                if c.re.is_zero() && c.im.is_zero() {
                    continue;
                }
                let ga = model.global(block, la);
                let gb = model.global(block, lb);
                f = f.add(&Form::monomial(model, &[ga, gb], c));
            }
        }
    }
    f
}

impl<F: RealScalar> KahlerData<F> {
    pub fn new(model: FiberModel) -> Result<Self, AlgebraError> {
        let omega_i = omega(model, &InducedStructure::i());
        let omega_j = omega(model, &InducedStructure::j());
        let omega_k = omega(model, &InducedStructure::k());
        let nn = model.complex_dim();
        let mut pows = Vec::with_capacity(nn + 1);
        pows.push(Form::from_mask(model, 0, c_one()));
        for k in 1..=nn {
            let next = pows[k - 1].wedge(&omega_i)?;
            pows.push(next);
        }
        let mut fact = F::one();
        for k in 2..=nn {
            fact = fact * F::from_i64(k as i64);
        }
        let vol = pows[nn].scale(&Cx::new(F::one() / fact, F::zero()));
        let vol_coeff = vol.coeff(model.top_mask());
        Ok(KahlerData {
            model,
            omega_i,
            omega_j,
            omega_k,
            omega_i_pows: pows,
            vol,
            vol_coeff,
        })
    }

    pub fn model(&self) -> FiberModel {
        self.model
    }

    pub fn omega_i(&self) -> &Form<F> {
        &self.omega_i
    }

    pub fn omega_j(&self) -> &Form<F> {
        &self.omega_j
    }

    pub fn omega_k(&self) -> &Form<F> {
        &self.omega_k
    }

    pub fn omega_i_pow(&self, k: usize) -> &Form<F> {
        &self.omega_i_pows[k]
    }

    pub fn vol(&self) -> &Form<F> {
        &self.vol
    }

    /// Coefficient of Vol in a top-degree form.
    pub fn vol_component(&self, f: &Form<F>) -> Cx<F> {
        f.coeff(self.model.top_mask()) / self.vol_coeff.clone()
    }
}

/// Exact L-adapted basis data: V₀ maps the canonical basis onto a basis
/// w_k = V₀(z_k) of (1,0)_L covectors with ω_L = s⁻²·√−1 Σ w_k∧w̄_k, where
/// s² = |1 − i·μ_L|² is rational. `flip` marks that −L was used (for
/// structures with a ≤ −1/2, keeping the construction well-conditioned).
struct AdaptedBasis<F: RealScalar> {
    v0: CovAction<F>,
    v0_inv: CovAction<F>,
    s_sq: F,
    flip: bool,
}

fn adapted_basis<F: RealScalar>(
    model: FiberModel,
    l: &InducedStructure<F>,
) -> Result<AdaptedBasis<F>, AlgebraError> {
    let use_neg = l.a < -F::from_ratio(1, 2);
    let l_eff = if use_neg { l.neg() } else { l.clone() };
    // g₀ = 1 − i·μ with g₀ L g₀⁻¹ = I; w_k := z_k ∘ L_{g₀}.
    let g0 = Quaternion::<F>::one().add(&Quaternion::i().mul(&l_eff.as_quaternion()).neg());
    let s_sq = g0.norm_sq();
    debug_assert!(!s_sq.is_zero());
    let v0 = CovAction::scaled_pullback(model, &g0);
    let v0_inv = v0.inverse()?;
    Ok(AdaptedBasis {
        v0,
        v0_inv,
        s_sq,
        flip: use_neg,
    })
}

/// Hodge-type decomposition of a homogeneous form with respect to an
/// induced structure. Components are keyed by (p, q) and sum to the input.
pub fn hodge_type_decompose<F: RealScalar>(
    f: &Form<F>,
    l: &InducedStructure<F>,
) -> Result<BTreeMap<(usize, usize), Form<F>>, AlgebraError> {
    if f.is_zero() {
        return Ok(BTreeMap::new());
    }
    f.degree().ok_or(AlgebraError::NonHomogeneous)?;
    let ab = adapted_basis(f.model(), l)?;
    let transformed = f.apply(&ab.v0_inv);
    let mut out = BTreeMap::new();
    let nn = f.model().complex_dim();
    for p in 0..=nn {
        for q in 0..=nn {
            let comp = transformed.component_pq_i(p, q);
            if comp.is_zero() {
                continue;
            }
            let back = comp.apply(&ab.v0);
            let key = if ab.flip { (q, p) } else { (p, q) };
            out.insert(key, back);
        }
    }
    Ok(out)
}

/// Λ_L of a 2-form: the trace of the (1,1)_L coefficient matrix in an
/// L-adapted basis normalized so that ω_L = √−1 Σ w_k∧w̄_k. Exact in the
/// rational backend for rational structures.
///
/// Only the diagonal w_k∧w̄_k coefficients of the transformed form are
/// needed, and the basis change is block-uniform, so only same-block
/// monomials of η contribute; they are accumulated directly instead of
/// expanding the full substitution.
pub fn lambda2<F: RealScalar>(eta: &Form<F>, l: &InducedStructure<F>) -> Result<Cx<F>, AlgebraError> {
    eta.expect_degree(2)?;
    if eta.is_zero() {
        return Ok(c_zero());
    }
    let model = eta.model();
    let ab = adapted_basis(model, l)?;
    let v = ab.v0_inv.matrix();
    let mut tr = c_zero::<F>();
    for (mask, c) in eta.terms() {
        let a = mask.trailing_zeros() as usize;
        let b = (mask & (mask - 1)).trailing_zeros() as usize;
        let (block_a, la) = model.local(a);
        let (block_b, lb) = model.local(b);
        if block_a != block_b {
            continue;
        }
        // coefficient of w_k∧w̄_k in the image of e_a∧e_b (a < b), for the
        // two z-indices k of this block: local rows (t, t + 2).
        for t in 0..2usize {
            let coeff = v[(t, la)].clone() * v[(t + 2, lb)].clone()
                - v[(t + 2, la)].clone() * v[(t, lb)].clone();
            tr = tr + c.clone() * coeff;
        }
    }
    // η = √−1 Σ h_kl (w_k/s)∧(w̄_l/s) ⇒ h = −√−1 · s² · (w-basis coeffs).
    let lam = -c_i::<F>() * Cx::new(ab.s_sq, F::zero()) * tr;
    Ok(if ab.flip { -lam } else { lam })
}

/// The scalar λ with η ∧ ω_L^{N−1} = λ · Vol, computed by direct wedge;
/// independent of [`lambda2`] (contract: λ = (N−1)!·Λ_L η).
pub fn degree_integrand<F: RealScalar>(
    kd: &KahlerData<F>,
    eta: &Form<F>,
    l: &InducedStructure<F>,
    tol: f64,
) -> Result<F, AlgebraError> {
    eta.expect_degree(2)?;
    if !eta.is_real(tol) {
        return Err(AlgebraError::NotReal);
    }
    let nn = kd.model().complex_dim();
    let om = omega(kd.model(), l);
    let power = om.pow(nn - 1)?;
    let lam = kd.vol_component(&eta.wedge(&power)?);
    debug_assert!(lam.im.is_zero_tol(tol.max(1e-9)));
    Ok(lam.re)
}

/// Result of the E-form computation E := Ω_K^{n−1} ∧ Ω̄_K^n.
#[derive(Debug, Clone)]
pub struct EForm<F: RealScalar> {
    pub e: Form<F>,
    /// c_n with E^{(N−1,N−1)}_I = c_n⁻¹ ω_I^{N−1}; None when the
    /// proportionality fails (a verification failure, not an error).
    pub c_n: Option<F>,
    /// E^{(N−1,N−1)}_I − c_n⁻¹ ω_I^{N−1}; zero when proportionality holds.
    pub residual: Form<F>,
}

pub fn e_form<F: RealScalar>(kd: &KahlerData<F>, tol: f64) -> Result<EForm<F>, AlgebraError> {
    let n = kd.model().quaternionic_dim();
    let nn = kd.model().complex_dim();
    let omega_k_holo = kd.omega_i().add(&kd.omega_j().scale(&c_i::<F>()));
    let e = omega_k_holo.pow(n - 1)?.wedge(&omega_k_holo.conj().pow(n)?)?;
    let part = e.component_pq_i(nn - 1, nn - 1);
    let base = kd.omega_i_pow(nn - 1);
    // Candidate ratio from the first monomial of ω_I^{N−1}.
    let (mask, base_c) = base
        .terms()
        .next()
        .map(|(m, c)| (*m, c.clone()))
        .expect("omega power is nonzero");
    let c_inv = part.coeff(mask) / base_c;
    let residual = part.sub(&base.scale(&c_inv));
    let ok = residual.is_zero_tol(tol)
        && c_inv.im.is_zero_tol(tol)
        && c_inv.re > F::zero();
    let c_n = if ok { Some(F::one() / c_inv.re) } else { None };
    Ok(EForm { e, c_n, residual })
}

/// Extract the Hermitian matrix h with η = √−1 Σ h_kl z_k∧z̄_l.
/// Errors when η is not real or has components outside (1,1)_I.
pub fn hermitian_of_11<F: RealScalar>(eta: &Form<F>, tol: f64) -> Result<CMatrix<F>, AlgebraError> {
    let model = eta.model();
    if !eta.is_zero() {
        eta.expect_degree(2)?;
        if eta.bidegree_i() != Some((1, 1)) {
            return Err(AlgebraError::WrongHodgeType { expected: "(1,1)_I" });
        }
    }
    if !eta.is_real(tol) {
        return Err(AlgebraError::NotReal);
    }
    let nn = model.complex_dim();
    let h = CMatrix::from_fn(nn, nn, |k, l| {
        let mask = (1u32 << model.z(k)) | (1u32 << model.zbar(l));
        -c_i::<F>() * eta.coeff(mask)
    });
    debug_assert!(h.is_hermitian(tol.max(1e-9)));
    Ok(h)
}

/// Positivity of a real (1,1)_I form: PSD of its coefficient matrix.
pub fn is_positive_11<F: RealScalar>(eta: &Form<F>, tol: f64) -> Result<bool, AlgebraError> {
    let h = hermitian_of_11(eta, tol)?;
    is_psd(&h, tol)
}

/// The Hermitian matrix H of the quadratic form
/// Q(c) = [√−1 · ν ∧ z_c ∧ z̄_c]_Vol on an (N−1,N−1)_I form ν, recovered by
/// polarization over basis vectors and pairs (ν enters only through
/// black-box evaluations of Q).
pub fn codim1_hermitian<F: RealScalar>(
    kd: &KahlerData<F>,
    nu: &Form<F>,
    tol: f64,
) -> Result<CMatrix<F>, AlgebraError> {
    let model = kd.model();
    let nn = model.complex_dim();
    if !nu.is_zero() {
        nu.expect_degree(2 * nn - 2)?;
        if nu.bidegree_i() != Some((nn - 1, nn - 1)) {
            return Err(AlgebraError::WrongHodgeType {
                expected: "(N-1,N-1)_I",
            });
        }
    }
    if !nu.is_real(tol) {
        return Err(AlgebraError::NotReal);
    }
    let q_eval = |c: &[Cx<F>]| -> Cx<F> {
        let mut zc = Form::zero(model);
        for (k, ck) in c.iter().enumerate() {
            zc = zc.add(&Form::monomial(model, &[model.z(k)], ck.clone()));
        }
        let prod = nu
            .wedge(&zc)
            .and_then(|f| f.wedge(&zc.conj()))
            .expect("same model");
        kd.vol_component(&prod.scale(&c_i::<F>()))
    };
    let basis = |k: usize| -> Vec<Cx<F>> {
        let mut v = vec![c_zero::<F>(); nn];
        v[k] = c_one();
        v
    };
    let mut diag = Vec::with_capacity(nn);
    for k in 0..nn {
        diag.push(q_eval(&basis(k)));
    }
    let mut h = CMatrix::zero(nn, nn);
    for k in 0..nn {
        h[(k, k)] = diag[k].clone();
    }
    for i in 0..nn {
        for j in (i + 1)..nn {
            let mut eij = basis(i);
            eij[j] = c_one();
            let s = q_eval(&eij) - diag[i].clone() - diag[j].clone();
            let mut eiij = basis(i);
            eiij[j] = c_i();
            let t = q_eval(&eiij) - diag[i].clone() - diag[j].clone();
            let two = Cx::new(F::from_i64(2), F::zero());
            let hij = (s.clone() + c_i::<F>() * t.clone()) / two.clone();
            let hji = (s - c_i::<F>() * t) / two;
            h[(i, j)] = hij;
            h[(j, i)] = hji;
        }
    }
    Ok(h)
}

/// Positivity of a real (N−1,N−1)_I form via the polarized Hermitian form.
pub fn is_positive_codim1<F: RealScalar>(
    kd: &KahlerData<F>,
    nu: &Form<F>,
    tol: f64,
) -> Result<bool, AlgebraError> {
    let h = codim1_hermitian(kd, nu, tol)?;
    is_psd(&h, tol)
}

/// K-positivity of a (2,0)_K form ρ with I(ρ) = conj(ρ): positivity of
/// Re(ρ), which lies in Λ^{1,1}_I. Type failure and reality failure are
/// reported distinctly.
pub fn is_k_positive<F: RealScalar>(rho: &Form<F>, tol: f64) -> Result<bool, AlgebraError> {
    if rho.is_zero() {
        return Ok(true);
    }
    rho.expect_degree(2)?;
    let model = rho.model();
    let parts = hodge_type_decompose(rho, &InducedStructure::k())?;
    let k20 = parts
        .get(&(2, 0))
        .cloned()
        .unwrap_or_else(|| Form::zero(model));
    if !rho.sub(&k20).is_zero_tol(tol) {
        return Err(AlgebraError::WrongHodgeType { expected: "(2,0)_K" });
    }
    let i_rho = rho.apply(&CovAction::structure_i(model));
    if !i_rho.approx_eq(&rho.conj(), tol) {
        return Err(AlgebraError::RealityViolation {
            condition: "I(rho) = conj(rho)",
        });
    }
    let re = rho.add(&rho.conj()).scale(&c_real(F::from_ratio(1, 2)));
    debug_assert_eq!(re.bidegree_i(), Some((1, 1)));
    is_positive_11(&re, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::sample_rng;
    use crate::sample;
    use crate::scalar::c_from_i64;
    use num_rational::BigRational;
    use num_traits::Zero;

    type R = BigRational;

    fn md(n: usize) -> FiberModel {
        FiberModel::new(n).unwrap()
    }

    fn kd(n: usize) -> KahlerData<R> {
        KahlerData::new(md(n)).unwrap()
    }

    #[test]
    fn canonical_omegas() {
        let k = kd(2);
        let m = k.model();
        // ω_I = √−1 Σ z_k∧z̄_k
        let mut expect = Form::<R>::zero(m);
        for i in 0..m.complex_dim() {
            expect = expect.add(&Form::monomial(m, &[m.z(i), m.zbar(i)], c_i()));
        }
        assert_eq!(*k.omega_i(), expect);
        // ω_J = Σ_a (z_{2a−1}∧z_{2a} + conj)
        let mut ej = Form::<R>::zero(m);
        for a in 0..m.quaternionic_dim() {
            ej = ej.add(&Form::monomial(m, &[m.z(2 * a), m.z(2 * a + 1)], c_one()));
            ej = ej.add(&Form::monomial(
                m,
                &[m.zbar(2 * a), m.zbar(2 * a + 1)],
                c_one(),
            ));
        }
        assert_eq!(*k.omega_j(), ej);
        // ω_J + √−1 ω_K = 2 Σ_a z_{2a−1}∧z_{2a} (frozen normalization)
        let mut sym = Form::<R>::zero(m);
        for a in 0..m.quaternionic_dim() {
            sym = sym.add(&Form::monomial(
                m,
                &[m.z(2 * a), m.z(2 * a + 1)],
                c_from_i64(2, 0),
            ));
        }
        assert_eq!(k.omega_j().add(&k.omega_k().scale(&c_i::<R>())), sym);
        // each ω_L real
        for f in [k.omega_i(), k.omega_j(), k.omega_k()] {
            assert!(f.is_real(0.0));
        }
    }

    #[test]
    fn omega_examples() {
        let m = md(2);
        // ω_{−I} = −ω_I
        let oi = omega::<R>(m, &InducedStructure::i());
        let omi = omega::<R>(m, &InducedStructure::i().neg());
        assert_eq!(omi, oi.neg());
        // bilinearity in L on a rational sphere point
        let mut rng = sample_rng(3, 0);
        let l = crate::quat::random_structure::<R>(&mut rng);
        let ol = omega::<R>(m, &l);
        let k = kd(2);
        let lin = k
            .omega_i()
            .scale(&c_real(l.a.clone()))
            .add(&k.omega_j().scale(&c_real(l.b.clone())))
            .add(&k.omega_k().scale(&c_real(l.c.clone())));
        assert_eq!(ol, lin);
    }

    #[test]
    fn j_action_on_diagonal_monomial() {
        // J(z1∧z̄1) = −z2∧z̄2, the relation behind A_ii = −A_{i+1,i+1}.
        let m = md(2);
        let f: Form<R> = Form::monomial(m, &[m.z(0), m.zbar(0)], c_one());
        let j = CovAction::structure_j(m);
        let expect: Form<R> = Form::monomial(m, &[m.z(1), m.zbar(1)], -c_one::<R>());
        assert_eq!(f.apply(&j), expect);
    }

    #[test]
    fn lambda_examples() {
        for n in 1..=3 {
            let k = kd(n);
            let nn = k.model().complex_dim();
            // Λ_I(ω_I) = N
            assert_eq!(
                lambda2(k.omega_i(), &InducedStructure::i()).unwrap(),
                c_from_i64(nn as i64, 0)
            );
        }
        let k = kd(2);
        let m = k.model();
        // Λ_I(√−1(z1∧z̄1 − z2∧z̄2)) = 0
        let s: Form<R> = Form::monomial(m, &[m.z(0), m.zbar(0)], c_i())
            .add(&Form::monomial(m, &[m.z(1), m.zbar(1)], -c_i::<R>()));
        assert!(lambda2(&s, &InducedStructure::i()).unwrap().is_zero());
        // Λ respects scaling by t
        let t = c_from_i64::<R>(3, 0);
        assert_eq!(
            lambda2(&k.omega_i().scale(&t), &InducedStructure::i()).unwrap(),
            c_from_i64(3 * m.complex_dim() as i64, 0)
        );
    }

    #[test]
    fn degree_examples_and_consistency() {
        let k = kd(2);
        let m = k.model();
        let nn = m.complex_dim();
        let fact = |x: usize| -> i64 { (1..=x as i64).product() };
        // ω_I ∧ ω_I^{N−1} = N!·Vol
        assert_eq!(
            degree_integrand(&k, k.omega_i(), &InducedStructure::i(), 0.0).unwrap(),
            R::from_i64(fact(nn))
        );
        // √−1 z1∧z̄1 → (N−1)!
        let f: Form<R> = Form::monomial(m, &[m.z(0), m.zbar(0)], c_i());
        assert_eq!(
            degree_integrand(&k, &f, &InducedStructure::i(), 0.0).unwrap(),
            R::from_i64(fact(nn - 1))
        );
        // degree = (N−1)!·Λ for random real 2-forms and random L
        let mut rng = sample_rng(7, 0);
        for _ in 0..5 {
            let eta = sample::random_real_2form::<R>(m, &mut rng);
            let l = crate::quat::random_structure::<R>(&mut rng);
            let lhs = degree_integrand(&k, &eta, &l, 0.0).unwrap();
            let lam = lambda2(&eta, &l).unwrap();
            assert!(lam.im.is_zero());
            assert_eq!(lhs, R::from_i64(fact(nn - 1)) * lam.re);
        }
    }

    #[test]
    fn lambda_of_invariant_forms_vanishes_for_all_structures() {
        let k = kd(2);
        let mut rng = sample_rng(9, 0);
        for _ in 0..5 {
            let inv = sample::random_invariant_2form::<R>(k.model(), &mut rng);
            for _ in 0..6 {
                let l = crate::quat::random_structure::<R>(&mut rng);
                assert!(lambda2(&inv, &l).unwrap().is_zero());
            }
            // including the degree route
            assert!(degree_integrand(&k, &inv, &InducedStructure::j(), 0.0)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn hodge_decomposition_of_omega_under_k() {
        let k = kd(2);
        // ω_I = ½Ω_K + ½Ω̄_K with Ω_K = ω_I + √−1 ω_J; the (1,1)_K part is 0.
        let parts = hodge_type_decompose(k.omega_i(), &InducedStructure::k()).unwrap();
        let omega_k_holo = k.omega_i().add(&k.omega_j().scale(&c_i::<R>()));
        let half = c_real(R::from_ratio(1, 2));
        assert_eq!(parts.get(&(2, 0)).unwrap(), &omega_k_holo.scale(&half));
        assert_eq!(
            parts.get(&(0, 2)).unwrap(),
            &omega_k_holo.conj().scale(&half)
        );
        assert!(parts.get(&(1, 1)).is_none());
        // components sum to the input
        let sum = parts
            .values()
            .fold(Form::<R>::zero(k.model()), |acc, f| acc.add(f));
        assert_eq!(sum, *k.omega_i());
        // a Kähler form is (1,1) for its own structure
        let mut rng = sample_rng(11, 0);
        let l = crate::quat::random_structure::<R>(&mut rng);
        let ol = omega::<R>(k.model(), &l);
        let parts = hodge_type_decompose(&ol, &l).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts.get(&(1, 1)).unwrap(), &ol);
    }

    #[test]
    fn conj_intertwines_pq_components() {
        let m = md(2);
        let mut rng = sample_rng(13, 0);
        let l = crate::quat::random_structure::<R>(&mut rng);
        let f = sample::random_form::<R>(m, 2, &mut rng);
        let parts = hodge_type_decompose(&f, &l).unwrap();
        let cparts = hodge_type_decompose(&f.conj(), &l).unwrap();
        for ((p, q), comp) in &parts {
            assert_eq!(cparts.get(&(*q, *p)).unwrap(), &comp.conj());
        }
    }

    #[test]
    fn e_form_small_dims() {
        // n = 1: E = Ω̄_K = ω_I − √−1 ω_J, (1,1)_I part = ω_I, c₁ = 1.
        let k1 = kd(1);
        let e1 = e_form(&k1, 0.0).unwrap();
        let expect = k1.omega_i().sub(&k1.omega_j().scale(&c_i::<R>()));
        assert_eq!(e1.e, expect);
        assert_eq!(e1.c_n, Some(R::from_i64(1)));
        // n = 2: hand expansion gives c₂ = 3/4.
        let k2 = kd(2);
        let e2 = e_form(&k2, 0.0).unwrap();
        assert_eq!(e2.c_n, Some(R::from_ratio(3, 4)));
        // n = 3: hand expansion gives c₃ = 5/8.
        let k3 = kd(3);
        let e3 = e_form(&k3, 0.0).unwrap();
        assert_eq!(e3.c_n, Some(R::from_ratio(5, 8)));
    }

    #[test]
    fn e_form_kills_non_k20_parts() {
        // η^{2,0}_K ∧ E = η ∧ E for (1,1)_I forms η.
        let k = kd(2);
        let mut rng = sample_rng(17, 0);
        for _ in 0..5 {
            let eta = sample::random_real_11::<R>(k.model(), &mut rng);
            let e = e_form(&k, 0.0).unwrap().e;
            let parts = hodge_type_decompose(&eta, &InducedStructure::k()).unwrap();
            let k20 = parts
                .get(&(2, 0))
                .cloned()
                .unwrap_or_else(|| Form::zero(k.model()));
            assert_eq!(k20.wedge(&e).unwrap(), eta.wedge(&e).unwrap());
        }
    }

    #[test]
    fn positivity_11_examples() {
        let k = kd(2);
        let m = k.model();
        let f: Form<R> = Form::monomial(m, &[m.z(0), m.zbar(0)], c_i());
        assert!(is_positive_11(&f, 0.0).unwrap());
        assert!(is_positive_11(k.omega_i(), 0.0).unwrap());
        let s: Form<R> = Form::monomial(m, &[m.z(0), m.zbar(0)], c_i())
            .add(&Form::monomial(m, &[m.z(1), m.zbar(1)], -c_i::<R>()));
        assert!(!is_positive_11(&s, 0.0).unwrap());
        // error paths: non-real and wrong type reported distinctly
        let nonreal: Form<R> = Form::monomial(m, &[m.z(0), m.zbar(0)], c_one());
        assert!(matches!(
            is_positive_11(&nonreal, 0.0),
            Err(AlgebraError::NotReal)
        ));
        let wrong: Form<R> = Form::monomial(m, &[m.z(0), m.z(1)], c_one());
        assert!(matches!(
            is_positive_11(&wrong.add(&wrong.conj()), 0.0),
            Err(AlgebraError::WrongHodgeType { .. })
        ));
    }

    #[test]
    fn positivity_codim1_examples() {
        let k = kd(2);
        let nn = k.model().complex_dim();
        let pow = k.omega_i_pow(nn - 1);
        assert!(is_positive_codim1(&k, pow, 0.0).unwrap());
        assert!(!is_positive_codim1(&k, &pow.neg(), 0.0).unwrap());
    }

    #[test]
    fn k_positive_examples() {
        let k = kd(2);
        // ρ = ½ Ω_K is K-positive (Re ρ = ½ ω_I).
        let rho = k
            .omega_i()
            .add(&k.omega_j().scale(&c_i::<R>()))
            .scale(&c_real(R::from_ratio(1, 2)));
        assert!(is_k_positive(&rho, 0.0).unwrap());
        assert!(is_k_positive(&Form::<R>::zero(k.model()), 0.0).unwrap());
        // Reality failure reported distinctly from type failure.
        let bad = rho.scale(&c_i::<R>());
        assert!(matches!(
            is_k_positive(&bad, 0.0),
            Err(AlgebraError::RealityViolation { .. })
        ));
        let not_k20 = k.omega_i();
        assert!(matches!(
            is_k_positive(not_k20, 0.0),
            Err(AlgebraError::WrongHodgeType { .. })
        ));
    }

    #[test]
    fn float_backend_smoke() {
        let k = KahlerData::<f64>::new(md(2)).unwrap();
        let lam = lambda2(k.omega_i(), &InducedStructure::i()).unwrap();
        assert!((lam.re - 4.0).abs() < 1e-9 && lam.im.abs() < 1e-12);
        assert!(is_positive_11(k.omega_i(), 1e-9).unwrap());
        let e = e_form(&k, 1e-9).unwrap();
        assert!((e.c_n.unwrap() - 0.75).abs() < 1e-9);
    }
}
