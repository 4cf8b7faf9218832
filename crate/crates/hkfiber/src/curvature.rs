//! su(r)/u(r)-valued curvature algebra: generation of SU(2)-invariant
//! Yang–Mills curvatures, the ΛΘ endomorphism, the Chern–Weil 4-form
//! r₂, the B/C coefficient formulas, the pointwise Hodge–Riemann relation,
//! and second fundamental forms of sub-bundles.
//!
//! Curvatures are stored in the su-convention Θ = Σ z_k∧z̄_l ⊗ A_{kl} with
//! A_{lk} = −A_{kl}† (anti-Hermitian diagonal blocks). r₂ carries the sign
//! of the geometric (Hermitian-convention) curvature square,
//! r₂ = Tr((√−1 Θ)∧(√−1 Θ)) = −Σ Tr(A_{kl}A_{pq})·(monomials), which is the
//! normalization whose positivity the direct-wedge expansion certifies.

use crate::error::AlgebraError;
use crate::fiber::{CovAction, FiberModel};
use crate::form::Form;
use crate::kahler::{codim1_hermitian, KahlerData};
use crate::linalg::CMatrix;
use crate::scalar::{c_i, c_real, c_zero, cx_json, Cx, RealScalar};
use rand::Rng;
use serde_json::Value;
use std::collections::BTreeMap;

/// A form with r×r complex matrix coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleForm<F: RealScalar> {
    model: FiberModel,
    rank: usize,
    terms: BTreeMap<u32, CMatrix<F>>,
}

impl<F: RealScalar> BundleForm<F> {
    pub fn zero(model: FiberModel, rank: usize) -> Self {
        BundleForm {
            model,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn model(&self) -> FiberModel {
        self.model
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, mask: u32, m: CMatrix<F>) {
        if m.is_zero_tol(0.0) {
            return;
        }
        match self.terms.remove(&mask) {
            Some(old) => {
                let sum = old.add(&m);
                if !sum.is_zero_tol(0.0) {
                    self.terms.insert(mask, sum);
                }
            }
            None => {
                self.terms.insert(mask, m);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &CMatrix<F>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(*m, a.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BundleForm {
            model: self.model,
            rank: self.rank,
            terms: self.terms.iter().map(|(m, a)| (*m, a.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Cx<F>) -> Self {
        BundleForm {
            model: self.model,
            rank: self.rank,
            terms: self.terms.iter().map(|(m, a)| (*m, a.scale(s))).collect(),
        }
    }

    /// The coefficient matrix A_{kl} of z_k∧z̄_l (zero matrix if absent).
    pub fn a(&self, k: usize, l: usize) -> CMatrix<F> {
        let mask = (1u32 << self.model.z(k)) | (1u32 << self.model.zbar(l));
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| CMatrix::zero(self.rank, self.rank))
    }

    pub fn set_a(&mut self, k: usize, l: usize, m: CMatrix<F>) {
        let mask = (1u32 << self.model.z(k)) | (1u32 << self.model.zbar(l));
        self.terms.remove(&mask);
        self.add_term(mask, m);
    }

    /// Substitute covectors under a block-uniform action, coefficient-wise.
    pub fn apply(&self, action: &CovAction<F>) -> Self {
        let mut out = Self::zero(self.model, self.rank);
        for (mask, a) in &self.terms {
            let factors: Vec<usize> = (0..self.model.covector_count())
                .filter(|i| mask & (1 << i) != 0)
                .collect();
            let images: Vec<Vec<(usize, Cx<F>)>> =
                factors.iter().map(|&f| action.image(f)).collect();
            let mut stack: Vec<(usize, u32, Cx<F>)> =
                vec![(0, 0u32, crate::scalar::c_one::<F>())];
            while let Some((depth, m, coeff)) = stack.pop() {
                if depth == images.len() {
                    out.add_term(m, a.scale(&coeff));
                    continue;
                }
                for (idx, ic) in &images[depth] {
                    let bit = 1u32 << idx;
                    if m & bit != 0 {
                        continue;
                    }
                    let mut inv = 0u32;
                    let mut rest = bit;
                    while rest != 0 {
                        let b = rest.trailing_zeros();
                        rest &= rest - 1;
                        inv += (m >> (b + 1)).count_ones();
                    }
                    let c2 = coeff.clone() * ic.clone();
                    stack.push((depth + 1, m | bit, if inv % 2 == 0 { c2 } else { -c2 }));
                }
            }
        }
        out
    }

    /// ¼(Θ + IΘ + JΘ + KΘ) on the form part.
    pub fn invariant_projection(&self) -> Self {
        let i = self.apply(&CovAction::structure_i(self.model));
        let j = self.apply(&CovAction::structure_j(self.model));
        let k = self.apply(&CovAction::structure_k(self.model));
        self.add(&i)
            .add(&j)
            .add(&k)
            .scale(&c_real(F::from_ratio(1, 4)))
    }

    /// Entry-wise trace: the scalar form Tr Θ (a real 2-form in the
    /// su-convention).
    pub fn trace_form(&self) -> Form<F> {
        let mut f = Form::zero(self.model);
        for (mask, a) in &self.terms {
            f.add_term(*mask, a.trace());
        }
        f
    }

    /// The su-convention reality constraint A_{lk} = −A_{kl}†.
    pub fn reality_ok(&self, tol: f64) -> bool {
        let nn = self.model.complex_dim();
        for k in 0..nn {
            for l in k..nn {
                let alk = self.a(l, k);
                let expect = self.a(k, l).adjoint().neg();
                if !alk.approx_eq(&expect, tol) {
                    return false;
                }
            }
        }
        true
    }

    pub fn frobenius_sq(&self) -> F {
        let mut s = F::zero();
        for a in self.terms.values() {
            s = s + a.frobenius_sq();
        }
        s
    }

    /// Witness serialization: A matrices with exact coefficients.
    pub fn to_json(&self) -> Value {
        let nn = self.model.complex_dim();
        let mut mats = Vec::new();
        for k in 0..nn {
            for l in 0..nn {
                let a = self.a(k, l);
                if a.is_zero_tol(0.0) {
                    continue;
                }
                let rows: Vec<Value> = (0..self.rank)
                    .map(|r| {
                        Value::Array((0..self.rank).map(|c| cx_json(&a[(r, c)])).collect())
                    })
                    .collect();
                mats.push(serde_json::json!({"k": k, "l": l, "matrix": rows}));
            }
        }
        serde_json::json!({
            "n": self.model.quaternionic_dim(),
            "rank": self.rank,
            "a": mats,
        })
    }
}

pub const MAX_RANK: usize = 4;

/// Random SU(2)-invariant Yang–Mills curvature: random matrices with the
/// reality constraint enforced, invariant projection applied to the form
/// part, optional trace removal. ΛΘ = 0 and A_kk = −A_{k+1,k+1} then hold
/// as theorems and are asserted by the suites, not enforced here.
pub fn random_invariant_ym_curvature<F: RealScalar>(
    model: FiberModel,
    rank: usize,
    traceless: bool,
    rng: &mut impl Rng,
) -> Result<BundleForm<F>, AlgebraError> {
    if rank < 1 || rank > MAX_RANK {
        return Err(AlgebraError::SizeOutOfRange {
            what: format!("rank {rank} (supported 1..={MAX_RANK})"),
        });
    }
    let nn = model.complex_dim();
    let mut theta = BundleForm::zero(model, rank);
    let half = c_real(F::from_ratio(1, 2));
    for k in 0..nn {
        for l in k..nn {
            if k == l {
                let m = crate::sample::random_matrix(rank, rank, rng);
                theta.set_a(k, k, m.sub(&m.adjoint()).scale(&half));
            } else {
                let m = crate::sample::random_matrix::<F>(rank, rank, rng);
                theta.set_a(k, l, m.clone());
                theta.set_a(l, k, m.adjoint().neg());
            }
        }
    }
    let mut theta = theta.invariant_projection();
    if traceless {
        let r_inv = c_real(F::one() / F::from_i64(rank as i64));
        let masks: Vec<u32> = theta.terms.keys().copied().collect();
        for mask in masks {
            let a = theta.terms.get(&mask).cloned().unwrap();
            let tr = a.trace() * r_inv.clone();
            let adjusted = a.sub(&CMatrix::identity(rank).scale(&tr));
            theta.terms.remove(&mask);
            theta.add_term(mask, adjusted);
        }
    }
    Ok(theta)
}

/// ΛΘ as the endomorphism Σ_k A_{kk} (the Kähler trace up to a fixed
/// factor −√−1; the Yang–Mills condition is its vanishing).
pub fn lambda_endo<F: RealScalar>(theta: &BundleForm<F>) -> Result<CMatrix<F>, AlgebraError> {
    for (mask, _) in theta.terms() {
        if mask.count_ones() != 2 {
            return Err(AlgebraError::WrongDegree {
                expected: 2,
                got: mask.count_ones() as usize,
            });
        }
    }
    let nn = theta.model().complex_dim();
    let mut acc = CMatrix::zero(theta.rank(), theta.rank());
    for k in 0..nn {
        acc = acc.add(&theta.a(k, k));
    }
    Ok(acc)
}

/// r₂ = Tr(Θ_geom ∧ Θ_geom) = −Σ Tr(A_{kl} A_{pq}) z_k∧z̄_l∧z_p∧z̄_q;
/// real, SU(2)-invariant when Θ is.
pub fn r2<F: RealScalar>(theta: &BundleForm<F>) -> Form<F> {
    let mut out = Form::zero(theta.model());
    for (m1, a) in theta.terms() {
        for (m2, b) in theta.terms() {
            if m1 & m2 != 0 {
                continue;
            }
            let lhs = Form::from_mask(theta.model(), *m1, crate::scalar::c_one());
            let rhs = Form::from_mask(theta.model(), *m2, -a.mul(b).trace());
            out = out.add(&lhs.wedge(&rhs).expect("same model"));
        }
    }
    out
}

/// ‖Θ‖² = Σ Tr(A_{kl} A_{kl}†), a non-negative scalar.
pub fn theta_norm_sq<F: RealScalar>(theta: &BundleForm<F>) -> F {
    theta.frobenius_sq()
}

/// Direct expansion: the full Hermitian matrix of w-basis coefficients of
/// r₂ ∧ ω^{N−3}, normalized so that diagonal entries are the B_ii of the
/// positivity criterion (B_ij = [√−1·ν∧z_i∧z̄_j]_Vol).
pub fn b_direct<F: RealScalar>(
    kd: &KahlerData<F>,
    theta: &BundleForm<F>,
    tol: f64,
) -> Result<CMatrix<F>, AlgebraError> {
    let nn = kd.model().complex_dim();
    if nn < 3 {
        return Err(AlgebraError::SizeOutOfRange {
            what: format!("B coefficients need N >= 3, got N = {nn}"),
        });
    }
    let nu = r2(theta).wedge(kd.omega_i_pow(nn - 3))?;
    codim1_hermitian(kd, &nu, tol)
}

/// The closed-form diagonal coefficient
/// B_ii = (N−3)!·[−Σ Tr(A_{kl}A_{lk}) + Σ Tr(A_{kk}A_{ll})], both sums over
/// k ≠ l with k, l ≠ i; the mixed squares enter as the paired products
/// Tr(A_{kl}A_{lk}), which the reality constraint makes real.
pub fn b_formula_ii<F: RealScalar>(theta: &BundleForm<F>, i: usize) -> Result<F, AlgebraError> {
    let nn = theta.model().complex_dim();
    if nn < 3 {
        return Err(AlgebraError::SizeOutOfRange {
            what: format!("B coefficients need N >= 3, got N = {nn}"),
        });
    }
    if i >= nn {
        return Err(AlgebraError::IndexOutOfRange { index: i, range: nn });
    }
    let mut fact = F::one();
    for v in 2..=(nn - 3) as i64 {
        fact = fact * F::from_i64(v);
    }
    let mut first = c_zero::<F>();
    let mut second = c_zero::<F>();
    for k in 0..nn {
        for l in 0..nn {
            if k == l || k == i || l == i {
                continue;
            }
            first = first + theta.a(k, l).mul(&theta.a(l, k)).trace();
            second = second + theta.a(k, k).mul(&theta.a(l, l)).trace();
        }
    }
    let val = (second - first) * c_real(fact);
    debug_assert!(val.im.is_zero_tol(1e-9));
    Ok(val.re)
}

/// C_ii by its definition Σ_{k≠l, k,l≠i} Tr(A_{kk} A_{ll}).
pub fn c_ii_def<F: RealScalar>(theta: &BundleForm<F>, i: usize) -> Result<F, AlgebraError> {
    let nn = theta.model().complex_dim();
    if i >= nn {
        return Err(AlgebraError::IndexOutOfRange { index: i, range: nn });
    }
    let mut acc = c_zero::<F>();
    for k in 0..nn {
        for l in 0..nn {
            if k == l || k == i || l == i {
                continue;
            }
            acc = acc + theta.a(k, k).mul(&theta.a(l, l)).trace();
        }
    }
    debug_assert!(acc.im.is_zero_tol(1e-9));
    Ok(acc.re)
}

/// The Yang–Mills-only intermediate identity
/// C_ii = −Σ_k Tr(A_kk²) + 2 Tr(A_ii²); needs only Σ A_kk = 0.
pub fn c_ii_intermediate<F: RealScalar>(theta: &BundleForm<F>, i: usize) -> Result<F, AlgebraError> {
    let nn = theta.model().complex_dim();
    if i >= nn {
        return Err(AlgebraError::IndexOutOfRange { index: i, range: nn });
    }
    let mut acc = c_zero::<F>();
    for k in 0..nn {
        let akk = theta.a(k, k);
        acc = acc - akk.mul(&akk).trace();
    }
    let aii = theta.a(i, i);
    let two = c_real(F::from_i64(2));
    let val = acc + two * aii.mul(&aii).trace();
    debug_assert!(val.im.is_zero_tol(1e-9));
    Ok(val.re)
}

/// The invariant-case identity C_ii = −Σ_{k ∉ {i, partner(i)}} Tr(A_kk²);
/// the partner is the symplectic pair index (renumbering makes i odd and
/// the partner i+1).
pub fn c_ii_final<F: RealScalar>(theta: &BundleForm<F>, i: usize) -> Result<F, AlgebraError> {
    let nn = theta.model().complex_dim();
    if i >= nn {
        return Err(AlgebraError::IndexOutOfRange { index: i, range: nn });
    }
    let partner = theta.model().partner(i);
    let mut acc = c_zero::<F>();
    for k in 0..nn {
        if k == i || k == partner {
            continue;
        }
        let akk = theta.a(k, k);
        acc = acc - akk.mul(&akk).trace();
    }
    debug_assert!(acc.im.is_zero_tol(1e-9));
    Ok(acc.re)
}

/// Pointwise Hodge–Riemann ratio [r₂ ∧ ω^{N−2}]_Vol / ‖Θ‖². None for the
/// degenerate sample Θ = 0.
pub fn hodge_riemann_ratio<F: RealScalar>(
    kd: &KahlerData<F>,
    theta: &BundleForm<F>,
    tol: f64,
) -> Result<Option<F>, AlgebraError> {
    let norm = theta_norm_sq(theta);
    if norm.is_zero_tol(tol) {
        return Ok(None);
    }
    let nn = kd.model().complex_dim();
    let lhs = r2(theta).wedge(kd.omega_i_pow(nn - 2))?;
    let coeff = kd.vol_component(&lhs);
    debug_assert!(coeff.im.is_zero_tol(tol.max(1e-9)));
    Ok(Some(coeff.re / norm))
}

/// Second fundamental form of a sub-bundle: A = Σ_k z_k ⊗ A_k with A_k a
/// (quotient-rank × sub-rank) matrix; A^⊥ = Σ_k z̄_k ⊗ A_k†.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondForm<F: RealScalar> {
    pub model: FiberModel,
    pub sub_rank: usize,
    pub quot_rank: usize,
    pub mats: Vec<CMatrix<F>>,
}

impl<F: RealScalar> SecondForm<F> {
    pub fn new(
        model: FiberModel,
        sub_rank: usize,
        quot_rank: usize,
        mats: Vec<CMatrix<F>>,
    ) -> Result<Self, AlgebraError> {
        if mats.len() != model.complex_dim() {
            return Err(AlgebraError::ShapeMismatch {
                what: format!(
                    "need {} matrices, got {}",
                    model.complex_dim(),
                    mats.len()
                ),
            });
        }
        for m in &mats {
            if m.rows() != quot_rank || m.cols() != sub_rank {
                return Err(AlgebraError::ShapeMismatch {
                    what: format!(
                        "A_k must be {}x{}, got {}x{}",
                        quot_rank,
                        sub_rank,
                        m.rows(),
                        m.cols()
                    ),
                });
            }
        }
        Ok(SecondForm {
            model,
            sub_rank,
            quot_rank,
            mats,
        })
    }

    pub fn zero(model: FiberModel, sub_rank: usize, quot_rank: usize) -> Self {
        let mats = (0..model.complex_dim())
            .map(|_| CMatrix::zero(quot_rank, sub_rank))
            .collect();
        SecondForm {
            model,
            sub_rank,
            quot_rank,
            mats,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero_tol(0.0))
    }

    /// The real (1,1)-form √−1 Σ Tr(A_k A_l†) z_k∧z̄_l — the √−1-normalized
    /// Tr(A∧A^⊥); its coefficient matrix is a Gram matrix, hence PSD.
    pub fn gram_form(&self) -> Form<F> {
        let nn = self.model.complex_dim();
        let mut f = Form::zero(self.model);
        for k in 0..nn {
            for l in 0..nn {
                let tr = self.mats[k].mul(&self.mats[l].adjoint()).trace();
                let mask = (1u32 << self.model.z(k)) | (1u32 << self.model.zbar(l));
                f.add_term(mask, c_i::<F>() * tr);
            }
        }
        f
    }
}

/// Curvature of a sub-bundle: the sub-rank block of Θ minus the A∧A^⊥
/// term, Θ′ = Θ|_{F′} − √−1 Σ z_k∧z̄_l ⊗ (A_l† A_k). The √−1 keeps Θ′ in
/// the su-convention reality class; −Tr Θ′ = −Tr(Θ|_{F′}) + gram_form(A).
pub fn subbundle_curvature<F: RealScalar>(
    theta: &BundleForm<F>,
    a: &SecondForm<F>,
) -> Result<BundleForm<F>, AlgebraError> {
    if theta.rank() != a.sub_rank + a.quot_rank || theta.model() != a.model {
        return Err(AlgebraError::ShapeMismatch {
            what: format!(
                "curvature rank {} incompatible with block ranks {}+{}",
                theta.rank(),
                a.sub_rank,
                a.quot_rank
            ),
        });
    }
    let nn = theta.model().complex_dim();
    let rs = a.sub_rank;
    let mut out = BundleForm::zero(theta.model(), rs);
    for k in 0..nn {
        for l in 0..nn {
            let big = theta.a(k, l);
            let block = CMatrix::from_fn(rs, rs, |r, c| big[(r, c)].clone());
            let w = a.mats[l].adjoint().mul(&a.mats[k]);
            out.set_a(k, l, block.sub(&w.scale(&c_i::<F>())));
        }
    }
    Ok(out)
}

/// Chern–Weil integrands in the su-convention: the first Chern density
/// Tr Θ (equal to 2π·c₁ density) and the discriminant density
/// r₂ + (Tr Θ)²/r (equal to 4π²·D density; proportional to r₂ for
/// traceless curvature). The 2π normalizations are recorded by the
/// harness, never asserted.
pub fn chern_integrands<F: RealScalar>(
    theta: &BundleForm<F>,
) -> Result<(Form<F>, Form<F>), AlgebraError> {
    let c1 = theta.trace_form();
    let r_inv = c_real(F::one() / F::from_i64(theta.rank() as i64));
    let disc = r2(theta).add(&c1.wedge(&c1)?.scale(&r_inv));
    Ok((c1, disc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kahler::{degree_integrand, is_positive_11, is_positive_codim1};
    use crate::quat::InducedStructure;
    use crate::report::sample_rng;
    use crate::sample;
    use crate::scalar::c_one;
    use num_rational::BigRational;
    use num_traits::Zero;

    type R = BigRational;

    fn md(n: usize) -> FiberModel {
        FiberModel::new(n).unwrap()
    }

    #[test]
    fn su1_curvature_is_zero() {
        let mut rng = sample_rng(1, 0);
        let t = random_invariant_ym_curvature::<R>(md(2), 1, true, &mut rng).unwrap();
        assert!(t.is_zero());
        assert!(r2(&t).is_zero());
    }

    #[test]
    fn generator_contract() {
        let mut rng = sample_rng(2, 0);
        for (n, r) in [(2usize, 2usize), (3, 3)] {
            let t = random_invariant_ym_curvature::<R>(md(n), r, true, &mut rng).unwrap();
            assert!(t.reality_ok(0.0));
            assert!(lambda_endo(&t).unwrap().is_zero_tol(0.0));
            // form part invariance, entry-wise via the projector
            assert_eq!(t.invariant_projection(), t);
            // symplectic pairing of diagonal blocks
            let nn = 2 * n;
            for k in (0..nn).step_by(2) {
                assert!(t.a(k, k).approx_eq(&t.a(k + 1, k + 1).neg(), 0.0));
            }
            // componentwise traceless
            for (_, a) in t.terms() {
                assert!(a.trace().re.is_zero() && a.trace().im.is_zero());
            }
            // scaling linearity of the endomorphism
            let s = crate::scalar::c_from_i64::<R>(3, 0);
            assert!(lambda_endo(&t.scale(&s)).unwrap().is_zero_tol(0.0));
        }
    }

    #[test]
    fn rank_bounds_rejected() {
        let mut rng = sample_rng(3, 0);
        assert!(random_invariant_ym_curvature::<R>(md(2), 0, true, &mut rng).is_err());
        assert!(random_invariant_ym_curvature::<R>(md(2), 5, true, &mut rng).is_err());
    }

    #[test]
    fn r2_of_u1_curvature_is_minus_eta_wedge_eta() {
        // Θ := η with A = √−1 h (the reality-compatible embedding of a real
        // invariant form as a u(1) curvature); r2 = −η∧η.
        let m = md(2);
        let mut rng = sample_rng(4, 0);
        let eta = sample::random_invariant_2form::<R>(m, &mut rng);
        let h = crate::kahler::hermitian_of_11(&eta, 0.0).unwrap();
        let mut theta = BundleForm::<R>::zero(m, 1);
        for k in 0..m.complex_dim() {
            for l in 0..m.complex_dim() {
                theta.set_a(k, l, CMatrix::from_fn(1, 1, |_, _| c_i::<R>() * h[(k, l)].clone()));
            }
        }
        assert!(theta.reality_ok(0.0));
        let expect = eta.wedge(&eta).unwrap().neg();
        assert_eq!(r2(&theta), expect);
        assert!(r2(&theta).is_real(0.0));
        // invariant curvature gives invariant r2
        let mut rng2 = sample_rng(4, 1);
        assert!(crate::su2::is_invariant(&r2(&theta), 0.0, &mut rng2).unwrap());
    }

    #[test]
    fn hand_checked_rank1_samples() {
        // σ = √−1(z1∧z̄1 − z2∧z̄2) and τ = √−1(z1∧z̄2 + z2∧z̄1) as u(1)
        // curvatures in N = 4: both have B_44 = 2 by the closed formula and
        // by direct expansion, and Hodge–Riemann ratio 2.
        let m = md(2);
        let kd = KahlerData::<R>::new(m).unwrap();
        let build = |entries: &[(usize, usize, Cx<R>)]| {
            let mut t = BundleForm::<R>::zero(m, 1);
            for (k, l, c) in entries {
                t.set_a(*k, *l, CMatrix::from_fn(1, 1, |_, _| c.clone()));
            }
            t
        };
        let sigma = build(&[(0, 0, c_i()), (1, 1, -c_i::<R>())]);
        let tau = build(&[(0, 1, c_i()), (1, 0, c_i())]);
        for t in [&sigma, &tau] {
            assert!(t.reality_ok(0.0));
            assert!(lambda_endo(t).unwrap().is_zero_tol(0.0));
            let b = b_direct(&kd, t, 0.0).unwrap();
            for i in 0..4 {
                assert_eq!(b[(i, i)].re, b_formula_ii(t, i).unwrap());
                assert!(b[(i, i)].im.is_zero());
            }
            assert_eq!(b[(3, 3)].re, R::from_i64(2));
            let ratio = hodge_riemann_ratio(&kd, t, 0.0).unwrap().unwrap();
            assert_eq!(ratio, R::from_i64(2));
            // headline positivity
            let nu = r2(t).wedge(kd.omega_i_pow(2 * 2 - 3)).unwrap();
            assert!(is_positive_codim1(&kd, &nu, 0.0).unwrap());
        }
    }

    #[test]
    fn c_identities_on_invariant_samples() {
        let m = md(2);
        let mut rng = sample_rng(5, 0);
        let t = random_invariant_ym_curvature::<R>(m, 3, true, &mut rng).unwrap();
        for i in 0..m.complex_dim() {
            let by_def = c_ii_def(&t, i).unwrap();
            assert!(by_def >= R::from_i64(0));
            assert_eq!(by_def, c_ii_intermediate(&t, i).unwrap());
            assert_eq!(by_def, c_ii_final(&t, i).unwrap());
        }
        assert!(matches!(
            c_ii_def(&t, 99),
            Err(AlgebraError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn c_intermediate_holds_for_ym_but_not_invariant() {
        // Build a YM (Σ A_kk = 0) but non-invariant curvature: the
        // intermediate identity still holds; the final one need not.
        let m = md(2);
        let mut t = BundleForm::<R>::zero(m, 2);
        let mut rng = sample_rng(6, 0);
        let nn = m.complex_dim();
        let mut diag = Vec::new();
        for _ in 0..nn - 1 {
            let a = sample::random_matrix::<R>(2, 2, &mut rng);
            diag.push(a.sub(&a.adjoint()).scale(&c_real(R::from_ratio(1, 2))));
        }
        let last = diag
            .iter()
            .fold(CMatrix::<R>::zero(2, 2), |acc, m| acc.add(m))
            .neg();
        diag.push(last);
        for (k, a) in diag.into_iter().enumerate() {
            t.set_a(k, k, a);
        }
        assert!(t.reality_ok(0.0));
        assert!(lambda_endo(&t).unwrap().is_zero_tol(0.0));
        for i in 0..nn {
            assert_eq!(c_ii_def(&t, i).unwrap(), c_ii_intermediate(&t, i).unwrap());
        }
    }

    #[test]
    fn subbundle_identities() {
        let m = md(2);
        let mut rng = sample_rng(7, 0);
        let total_rank = 3;
        let (rs, rq) = (2usize, 1usize);
        let theta = random_invariant_ym_curvature::<R>(m, total_rank, false, &mut rng).unwrap();
        let mats: Vec<CMatrix<R>> = (0..m.complex_dim())
            .map(|_| sample::random_matrix(rq, rs, &mut rng))
            .collect();
        let a = SecondForm::new(m, rs, rq, mats).unwrap();

        // A = 0 keeps the block untouched.
        let zero_a = SecondForm::zero(m, rs, rq);
        let block_only = subbundle_curvature(&theta, &zero_a).unwrap();
        for k in 0..m.complex_dim() {
            for l in 0..m.complex_dim() {
                let big = theta.a(k, l);
                let expect = CMatrix::from_fn(rs, rs, |r, c| big[(r, c)].clone());
                assert!(block_only.a(k, l).approx_eq(&expect, 0.0));
            }
        }

        // Trace identity: Tr Θ′ + √−1·Tr(A∧A^⊥)-normalized = Tr Θ|F′.
        let tprime = subbundle_curvature(&theta, &a).unwrap();
        assert!(tprime.reality_ok(0.0));
        let gram = a.gram_form();
        assert_eq!(
            tprime.trace_form().add(&gram),
            block_only.trace_form()
        );

        // Positivity of the Gram form.
        assert!(is_positive_11(&gram, 0.0).unwrap());

        // Θ = 0: −Tr Θ′ equals the Gram form.
        let zero_theta = BundleForm::<R>::zero(m, total_rank);
        let t0 = subbundle_curvature(&zero_theta, &a).unwrap();
        assert_eq!(t0.trace_form().neg(), gram);

        // Degree integrand of −Tr Θ′ is ≥ 0, equality iff A = 0.
        let kd = KahlerData::<R>::new(m).unwrap();
        let d = degree_integrand(&kd, &tprime.trace_form().neg(), &InducedStructure::i(), 0.0)
            .unwrap();
        assert!(d > R::from_i64(0));
        let d0 = degree_integrand(
            &kd,
            &block_only.trace_form().neg(),
            &InducedStructure::i(),
            0.0,
        )
        .unwrap();
        assert!(d0.is_zero());

        // shape mismatch rejected
        let bad = SecondForm::zero(m, rs, rq + 1);
        assert!(subbundle_curvature(&theta, &bad).is_err());
    }

    #[test]
    fn chern_integrand_properties() {
        let m = md(2);
        let kd = KahlerData::<R>::new(m).unwrap();
        let mut rng = sample_rng(8, 0);
        // traceless -> c1 density = 0
        let t = random_invariant_ym_curvature::<R>(m, 2, true, &mut rng).unwrap();
        let (c1, disc) = chern_integrands(&t).unwrap();
        assert!(c1.is_zero());
        assert_eq!(disc, r2(&t));
        // with trace: c1 invariant, degree 0 for any L
        let t2 = random_invariant_ym_curvature::<R>(m, 2, false, &mut rng).unwrap();
        let (c1, disc) = chern_integrands(&t2).unwrap();
        let mut rng2 = sample_rng(8, 1);
        assert!(crate::su2::is_invariant(&c1, 0.0, &mut rng2).unwrap());
        let l = crate::quat::random_structure::<R>(&mut rng);
        assert!(degree_integrand(&kd, &c1, &l, 0.0).unwrap().is_zero());
        // invariant 4-form pairing is L-independent
        let nn = m.complex_dim();
        let with_i = kd.vol_component(&disc.wedge(kd.omega_i_pow(nn - 2)).unwrap());
        let oj_pow = kd.omega_j().pow(nn - 2).unwrap();
        let with_j = kd.vol_component(&disc.wedge(&oj_pow).unwrap());
        assert_eq!(with_i, with_j);
    }

    #[test]
    fn bundle_json_has_expected_shape() {
        let m = md(2);
        let mut rng = sample_rng(9, 0);
        let t = random_invariant_ym_curvature::<R>(m, 2, true, &mut rng).unwrap();
        let j = t.to_json();
        assert_eq!(j["rank"], 2);
        assert!(j["a"].as_array().map_or(false, |v| !v.is_empty()));
    }

    #[test]
    fn lambda_endo_single_term() {
        let m = md(2);
        let mut t = BundleForm::<R>::zero(m, 2);
        let a = CMatrix::from_fn(2, 2, |r, c| {
            if r == c {
                c_i::<R>()
            } else {
                crate::scalar::c_zero()
            }
        });
        t.set_a(0, 0, a.clone());
        assert!(t.reality_ok(0.0));
        assert!(lambda_endo(&t).unwrap().approx_eq(&a, 0.0));
        // single-term curvature squares to zero
        assert!(r2(&t).is_zero());
        let _ = c_one::<R>();
    }
}
