//! The flat model fiber ℍⁿ and linear actions on its complexified
//! cotangent space.
//!
//! Real model: ℍⁿ with coordinates (x_a, u_a, v_a, w_a) per quaternionic
//! block and I, J, K acting by left multiplication by i, j, k. Complex
//! covector basis z_1..z_N, z̄_1..z̄_N (N = 2n) with
//!
//!   z_{2a−1} = dx_a + √−1 du_a,   z_{2a} = dv_a + √−1 dw_a,
//!
//! frozen so that I(z_k) = √−1 z_k, J(z_{2a−1}) = −z̄_{2a},
//! J(z_{2a}) = z̄_{2a−1} and the K action is the composite "apply I, then J"
//! (transposition reverses operator order, and this is the reading under
//! which ω_I + √−1 ω_J has type (2,0) with respect to K).
//!
//! All actions are block-uniform: one 4×4 complex matrix per quaternionic
//! coordinate, in the local basis (z_{2a−1}, z_{2a}, z̄_{2a−1}, z̄_{2a}).

use crate::error::AlgebraError;
use crate::linalg::CMatrix;
use crate::quat::{InducedStructure, Quaternion};
use crate::scalar::{c_i, c_one, c_zero, Cx, RealScalar};

pub const MAX_QUAT_DIM: usize = 3;

/// Model fiber descriptor. `Copy`, compared for the "same model"
/// preconditions. The fault flag flips one sign in the J dictionary for
/// mutation self-tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberModel {
    n: u8,
    j_fault: bool,
}

impl FiberModel {
    pub fn new(n: usize) -> Result<Self, AlgebraError> {
        if n < 1 || n > MAX_QUAT_DIM {
            return Err(AlgebraError::SizeOutOfRange {
                what: format!("quaternionic dimension {n} (supported 1..={MAX_QUAT_DIM})"),
            });
        }
        Ok(FiberModel {
            n: n as u8,
            j_fault: false,
        })
    }

    /// Model with the J(z_{2a−1}) sign negated; used only by the
    /// fault-injection self-test.
    pub fn with_j_fault(n: usize) -> Result<Self, AlgebraError> {
        let mut m = Self::new(n)?;
        m.j_fault = true;
        Ok(m)
    }

    pub fn quaternionic_dim(&self) -> usize {
        self.n as usize
    }

    /// N = 2n, the complex dimension with respect to I.
    pub fn complex_dim(&self) -> usize {
        2 * self.n as usize
    }

    /// Number of covector basis elements, 2N.
    pub fn covector_count(&self) -> usize {
        4 * self.n as usize
    }

    pub fn is_faulted(&self) -> bool {
        self.j_fault
    }

    /// Symplectic partner of the z-index k (0-based): 2a ↔ 2a+1.
    pub fn partner(&self, k: usize) -> usize {
        k ^ 1
    }

    /// Global covector index of z_{k+1}, k in 0..N.
    pub fn z(&self, k: usize) -> usize {
        debug_assert!(k < self.complex_dim());
        k
    }

    /// Global covector index of z̄_{k+1}, k in 0..N.
    pub fn zbar(&self, k: usize) -> usize {
        debug_assert!(k < self.complex_dim());
        self.complex_dim() + k
    }

    pub fn is_zbar(&self, g: usize) -> bool {
        g >= self.complex_dim()
    }

    /// (block, local) of a global covector index; local basis order is
    /// (z_even, z_odd, z̄_even, z̄_odd).
    pub fn local(&self, g: usize) -> (usize, usize) {
        let nn = self.complex_dim();
        let (k, bar) = if g < nn { (g, 0) } else { (g - nn, 2) };
        (k / 2, (k % 2) + bar)
    }

    pub fn global(&self, block: usize, local: usize) -> usize {
        let k = 2 * block + (local % 2);
        if local >= 2 {
            self.zbar(k)
        } else {
            self.z(k)
        }
    }

    /// Bitmask covering the full top degree.
    pub fn top_mask(&self) -> u32 {
        (1u32 << self.covector_count()) - 1
    }
}

/// Left multiplication by q = w + xi + yj + zk on ℍ ≅ ℝ⁴ in the basis
/// (1, i, j, k); columns are images of the basis vectors.
fn left_mult_matrix<F: RealScalar>(q: &Quaternion<F>) -> [[F; 4]; 4] {
    let (w, x, y, z) = (q.w.clone(), q.x.clone(), q.y.clone(), q.z.clone());
    [
        [w.clone(), -x.clone(), -y.clone(), -z.clone()],
        [x.clone(), w.clone(), -z.clone(), y.clone()],
        [y.clone(), z.clone(), w.clone(), -x.clone()],
        [z, -y, x, w],
    ]
}

/// A block-uniform linear action on covectors: one 4×4 complex matrix in
/// the local basis, applied identically to every quaternionic block.
/// Columns are images of the local basis covectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CovAction<F: RealScalar> {
    model: FiberModel,
    m: CMatrix<F>,
}

impl<F: RealScalar> CovAction<F> {
    pub fn model(&self) -> FiberModel {
        self.model
    }

    pub fn matrix(&self) -> &CMatrix<F> {
        &self.m
    }

    pub fn identity(model: FiberModel) -> Self {
        CovAction {
            model,
            m: CMatrix::identity(4),
        }
    }

    /// Dictionary action of I: z ↦ √−1 z, z̄ ↦ −√−1 z̄.
    pub fn structure_i(model: FiberModel) -> Self {
        let mut m = CMatrix::zero(4, 4);
        m[(0, 0)] = c_i();
        m[(1, 1)] = c_i();
        m[(2, 2)] = -c_i::<F>();
        m[(3, 3)] = -c_i::<F>();
        CovAction { model, m }
    }

    /// Dictionary action of J. The fault flag negates the single entry
    /// J(z_{2a−1}) = −z̄_{2a}.
    pub fn structure_j(model: FiberModel) -> Self {
        let mut m = CMatrix::zero(4, 4);
        let s = if model.j_fault { c_one::<F>() } else { -c_one::<F>() };
        m[(3, 0)] = s; // J(z_even) = ∓ z̄_odd
        m[(2, 1)] = c_one(); // J(z_odd) = z̄_even
        m[(1, 2)] = -c_one::<F>(); // J(z̄_even) = −z_odd
        m[(0, 3)] = c_one(); // J(z̄_odd) = z_even
        CovAction { model, m }
    }

    /// Action of K as covector maps: apply I first, then J.
    pub fn structure_k(model: FiberModel) -> Self {
        Self::structure_j(model).compose(&Self::structure_i(model))
    }

    /// Action of a general induced structure aI + bJ + cK (transposes are
    /// linear in the operator).
    pub fn structure(model: FiberModel, l: &InducedStructure<F>) -> Self {
        let mi = Self::structure_i(model).m;
        let mj = Self::structure_j(model).m;
        let mk = Self::structure_k(model).m;
        let ca = Cx::new(l.a.clone(), F::zero());
        let cb = Cx::new(l.b.clone(), F::zero());
        let cc = Cx::new(l.c.clone(), F::zero());
        CovAction {
            model,
            m: mi.scale(&ca).add(&mj.scale(&cb)).add(&mk.scale(&cc)),
        }
    }

    /// The pure transpose α ↦ α∘L_q of left multiplication by an arbitrary
    /// quaternion q, in z-coordinates. For a unit quaternion g the SU(2)
    /// action on covectors is `scaled_pullback(ḡ)`; for non-unit rational q
    /// the overall scale |q| is carried along (harmless wherever only the
    /// subspace structure matters).
    pub fn scaled_pullback(model: FiberModel, q: &Quaternion<F>) -> Self {
        let lm = left_mult_matrix(q);
        let mut cols: Vec<[Cx<F>; 4]> = Vec::with_capacity(4);
        for local in 0..4 {
            // Local covector -> d-coordinates a (complex 4-vector).
            let c = |idx: usize| -> Cx<F> {
                if idx == local {
                    c_one()
                } else {
                    c_zero()
                }
            };
            // a1 = c0 + c2; a2 = i(c0 − c2); a3 = c1 + c3; a4 = i(c1 − c3)
            let i = c_i::<F>();
            let a = [
                c(0) + c(2),
                i.clone() * (c(0) - c(2)),
                c(1) + c(3),
                i.clone() * (c(1) - c(3)),
            ];
            // a' = (M_q)^T a
            let mut ap = [c_zero::<F>(), c_zero(), c_zero(), c_zero()];
            for r in 0..4 {
                let mut acc = c_zero::<F>();
                for s in 0..4 {
                    // (M^T)_{rs} = M_{sr}
                    acc = acc + Cx::new(lm[s][r].clone(), F::zero()) * a[s].clone();
                }
                ap[r] = acc;
            }
            // Back to z-coordinates.
            let half = Cx::new(F::from_ratio(1, 2), F::zero());
            let ih = c_i::<F>() * half.clone();
            let col = [
                half.clone() * ap[0].clone() - ih.clone() * ap[1].clone(),
                half.clone() * ap[2].clone() - ih.clone() * ap[3].clone(),
                half.clone() * ap[0].clone() + ih.clone() * ap[1].clone(),
                half * ap[2].clone() + ih * ap[3].clone(),
            ];
            cols.push(col);
        }
        let m = CMatrix::from_fn(4, 4, |r, c| cols[c][r].clone());
        CovAction { model, m }
    }

    /// SU(2) action of a unit quaternion g on covectors: α ↦ α∘L_{g⁻¹}.
    pub fn group(model: FiberModel, g: &crate::quat::UnitQuaternion<F>) -> Self {
        Self::scaled_pullback(model, &g.quaternion().conj())
    }

    /// The linear swap z_k ↔ z̄_k (no coefficient conjugation).
    pub fn bar_swap(model: FiberModel) -> Self {
        let mut m = CMatrix::zero(4, 4);
        m[(2, 0)] = c_one();
        m[(3, 1)] = c_one();
        m[(0, 2)] = c_one();
        m[(1, 3)] = c_one();
        CovAction { model, m }
    }

    /// (self ∘ inner)(α) = self(inner(α)).
    pub fn compose(&self, inner: &Self) -> Self {
        debug_assert_eq!(self.model, inner.model);
        CovAction {
            model: self.model,
            m: self.m.mul(&inner.m),
        }
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        Ok(CovAction {
            model: self.model,
            m: self.m.inverse()?,
        })
    }

    pub fn scale(&self, s: &Cx<F>) -> Self {
        CovAction {
            model: self.model,
            m: self.m.scale(s),
        }
    }

    /// Image of a global covector index as (global index, coefficient)
    /// pairs; at most four entries, all within the same block.
    pub fn image(&self, g: usize) -> Vec<(usize, Cx<F>)> {
        let (block, local) = self.model.local(g);
        let mut out = Vec::with_capacity(4);
        for r in 0..4 {
            let c = self.m[(r, local)].clone();
            if !(c.re.is_zero() && c.im.is_zero()) {
                out.push((self.model.global(block, r), c));
            }
        }
        out
    }

    /// Determinant of the full 2N×2N action (block determinant to the n-th
    /// power); multiplies top-degree forms.
    pub fn full_det(&self) -> Cx<F> {
        let bd = self.m.det();
        let mut d = c_one::<F>();
        for _ in 0..self.model.quaternionic_dim() {
            d = d * bd.clone();
        }
        d
    }
}

/// Tangent-side J action on the dual basis (Z_1..Z_N, Z̄_1..Z̄_N):
/// J Z_{2a−1} = Z̄_{2a}, J Z_{2a} = −Z̄_{2a−1} and conjugates. Applied to a
/// coefficient vector over the dual basis. Derived from the real model; not
/// subject to fault injection.
pub fn j_vector_action<F: RealScalar>(model: &FiberModel, v: &[Cx<F>]) -> Vec<Cx<F>> {
    let nn = model.complex_dim();
    let mut out = vec![c_zero::<F>(); 2 * nn];
    for k in 0..nn {
        let p = model.partner(k);
        // Z_k contributes to the image J Z_k = ± Z̄_p
        let sz = if k % 2 == 0 { c_one::<F>() } else { -c_one::<F>() };
        out[nn + p] = out[nn + p].clone() + sz * v[k].clone();
        // Z̄_k ↦ ± Z_p
        let sb = if k % 2 == 0 { c_one::<F>() } else { -c_one::<F>() };
        out[p] = out[p].clone() + sb * v[nn + k].clone();
    }
    out
}
