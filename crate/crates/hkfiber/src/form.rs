//! Sparse complex-coefficient elements of the exterior algebra on the
//! complexified cotangent fiber.
//!
//! Monomials are bitmasks over the canonical covector order
//! z_1 < … < z_N < z̄_1 < … < z̄_N; coefficients live in the complexified
//! scalar backend. No explicit zeros are stored.

use crate::error::AlgebraError;
use crate::fiber::{CovAction, FiberModel};
use crate::scalar::{c_zero, cx_close, cx_from_json, cx_is_zero_tol, cx_json, Cx, RealScalar};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct Form<F: RealScalar> {
    model: FiberModel,
    terms: BTreeMap<u32, Cx<F>>,
}

/// Parity sign from merging two sorted index sets: (−1)^inversions.
fn merge_sign(m1: u32, m2: u32) -> i8 {
    let mut inversions = 0u32;
    let mut rest = m2;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        // elements of m1 strictly above b
        inversions += (m1 >> (b + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<F: RealScalar> Form<F> {
    pub fn zero(model: FiberModel) -> Self {
        Form {
            model,
            terms: BTreeMap::new(),
        }
    }

    pub fn model(&self) -> FiberModel {
        self.model
    }

    /// Single monomial from unsorted distinct covector indices, with the
    /// sign induced by sorting. Repeated indices give zero.
    pub fn monomial(model: FiberModel, indices: &[usize], coeff: Cx<F>) -> Self {
        let mut mask = 0u32;
        let mut sign = 1i8;
        for &idx in indices {
            debug_assert!(idx < model.covector_count());
            let bit = 1u32 << idx;
            if mask & bit != 0 {
                return Self::zero(model);
            }
            // inversions against already-placed higher indices
            sign *= merge_sign(mask, bit);
            mask |= bit;
        }
        let mut f = Self::zero(model);
        f.add_term(
            mask,
            if sign > 0 { coeff } else { -coeff },
        );
        f
    }

    pub fn from_mask(model: FiberModel, mask: u32, coeff: Cx<F>) -> Self {
        let mut f = Self::zero(model);
        f.add_term(mask, coeff);
        f
    }

    pub fn add_term(&mut self, mask: u32, coeff: Cx<F>) {
        if coeff.re.is_zero() && coeff.im.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(c_zero);
        *entry = entry.clone() + coeff;
        if entry.re.is_zero() && entry.im.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Cx<F>)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: u32) -> Cx<F> {
        self.terms.get(&mask).cloned().unwrap_or_else(c_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.model, other.model);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Form {
            model: self.model,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Cx<F>) -> Self {
        if s.re.is_zero() && s.im.is_zero() {
            return Self::zero(self.model);
        }
        Form {
            model: self.model,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.terms.values().all(|c| cx_is_zero_tol(c, tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if F::EXACT {
            return self == other;
        }
        let mut masks: Vec<u32> = self.terms.keys().copied().collect();
        masks.extend(other.terms.keys());
        masks.sort_unstable();
        masks.dedup();
        masks
            .into_iter()
            .all(|m| cx_close(&self.coeff(m), &other.coeff(m), tol))
    }

    /// Uniform degree, or None for zero / mixed-degree forms.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let first = it.next()?.count_ones();
        for m in it {
            if m.count_ones() != first {
                return None;
            }
        }
        Some(first as usize)
    }

    pub fn expect_degree(&self, d: usize) -> Result<(), AlgebraError> {
        match self.degree() {
            None if self.is_zero() => Ok(()),
            None => Err(AlgebraError::NonHomogeneous),
            Some(got) if got == d => Ok(()),
            Some(got) => Err(AlgebraError::WrongDegree { expected: d, got }),
        }
    }

    /// Bidegree with respect to I, if uniform: (number of z's, number of z̄'s).
    pub fn bidegree_i(&self) -> Option<(usize, usize)> {
        let nn = self.model.complex_dim();
        let lo = (1u32 << nn) - 1;
        let mut it = self.terms.iter();
        let (m, _) = it.next()?;
        let pq = ((m & lo).count_ones() as usize, (m >> nn).count_ones() as usize);
        for (m, _) in it {
            let here = ((m & lo).count_ones() as usize, (m >> nn).count_ones() as usize);
            if here != pq {
                return None;
            }
        }
        Some(pq)
    }

    /// The (p,q)_I component (bidegree filter in the canonical basis).
    pub fn component_pq_i(&self, p: usize, q: usize) -> Self {
        let nn = self.model.complex_dim();
        let lo = (1u32 << nn) - 1;
        Form {
            model: self.model,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| {
                    (*m & lo).count_ones() as usize == p && (*m >> nn).count_ones() as usize == q
                })
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.model != other.model {
            return Err(AlgebraError::ModelMismatch);
        }
        let mut out = Self::zero(self.model);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let s = merge_sign(*m1, *m2);
                let prod = c1.clone() * c2.clone();
                out.add_term(m1 | m2, if s > 0 { prod } else { -prod });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Self, AlgebraError> {
        let mut out = Self::from_mask(self.model, 0, crate::scalar::c_one());
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Complex conjugate: z_k ↔ z̄_k in indices, conjugated coefficients,
    /// with the (−1)^{pq} sign from re-sorting.
    pub fn conj(&self) -> Self {
        let nn = self.model.complex_dim();
        let lo = (1u32 << nn) - 1;
        let mut out = Self::zero(self.model);
        for (m, c) in &self.terms {
            let zpart = m & lo;
            let bpart = m >> nn;
            let new_mask = (zpart << nn) | bpart;
            let p = zpart.count_ones();
            let q = bpart.count_ones();
            let coeff = c.conj();
            out.add_term(
                new_mask,
                if (p * q) % 2 == 0 { coeff } else { -coeff },
            );
        }
        out
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.conj().approx_eq(self, tol)
    }

    /// Substitute every covector by its image under a block-uniform linear
    /// action, expanding multiplicatively.
    pub fn apply(&self, action: &CovAction<F>) -> Self {
        debug_assert_eq!(self.model, action.model());
        let mut out = Self::zero(self.model);
        // Top-degree fast path: multiplication by the determinant.
        let top = self.model.top_mask();
        for (m, c) in &self.terms {
            if *m == top {
                out.add_term(top, c.clone() * action.full_det());
                continue;
            }
            let factors: Vec<usize> = (0..self.model.covector_count())
                .filter(|i| m & (1 << i) != 0)
                .collect();
            let images: Vec<Vec<(usize, Cx<F>)>> =
                factors.iter().map(|&f| action.image(f)).collect();
            // DFS expansion with collision pruning.
            let mut stack: Vec<(usize, u32, Cx<F>)> = vec![(0, 0u32, c.clone())];
            while let Some((depth, mask, coeff)) = stack.pop() {
                if depth == images.len() {
                    out.add_term(mask, coeff);
                    continue;
                }
                for (idx, ic) in &images[depth] {
                    let bit = 1u32 << idx;
                    if mask & bit != 0 {
                        continue;
                    }
                    let s = merge_sign(mask, bit);
                    let c2 = coeff.clone() * ic.clone();
                    stack.push((depth + 1, mask | bit, if s > 0 { c2 } else { -c2 }));
                }
            }
        }
        out
    }

    /// Multiplicative action of an induced structure on this form (the
    /// extension of its transpose action on covectors).
    pub fn structure_action(&self, l: &crate::quat::InducedStructure<F>) -> Self {
        self.apply(&CovAction::structure(self.model, l))
    }

    /// Multiplicative SU(2) action of a unit quaternion: the pullback of
    /// left multiplication by g⁻¹ on the real model.
    pub fn su2_action(&self, g: &crate::quat::UnitQuaternion<F>) -> Self {
        self.apply(&CovAction::group(self.model, g))
    }

    /// Evaluate a 2-form on two tangent vectors given as coefficient
    /// vectors over the dual basis (Z_1..Z_N, Z̄_1..Z̄_N).
    pub fn eval2(&self, v: &[Cx<F>], w: &[Cx<F>]) -> Result<Cx<F>, AlgebraError> {
        self.expect_degree(2)?;
        let mut acc = c_zero::<F>();
        for (m, c) in &self.terms {
            let a = m.trailing_zeros() as usize;
            let rest = m & (m - 1);
            let b = rest.trailing_zeros() as usize;
            // a < b by construction
            let pair = v[a].clone() * w[b].clone() - v[b].clone() * w[a].clone();
            acc = acc + c.clone() * pair;
        }
        Ok(acc)
    }

    /// Canonical JSON: `[[indices...], re, im]` triples in mask order;
    /// bit-exact in the rational backend.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let idx: Vec<Value> = (0..self.model.covector_count())
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| Value::from(i))
                    .collect();
                let cj = cx_json(c);
                Value::Array(vec![Value::Array(idx), cj[0].clone(), cj[1].clone()])
            })
            .collect();
        serde_json::json!({
            "n": self.model.quaternionic_dim(),
            "terms": terms,
        })
    }

    pub fn from_json(model: FiberModel, v: &Value) -> Option<Self> {
        let n = v.get("n")?.as_u64()? as usize;
        if n != model.quaternionic_dim() {
            return None;
        }
        let mut f = Self::zero(model);
        for t in v.get("terms")?.as_array()? {
            let arr = t.as_array()?;
            if arr.len() != 3 {
                return None;
            }
            let mut mask = 0u32;
            for i in arr[0].as_array()? {
                mask |= 1u32 << i.as_u64()?;
            }
            let c = cx_from_json::<F>(&Value::Array(vec![arr[1].clone(), arr[2].clone()]))?;
            f.add_term(mask, c);
        }
        Some(f)
    }
}
