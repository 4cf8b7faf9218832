//! Dense complex matrices over the scalar backend, sized for fibers
//! (at most 8×8 here). Provides the PSD decisions used by the positivity
//! predicates: all principal minors in exact mode, Jacobi eigenvalues of the
//! real symmetric embedding in float mode.

use crate::error::AlgebraError;
use crate::scalar::{c_zero, cx_close, cx_is_zero_tol, Cx, RealScalar};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<F: RealScalar> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<F>>,
}

impl<F: RealScalar> CMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![c_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Cx::new(F::one(), F::zero());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cx<F>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map(&self, mut f: impl FnMut(&Cx<F>) -> Cx<F>) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| f(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn scale(&self, s: &Cx<F>) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.re.is_zero() && a.im.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn conj_entries(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn trace(&self) -> Cx<F> {
        assert!(self.is_square());
        let mut t = c_zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    /// Σ |entries|² = Tr(A A†), a non-negative real returned as the real part.
    pub fn frobenius_sq(&self) -> F {
        let mut s = F::zero();
        for c in &self.data {
            s = s + c.re.clone() * c.re.clone() + c.im.clone() * c.im.clone();
        }
        s
    }

    pub fn is_zero_tol(&self, tol: f64) -> bool {
        self.data.iter().all(|c| cx_is_zero_tol(c, tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| cx_close(a, b, tol))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.adjoint(), tol)
    }

    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.adjoint().neg(), tol)
    }

    /// Determinant by Gaussian elimination with a nonzero (float: largest)
    /// pivot. Fine at these sizes.
    pub fn det(&self) -> Cx<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Cx::new(F::one(), F::zero());
        for col in 0..n {
            let pivot = (col..n).filter(|&r| !m[(r, col)].is_zero()).max_by(|&a, &b| {
                let na = m[(a, col)].re.to_f64().abs() + m[(a, col)].im.to_f64().abs();
                let nb = m[(b, col)].re.to_f64().abs() + m[(b, col)].im.to_f64().abs();
                na.partial_cmp(&nb).unwrap_or(std::cmp::Ordering::Equal)
            });
            let Some(p) = pivot else {
                return c_zero();
            };
            if p != col {
                for j in 0..n {
                    let (lo, hi) = (col.min(p), col.max(p));
                    let tmp = m[(lo, j)].clone();
                    m[(lo, j)] = m[(hi, j)].clone();
                    m[(hi, j)] = tmp;
                }
                det = -det;
            }
            let pv = m[(col, col)].clone();
            det = det * pv.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() / pv.clone();
                for j in col..n {
                    let sub = factor.clone() * m[(col, j)].clone();
                    m[(r, j)] = m[(r, j)].clone() - sub;
                }
            }
        }
        det
    }

    /// Inverse via Gauss–Jordan. Errors on singular input.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero()).ok_or(
                AlgebraError::ShapeMismatch {
                    what: "singular matrix".into(),
                },
            )?;
            if pivot != col {
                for j in 0..n {
                    m.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let pv = m[(col, col)].clone();
            for j in 0..n {
                m[(col, j)] = m[(col, j)].clone() / pv.clone();
                inv[(col, j)] = inv[(col, j)].clone() / pv.clone();
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in 0..n {
                    let a = factor.clone() * m[(col, j)].clone();
                    m[(r, j)] = m[(r, j)].clone() - a;
                    let b = factor.clone() * inv[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - b;
                }
            }
        }
        Ok(inv)
    }

    fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |r, c| self[(idx[r], idx[c])].clone())
    }
}

impl<F: RealScalar> std::ops::Index<(usize, usize)> for CMatrix<F> {
    type Output = Cx<F>;
    fn index(&self, (r, c): (usize, usize)) -> &Cx<F> {
        &self.data[r * self.cols + c]
    }
}

impl<F: RealScalar> std::ops::IndexMut<(usize, usize)> for CMatrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cx<F> {
        let cols = self.cols;
        &mut self.data[r * cols + c]
    }
}

/// Positive semidefiniteness of a Hermitian matrix.
///
/// Exact backend: every principal minor must be a non-negative rational
/// (semidefiniteness needs all of them, not only the leading ones).
/// Float backend: smallest eigenvalue of the symmetric embedding must be
/// ≥ −tol·max(1, ‖H‖).
pub fn is_psd<F: RealScalar>(h: &CMatrix<F>, tol: f64) -> Result<bool, AlgebraError> {
    if !h.is_square() {
        return Err(AlgebraError::ShapeMismatch {
            what: "psd check needs a square matrix".into(),
        });
    }
    if !h.is_hermitian(tol) {
        return Err(AlgebraError::RealityViolation {
            condition: "hermitian matrix expected",
        });
    }
    let n = h.rows();
    if F::EXACT {
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let d = h.submatrix(&idx).det();
            // Principal minors of a Hermitian matrix are real.
            debug_assert!(d.im.is_zero());
            if d.re < F::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        let eigs = hermitian_eigenvalues_f64(h);
        let scale = 1.0f64.max(h.frobenius_sq().to_f64().sqrt());
        Ok(eigs.into_iter().all(|l| l >= -tol * scale))
    }
}

/// Eigenvalues of a Hermitian matrix via the 2n×2n real symmetric embedding
/// [[Re, −Im], [Im, Re]] and cyclic Jacobi. Each eigenvalue appears twice;
/// that does not matter for threshold tests.
fn hermitian_eigenvalues_f64<F: RealScalar>(h: &CMatrix<F>) -> Vec<f64> {
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let re = h[(i, j)].re.to_f64();
            let im = h[(i, j)].im.to_f64();
            a[i * m + j] = re;
            a[(i + n) * m + (j + n)] = re;
            a[i * m + (j + n)] = -im;
            a[(i + n) * m + j] = im;
        }
    }
    jacobi_symmetric_eigenvalues(&mut a, m)
}

fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c_from_i64, c_i};
    use num_rational::BigRational;

    type R = BigRational;

    #[test]
    fn det_and_inverse() {
        let m = CMatrix::<R>::from_fn(2, 2, |r, c| c_from_i64((2 * r + c + 1) as i64, 0));
        // [[1,2],[3,4]] -> det -2
        assert_eq!(m.det(), c_from_i64(-2, 0));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).approx_eq(&CMatrix::identity(2), 0.0));
    }

    #[test]
    fn psd_exact_all_minors() {
        // [[2,1],[1,1]] is PD; [[1,2],[2,1]] is indefinite.
        let pd = CMatrix::<R>::from_fn(2, 2, |r, c| {
            c_from_i64(if r == c { (2 - r) as i64 } else { 1 }, 0)
        });
        assert!(is_psd(&pd, 0.0).unwrap());
        let indef = CMatrix::<R>::from_fn(2, 2, |r, c| c_from_i64(if r == c { 1 } else { 2 }, 0));
        assert!(!is_psd(&indef, 0.0).unwrap());
        // PSD but not PD: [[1,1],[1,1]] (leading minors alone would also pass,
        // but e.g. diag(0,-1) needs the non-leading minor).
        let deg = CMatrix::<R>::from_fn(2, 2, |_, _| c_from_i64(1, 0));
        assert!(is_psd(&deg, 0.0).unwrap());
        let mut neg_tail = CMatrix::<R>::zero(2, 2);
        neg_tail[(1, 1)] = c_from_i64(-1, 0);
        assert!(!is_psd(&neg_tail, 0.0).unwrap());
    }

    #[test]
    fn psd_float_hermitian_embedding() {
        // [[2, i],[-i, 2]] has eigenvalues 1, 3.
        let mut h = CMatrix::<f64>::zero(2, 2);
        h[(0, 0)] = c_from_i64(2, 0);
        h[(1, 1)] = c_from_i64(2, 0);
        h[(0, 1)] = c_i();
        h[(1, 0)] = -c_i::<f64>();
        assert!(is_psd(&h, 1e-9).unwrap());
        let mut eigs = hermitian_eigenvalues_f64(&h);
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eigs[0] - 1.0).abs() < 1e-9 && (eigs[3] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn hermitian_check_rejects_non_hermitian() {
        let mut h = CMatrix::<R>::zero(2, 2);
        h[(0, 1)] = c_i();
        assert!(matches!(
            is_psd(&h, 0.0),
            Err(AlgebraError::RealityViolation { .. })
        ));
    }
}
