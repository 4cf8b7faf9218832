//! Scalar backends: exact rationals and binary floats behind one trait.
//!
//! Every module in the crate is generic over [`RealScalar`]. The exact
//! backend (`BigRational`) checks identities by literal equality; the float
//! backend checks them within a tolerance supplied by the caller. Sampling
//! goes through `from_ratio`, so both backends can draw the same values.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde_json::Value;
use std::fmt::Debug;
use std::str::FromStr;

/// Real scalar field shared by all modules; selected once per run.
pub trait RealScalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// True for the rational backend: equality checks are exact and `tol`
    /// arguments are ignored.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Zero test. Exact backend: `self == 0`; float backend: `|self| <= tol`.
    fn is_zero_tol(&self, tol: f64) -> bool;
    /// Serialized as a `"num/den"` string (exact) or JSON number (float).
    fn json_value(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
}

impl RealScalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).unwrap_or_else(Self::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn json_value(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Option<Self> {
        let s = v.as_str()?;
        let (n, d) = s.split_once('/')?;
        Some(BigRational::new(
            BigInt::from_str(n).ok()?,
            BigInt::from_str(d).ok()?,
        ))
    }
}

impl RealScalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_zero_tol(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn json_value(&self) -> Value {
        serde_json::json!(*self)
    }

    fn from_json(v: &Value) -> Option<Self> {
        v.as_f64()
    }
}

/// Complex scalar over the chosen real backend.
pub type Cx<F> = Complex<F>;

pub fn cx<F: RealScalar>(re: F, im: F) -> Cx<F> {
    Complex::new(re, im)
}

pub fn c_from_i64<F: RealScalar>(re: i64, im: i64) -> Cx<F> {
    Complex::new(F::from_i64(re), F::from_i64(im))
}

pub fn c_zero<F: RealScalar>() -> Cx<F> {
    Complex::new(F::zero(), F::zero())
}

pub fn c_one<F: RealScalar>() -> Cx<F> {
    Complex::new(F::one(), F::zero())
}

/// The imaginary unit.
pub fn c_i<F: RealScalar>() -> Cx<F> {
    Complex::new(F::zero(), F::one())
}

pub fn c_real<F: RealScalar>(re: F) -> Cx<F> {
    Complex::new(re, F::zero())
}

pub fn cx_is_zero_tol<F: RealScalar>(c: &Cx<F>, tol: f64) -> bool {
    c.re.is_zero_tol(tol) && c.im.is_zero_tol(tol)
}

/// Closeness of reals: exact equality on the rational backend, relative
/// tolerance on floats.
pub fn real_close<F: RealScalar>(a: &F, b: &F, tol: f64) -> bool {
    if F::EXACT {
        a == b
    } else {
        let scale = 1.0 + a.to_f64().abs() + b.to_f64().abs();
        (a.clone() - b.clone()).is_zero_tol(tol * scale)
    }
}

/// Closeness test: exact equality on the rational backend, relative
/// tolerance `tol * (1 + |a| + |b|)` on floats.
pub fn cx_close<F: RealScalar>(a: &Cx<F>, b: &Cx<F>, tol: f64) -> bool {
    if F::EXACT {
        a == b
    } else {
        let scale = 1.0
            + a.re.to_f64().abs()
            + a.im.to_f64().abs()
            + b.re.to_f64().abs()
            + b.im.to_f64().abs();
        (a.re.clone() - b.re.clone()).is_zero_tol(tol * scale)
            && (a.im.clone() - b.im.clone()).is_zero_tol(tol * scale)
    }
}

pub fn cx_json<F: RealScalar>(c: &Cx<F>) -> Value {
    Value::Array(vec![c.re.json_value(), c.im.json_value()])
}

pub fn cx_from_json<F: RealScalar>(v: &Value) -> Option<Cx<F>> {
    let arr = v.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    Some(Complex::new(F::from_json(&arr[0])?, F::from_json(&arr[1])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_json_roundtrip_is_bit_exact() {
        let x = BigRational::from_ratio(-22, 7);
        let v = x.json_value();
        assert_eq!(v, Value::String("-22/7".into()));
        assert_eq!(BigRational::from_json(&v).unwrap(), x);
    }

    #[test]
    fn float_zero_tolerance() {
        assert!(1e-12f64.is_zero_tol(1e-9));
        assert!(!1e-6f64.is_zero_tol(1e-9));
    }

    #[test]
    fn complex_close_exact_vs_float() {
        let a = c_from_i64::<BigRational>(1, 2);
        let b = c_from_i64::<BigRational>(1, 2);
        assert!(cx_close(&a, &b, 0.0));
        let x = cx(1.0f64, 2.0);
        let y = cx(1.0 + 1e-12, 2.0);
        assert!(cx_close(&x, &y, 1e-9));
    }
}
