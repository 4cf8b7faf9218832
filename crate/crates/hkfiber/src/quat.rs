//! Quaternion arithmetic, unit quaternions as SU(2) elements, induced
//! complex structures aI + bJ + cK, and the conjugation action on them.
//!
//! The exact backend never takes square roots: unit quaternions come from
//! the rational parametrization of the sphere, so |q|² = 1 holds literally.

use crate::error::AlgebraError;
use crate::scalar::RealScalar;
use rand::Rng;

/// Element of ℍ: w + x·i + y·j + z·k.
#[derive(Debug, Clone, PartialEq)]
pub struct Quaternion<F: RealScalar> {
    pub w: F,
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: RealScalar> Quaternion<F> {
    pub fn new(w: F, x: F, y: F, z: F) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_i64(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(F::from_i64(w), F::from_i64(x), F::from_i64(y), F::from_i64(z))
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_i64(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_i64(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_i64(0, 0, 0, 1)
    }

    /// Hamilton product.
    pub fn mul(&self, q: &Self) -> Self {
        let (a0, a1, a2, a3) = (&self.w, &self.x, &self.y, &self.z);
        let (b0, b1, b2, b3) = (&q.w, &q.x, &q.y, &q.z);
        Quaternion::new(
            a0.clone() * b0.clone() - a1.clone() * b1.clone() - a2.clone() * b2.clone()
                - a3.clone() * b3.clone(),
            a0.clone() * b1.clone() + a1.clone() * b0.clone() + a2.clone() * b3.clone()
                - a3.clone() * b2.clone(),
            a0.clone() * b2.clone() - a1.clone() * b3.clone()
                + a2.clone() * b0.clone()
                + a3.clone() * b1.clone(),
            a0.clone() * b3.clone() + a1.clone() * b2.clone() - a2.clone() * b1.clone()
                + a3.clone() * b0.clone(),
        )
    }

    pub fn add(&self, q: &Self) -> Self {
        Quaternion::new(
            self.w.clone() + q.w.clone(),
            self.x.clone() + q.x.clone(),
            self.y.clone() + q.y.clone(),
            self.z.clone() + q.z.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Quaternion::new(
            -self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    pub fn norm_sq(&self) -> F {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    pub fn scale(&self, s: &F) -> Self {
        Quaternion::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// q · p · q⁻¹ for any nonzero q; conjugation does not depend on |q|.
    pub fn conjugate(&self, p: &Self) -> Self {
        let n = self.norm_sq();
        self.mul(p).mul(&self.conj()).scale(&(F::one() / n))
    }
}

/// Unit quaternion; an SU(2) element acting on the model fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitQuaternion<F: RealScalar>(Quaternion<F>);

impl<F: RealScalar> UnitQuaternion<F> {
    pub fn new(q: Quaternion<F>, tol: f64) -> Result<Self, AlgebraError> {
        let n = q.norm_sq() - F::one();
        if !n.is_zero_tol(tol) {
            return Err(AlgebraError::RealityViolation {
                condition: "|q|^2 = 1",
            });
        }
        Ok(UnitQuaternion(q))
    }

    pub fn one() -> Self {
        UnitQuaternion(Quaternion::one())
    }

    pub fn quaternion(&self) -> &Quaternion<F> {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        UnitQuaternion(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Self {
        UnitQuaternion(self.0.conj())
    }
}

/// Induced complex structure L = aI + bJ + cK with a² + b² + c² = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedStructure<F: RealScalar> {
    pub a: F,
    pub b: F,
    pub c: F,
}

impl<F: RealScalar> InducedStructure<F> {
    pub fn new(a: F, b: F, c: F, tol: f64) -> Result<Self, AlgebraError> {
        let n = a.clone() * a.clone() + b.clone() * b.clone() + c.clone() * c.clone() - F::one();
        if !n.is_zero_tol(tol) {
            return Err(AlgebraError::RealityViolation {
                condition: "a^2 + b^2 + c^2 = 1",
            });
        }
        Ok(InducedStructure { a, b, c })
    }

    pub fn i() -> Self {
        InducedStructure {
            a: F::one(),
            b: F::zero(),
            c: F::zero(),
        }
    }

    pub fn j() -> Self {
        InducedStructure {
            a: F::zero(),
            b: F::one(),
            c: F::zero(),
        }
    }

    pub fn k() -> Self {
        InducedStructure {
            a: F::zero(),
            b: F::zero(),
            c: F::one(),
        }
    }

    pub fn neg(&self) -> Self {
        InducedStructure {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
        }
    }

    pub fn as_quaternion(&self) -> Quaternion<F> {
        Quaternion::new(F::zero(), self.a.clone(), self.b.clone(), self.c.clone())
    }
}

/// g L g⁻¹ as an induced structure; conjugation by a unit quaternion
/// restricts to a rotation of the sphere of structures.
pub fn conjugate_structure<F: RealScalar>(
    g: &UnitQuaternion<F>,
    l: &InducedStructure<F>,
) -> InducedStructure<F> {
    let r = g.quaternion().conjugate(&l.as_quaternion());
    debug_assert!(r.w.is_zero_tol(1e-12));
    InducedStructure {
        a: r.x,
        b: r.y,
        c: r.z,
    }
}

/// The fixed SU(2) element with g K g⁻¹ = I, g I g⁻¹ = J, g J g⁻¹ = K:
/// the cyclic rotation ½(1 + i + j + k). Rational, so it exists in both
/// backends.
pub fn cyclic_rotation<F: RealScalar>() -> UnitQuaternion<F> {
    let h = F::from_ratio(1, 2);
    UnitQuaternion(Quaternion::new(h.clone(), h.clone(), h.clone(), h))
}

/// Rational point of the unit 3-sphere from a rational parameter triple
/// (inverse stereographic projection); |q|² = 1 identically.
pub fn unit_from_params<F: RealScalar>(t1: F, t2: F, t3: F) -> UnitQuaternion<F> {
    let tt = t1.clone() * t1.clone() + t2.clone() * t2.clone() + t3.clone() * t3.clone();
    let denom = F::one() + tt.clone();
    let two = F::from_i64(2);
    UnitQuaternion(Quaternion::new(
        (F::one() - tt) / denom.clone(),
        two.clone() * t1 / denom.clone(),
        two.clone() * t2 / denom.clone(),
        two * t3 / denom,
    ))
}

/// Rational point of the unit 2-sphere; an induced structure.
pub fn structure_from_params<F: RealScalar>(t1: F, t2: F) -> InducedStructure<F> {
    let tt = t1.clone() * t1.clone() + t2.clone() * t2.clone();
    let denom = F::one() + tt.clone();
    let two = F::from_i64(2);
    InducedStructure {
        a: (F::one() - tt) / denom.clone(),
        b: two.clone() * t1 / denom.clone(),
        c: two * t2 / denom,
    }
}

fn small_ratio<F: RealScalar>(rng: &mut impl Rng) -> F {
    F::from_ratio(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=5))
}

/// Seeded random unit quaternion. Exact backend: rational sphere point.
/// Float backend: Marsaglia's two-disc method, uniform on S³.
pub fn random_unit_quaternion<F: RealScalar>(rng: &mut impl Rng) -> UnitQuaternion<F> {
    if F::EXACT {
        unit_from_params(small_ratio(rng), small_ratio(rng), small_ratio(rng))
    } else {
        let (x1, x2) = loop {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            if a * a + b * b < 1.0 {
                break (a, b);
            }
        };
        let (x3, x4) = loop {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            if a * a + b * b < 1.0 {
                break (a, b);
            }
        };
        let r1 = x1 * x1 + x2 * x2;
        let r2 = x3 * x3 + x4 * x4;
        let s = ((1.0 - r1) / r2).sqrt();
        let mut q = Quaternion::new(x1, x2, x3 * s, x4 * s);
        // Guard rounding: renormalize once.
        let n = q.norm_sq().sqrt();
        q = q.scale(&(1.0 / n));
        UnitQuaternion(Quaternion::new(
            F::from_f64(q.w),
            F::from_f64(q.x),
            F::from_f64(q.y),
            F::from_f64(q.z),
        ))
    }
}

/// Seeded random induced structure (rational sphere point in both backends;
/// values are exact rationals converted into the scalar type).
pub fn random_structure<F: RealScalar>(rng: &mut impl Rng) -> InducedStructure<F> {
    structure_from_params(small_ratio(rng), small_ratio(rng))
}
