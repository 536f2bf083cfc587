//! The rank-two Néron–Severi space of `Gr_r(E)` and cones inside it.
//!
//! Classes are written `α·η + β·f` with `η = c₁(O(1))` and `f` the class of a
//! fiber of `Gr_r(E) → X`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bundle::BundleDescriptor;
use crate::error::{check_range, Error, Result};
use crate::rational::Rational;

/// A real Néron–Severi class with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NsClass {
    /// Coefficient of `η`.
    pub eta: Rational,
    /// Coefficient of the fiber class `f`.
    pub fiber: Rational,
}

impl NsClass {
    pub fn new(eta: impl Into<Rational>, fiber: impl Into<Rational>) -> Self {
        NsClass {
            eta: eta.into(),
            fiber: fiber.into(),
        }
    }

    pub fn zero() -> Self {
        NsClass::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.eta.is_zero() && self.fiber.is_zero()
    }

    /// `η - λ f`.
    pub fn boundary(lambda: &Rational) -> Self {
        NsClass::new(Rational::from(1), -lambda)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        NsClass::new(&self.eta * q, &self.fiber * q)
    }
}

impl std::ops::Add for &NsClass {
    type Output = NsClass;
    fn add(self, rhs: &NsClass) -> NsClass {
        NsClass::new(&self.eta + &rhs.eta, &self.fiber + &rhs.fiber)
    }
}

impl fmt::Display for NsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.eta, self.fiber)
    }
}

/// A ray direction as a primitive integer vector: `eta > 0`, or `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    eta: BigInt,
    fiber: BigInt,
}

impl Ray {
    /// Normalizes a nonzero class to its primitive representative.
    ///
    /// Only directions with `eta > 0` or pointing along `+f` have a
    /// representative; others are rejected.
    pub fn new(direction: &NsClass) -> Result<Self> {
        if direction.is_zero() {
            return Err(Error::validation("ray", "the zero class has no direction"));
        }
        if direction.eta.is_negative() || (direction.eta.is_zero() && direction.fiber.is_negative())
        {
            return Err(Error::validation(
                "ray",
                format!("direction {direction} is outside the half-plane eta > 0 or +f"),
            ));
        }
        let common = direction.eta.denom().lcm(direction.fiber.denom());
        let eta = direction.eta.numer() * (&common / direction.eta.denom());
        let fiber = direction.fiber.numer() * (&common / direction.fiber.denom());
        let g = eta.gcd(&fiber);
        Ok(Ray {
            eta: eta / &g,
            fiber: fiber / &g,
        })
    }

    /// The fiber class `f`.
    pub fn fiber_class() -> Self {
        Ray {
            eta: BigInt::zero(),
            fiber: BigInt::one(),
        }
    }

    pub fn eta(&self) -> &BigInt {
        &self.eta
    }

    pub fn fiber(&self) -> &BigInt {
        &self.fiber
    }

    pub fn as_class(&self) -> NsClass {
        NsClass::new(Rational::from(&self.eta), Rational::from(&self.fiber))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.eta, self.fiber)
    }
}

/// A two-dimensional cone spanned by two independent rays.
///
/// Equality ignores the order of the rays.
#[derive(Debug, Clone, Eq)]
pub struct Cone2D {
    ray_a: Ray,
    ray_b: Ray,
}

impl PartialEq for Cone2D {
    fn eq(&self, other: &Self) -> bool {
        (self.ray_a == other.ray_a && self.ray_b == other.ray_b)
            || (self.ray_a == other.ray_b && self.ray_b == other.ray_a)
    }
}

impl Cone2D {
    pub fn new(ray_a: Ray, ray_b: Ray) -> Result<Self> {
        if determinant(&ray_a, &ray_b).is_zero() {
            return Err(Error::validation(
                "cone",
                format!("rays {ray_a} and {ray_b} are linearly dependent"),
            ));
        }
        Ok(Cone2D { ray_a, ray_b })
    }

    /// The cone spanned by `f` and `η - λ f`.
    pub fn from_lambda(lambda: &Rational) -> Self {
        let boundary = Ray::new(&NsClass::boundary(lambda)).expect("eta coefficient is 1");
        Cone2D {
            ray_a: Ray::fiber_class(),
            ray_b: boundary,
        }
    }

    pub fn ray_a(&self) -> &Ray {
        &self.ray_a
    }

    pub fn ray_b(&self) -> &Ray {
        &self.ray_b
    }

    /// Coordinates `(s, t)` with `x = s·a + t·b`.
    fn coordinates(&self, x: &NsClass) -> (Rational, Rational) {
        let det = Rational::from(determinant(&self.ray_a, &self.ray_b));
        let (ae, af) = (
            Rational::from(&self.ray_a.eta),
            Rational::from(&self.ray_a.fiber),
        );
        let (be, bf) = (
            Rational::from(&self.ray_b.eta),
            Rational::from(&self.ray_b.fiber),
        );
        let s = (&x.eta * &bf - &x.fiber * &be) / det.clone();
        let t = (&ae * &x.fiber - &af * &x.eta) / det;
        (s, t)
    }
}

impl fmt::Display for Cone2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{{{}, {}}}", self.ray_a, self.ray_b)
    }
}

fn determinant(a: &Ray, b: &Ray) -> BigInt {
    &a.eta * &b.fiber - &a.fiber * &b.eta
}

/// The pseudo-effective cone of `Gr_r(E)`: rays `f` and `η - λ f`.
///
/// Requires `1 <= r <= N - 1`.
pub fn pseff_cone(b: &BundleDescriptor, r: usize) -> Result<Cone2D> {
    check_range("r", r, 1, b.total_rank() - 1)?;
    Ok(Cone2D::from_lambda(&b.lambda(r)?))
}

/// Whether `x` is a non-negative combination of the two rays.
pub fn contains(c: &Cone2D, x: &NsClass) -> bool {
    let (s, t) = c.coordinates(x);
    !s.is_negative() && !t.is_negative()
}

/// Whether `x` is a nonzero non-negative multiple of exactly one ray.
pub fn on_boundary(c: &Cone2D, x: &NsClass) -> bool {
    if x.is_zero() {
        return false;
    }
    let (s, t) = c.coordinates(x);
    !s.is_negative() && !t.is_negative() && (s.is_zero() || t.is_zero())
}

/// Pullback along the top arrow of the Cartesian square over
/// `Y → X` of degree `total_degree`: `η ↦ η`, `f ↦ total_degree · f`.
///
/// Panics unless `total_degree >= 1`.
pub fn pullback_class(x: &NsClass, total_degree: &BigInt) -> NsClass {
    assert!(
        total_degree.is_positive(),
        "map degree must be positive, got {total_degree}"
    );
    NsClass::new(x.eta.clone(), &x.fiber * &Rational::from(total_degree))
}
