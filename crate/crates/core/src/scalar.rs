//! Scalar payloads.
//!
//! Everything algebraic in this crate is generic over the scalar type:
//! exact rationals (and complex rationals) drive identity checks and golden
//! values, `f64`/`Complex64` drive sampling and search, and the interval
//! type implements the same [`Ring`] surface so the certified optimizer can
//! reuse every polynomial evaluator unchanged.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::{CRat, Rat};

/// Commutative ring operations plus an embedding of integer ratios.
///
/// `from_ratio` is the single entry point for literal coefficients, so a
/// rational coefficient table evaluates exactly in rational mode, to nearest
/// in floating mode, and to an outward-rounded enclosure in interval mode.
pub trait Ring:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

/// A field scalar: a [`Ring`] with division, conjugation and a lossy numeric
/// view used for validation and reporting.
pub trait Scalar: Ring + Div<Output = Self> + PartialEq + Debug + Send + Sync + 'static {
    /// Complex conjugate; the identity on real payloads.
    fn conj(&self) -> Self;

    /// Squared modulus embedded back into the scalar type, so it can appear
    /// inside ring expressions such as `1 - |gamma|^2`.
    fn modulus_sq(&self) -> Self;

    /// Numeric view (exact payloads are rounded to nearest).
    fn approx(&self) -> Complex64;

    fn abs_approx(&self) -> f64 {
        self.approx().norm()
    }
}

/// Real ordered scalars: `f64` and exact rationals.
pub trait RealScalar: Scalar + PartialOrd {
    fn to_f64(&self) -> f64 {
        self.approx().re
    }
}

impl Ring for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f64 {
    fn conj(&self) -> Self {
        *self
    }

    fn modulus_sq(&self) -> Self {
        self * self
    }

    fn approx(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl RealScalar for f64 {}

impl Ring for Rat {
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Rat {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn modulus_sq(&self) -> Self {
        self * self
    }

    fn approx(&self) -> Complex64 {
        Complex64::new(ToPrimitive::to_f64(self).unwrap_or(f64::NAN), 0.0)
    }
}

impl RealScalar for Rat {}

impl Ring for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex64::new(self.re, -self.im)
    }

    fn modulus_sq(&self) -> Self {
        Complex64::new(self.norm_sqr(), 0.0)
    }

    fn approx(&self) -> Complex64 {
        *self
    }
}

impl Ring for CRat {
    fn from_ratio(num: i64, den: i64) -> Self {
        CRat::new(Rat::from_ratio(num, den), Rat::zero())
    }
}

impl Scalar for CRat {
    fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }

    fn modulus_sq(&self) -> Self {
        CRat::new(&self.re * &self.re + &self.im * &self.im, Rat::zero())
    }

    fn approx(&self) -> Complex64 {
        Complex64::new(
            ToPrimitive::to_f64(&self.re).unwrap_or(f64::NAN),
            ToPrimitive::to_f64(&self.im).unwrap_or(f64::NAN),
        )
    }
}
