//! Desk-scale verification toolkit for Hankel-determinant bounds of starlike
//! functions whose `zf'/f` is subordinate to a Ma-Minda generator, centred on
//! the cardioid generator `phi(z) = 1 + z e^z`.
//!
//! The crate has three layers:
//!
//! * exact machinery — truncated power series over rationals
//!   ([`series`]), Caratheodory-class sequences and the Libera-Zlotkiewicz
//!   parametrization ([`caratheodory`]), closed-form coefficient functionals
//!   and n-fold symmetric bounds ([`functionals`]);
//! * the bound surface `B(p, x, y)` majorizing `|H_3(1)|` over the cuboid
//!   `[0,2] x [0,1] x [0,1]` together with its face and edge restrictions
//!   ([`bound_surface`]);
//! * certification and search — outward-rounded interval arithmetic and
//!   branch-and-bound with certificates ([`interval`], [`optimizer`]) plus
//!   randomized stress maximization of the coefficient functionals
//!   ([`stress`]).

pub mod bound_surface;
pub mod caratheodory;
pub mod error;
pub mod functionals;
pub mod interval;
pub mod optimizer;
pub mod scalar;
pub mod series;
pub mod stress;

pub use error::{Error, Result};
pub use scalar::{RealScalar, Ring, Scalar};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;
/// Exact complex-rational scalar.
pub type CRat = num_complex::Complex<Rat>;
/// Floating complex scalar.
pub type C64 = num_complex::Complex64;

/// Series with exact rational coefficients.
pub type RatSeries = series::TruncatedSeries<Rat>;
/// Series with exact complex-rational coefficients.
pub type CRatSeries = series::TruncatedSeries<CRat>;
/// Series with floating real coefficients.
pub type RealSeries = series::TruncatedSeries<f64>;
/// Series with floating complex coefficients.
pub type ComplexSeries = series::TruncatedSeries<C64>;

/// Default truncation degree: `H_4` needs `a_7`, and the n-fold transforms
/// need headroom above degree 7.
pub const DEFAULT_ORDER: usize = 16;
