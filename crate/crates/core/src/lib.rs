//! Exact construction of two-variable Jacobi, Bateman and Legendre polynomials
//! and verification of the mixed recurrence relations they are claimed to
//! satisfy.
//!
//! The numeric core is generic over [`Scalar`]; the aliases below fix the
//! exact rational instantiation that every verdict is computed with.

pub mod claims;
pub mod compare;
pub mod error;
pub mod families;
pub mod numeric;
pub mod hypergeom;
pub mod operators;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use families::{BatemanHalfPower, Convention, JacobiParams, LegendreDenominator};
pub use operators::OperatorId;
pub use poly::{LaurentPoly, Monomial};
pub use scalar::{Rational, Scalar};
pub use series::TSeries;

/// Exact Laurent polynomial in `z`, `s = sqrt(w)`.
pub type Poly = LaurentPoly<Rational>;
/// Exact truncated series in `t`.
pub type Series = TSeries<Rational>;
/// Rational Jacobi parameters.
pub type Params = JacobiParams<Rational>;
/// Floating-point polynomial, for quick numeric experiments only.
pub type PolyF64 = LaurentPoly<f64>;
