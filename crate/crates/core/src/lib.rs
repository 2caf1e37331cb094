//! Okounkov BC_n interpolation polynomials and the positivity sets of
//! Shimura invariant differential operators.
//!
//! Evaluators are generic over [`Scalar`]: exact [`Rational`] values are used
//! for vanishing identities, [`Real64`] for limits, infinite series and region
//! rasterization.

pub mod error;
pub mod exactnum;
pub mod grid;
pub mod limits;
mod linalg;
pub mod okounkov;
pub mod partitions;
pub mod rank2;
pub mod scalar;
pub mod shimura;
pub mod suites;

pub use error::{Error, Result};
pub use okounkov::{Params, SymEvenPoly};
pub use partitions::{Cell, Partition, ReverseTableau};
pub use scalar::{Scalar, Sign};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Double precision real.
pub type Real64 = f64;
