//! The scalar abstraction shared by every evaluator.
//!
//! Exact rationals and IEEE floats implement the same [`Scalar`] trait so that
//! polynomial evaluators are written once. The two never mix silently: the only
//! bridges are [`Scalar::from_rational`] (exact -> any) and [`Scalar::to_f64`].

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Relative width of the float sign deadband used for region boundaries.
pub const SIGN_DEADBAND: f64 = 1e-9;

/// Three-way sign where `Zero` means "on the boundary".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn is_nonnegative(self) -> bool {
        self != Sign::Negative
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Signed
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// Sign of `self`, where `scale` is the magnitude of the quantities that
    /// were combined to produce it. Exact types ignore `scale`; float types
    /// report `Zero` inside the band `|v| <= 1e-9 (1 + scale)`.
    fn sign_band(&self, scale: &Self) -> Sign;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits every scalar type")
    }

    fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&rat(p, q))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sign_band(&self, _scale: &Self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(q: &BigRational) -> Self {
                ToPrimitive::to_f64(q).unwrap_or(f64::NAN) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn sign_band(&self, scale: &Self) -> Sign {
                let band = SIGN_DEADBAND as $t * (1.0 + scale.abs());
                if self.abs() <= band {
                    Sign::Zero
                } else if *self > 0.0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or an integer `"p"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Parses a comma separated list of rationals; the empty string is the empty list.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub(crate) fn one<S: Scalar>() -> S {
    S::one()
}

pub(crate) fn check_len<T>(v: &[T], n: usize) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        })
    }
}
