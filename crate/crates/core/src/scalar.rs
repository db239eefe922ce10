//! The scalar ground field underneath every quaternion.
//!
//! All of the algebra in this crate is written against [`Scalar`], so the same
//! determinant and pseudoinverse code runs over exact rationals (the default,
//! see [`crate::Rational`]) and over `f32`/`f64` for the float oracle.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// A real scalar usable as the component type of a quaternion.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when arithmetic is exact, so algebraic identities may be checked by equality.
    const EXACT: bool;

    /// Lossy conversion to `f64`; non-representable values map to NaN.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Scalar for f32 {
    const EXACT: bool = false;
}

/// Builds an exact rational `numer / denom` in lowest terms.
///
/// Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
