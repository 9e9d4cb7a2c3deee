//! Scalar abstractions: a float trait for the numerical layer and small
//! ring/domain traits that let the polynomial types work over `f64`,
//! arbitrary-precision rationals, and nested polynomial rings alike.

use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Floating-point scalar used by the trajectory/fitting layer: f32 or f64.
pub trait Real: Float + FloatConst + FromPrimitive + NumAssign + Debug + 'static {}
impl<T> Real for T where T: Float + FloatConst + FromPrimitive + NumAssign + Debug + 'static {}

/// Commutative ring with exact equality; coefficients of the polynomial types.
///
/// Implemented by `f64` (approximately), `BigRational`, `BigInt`, and by
/// `Poly1<T>` itself so polynomial rings nest.
pub trait CoeffRing:
    Clone
    + PartialEq
    + Zero
    + num_traits::One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> CoeffRing for T where
    T: Clone
        + PartialEq
        + Zero
        + num_traits::One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// Integral domain supporting exact division of known multiples.
///
/// `exact_div` may panic or return garbage when `rhs` does not divide
/// `self`; callers only use it where divisibility is a theorem
/// (fraction-free elimination, subresultant sequences).
pub trait Domain: CoeffRing {
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl Domain for BigRational {
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Domain for num_bigint::BigInt {
    fn exact_div(&self, rhs: &Self) -> Self {
        debug_assert!(!rhs.is_zero());
        debug_assert!((self % rhs).is_zero());
        self / rhs
    }
}

/// Embeds a small nonnegative integer into any ring by binary doubling.
pub fn small_int<T: CoeffRing>(k: u64) -> T {
    if k == 0 {
        return T::zero();
    }
    let mut acc = T::zero();
    let bits = 64 - k.leading_zeros();
    for i in (0..bits).rev() {
        acc = acc.clone() + acc;
        if (k >> i) & 1 == 1 {
            acc = acc + T::one();
        }
    }
    acc
}

/// Rings containing an embedded copy of the rationals.
pub trait RatEmbed {
    fn embed(r: BigRational) -> Self;
}

impl RatEmbed for BigRational {
    fn embed(r: BigRational) -> Self {
        r
    }
}
