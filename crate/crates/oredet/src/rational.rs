//! Exact rational scalars.
//!
//! `Rational` keeps the invariants the rest of the crate relies on:
//! reduced fraction, positive denominator, zero represented as 0/1.
//! `num_rational::BigRational` enforces exactly that normal form, so it
//! is used directly rather than wrapped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// An integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Positive gcd of a set of rationals: `gcd(numerators) / lcm(denominators)`.
///
/// Dividing each input by the result yields integers with no common factor.
/// Returns zero when every input is zero.
pub fn rational_content<'a, I>(values: I) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if num_gcd.is_zero() {
        return Rational::zero();
    }
    Rational::new(num_gcd.abs(), den_lcm)
}
