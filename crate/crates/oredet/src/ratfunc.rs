//! The differential field K = Q(x): reduced fractions of polynomials.
//!
//! Canonical form: `gcd(num, den) = 1`, denominator monic and nonzero,
//! zero is `0/1`. Equality of field elements is therefore syntactic
//! equality of representatives, and membership in R = Q[x] is the check
//! `den == 1`.

use std::ops::{Add, Div, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{rat_int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// `num / den` in canonical form. Errors when `den = 0`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        let lead = den.leading_coeff();
        num = num.scale(&lead.recip());
        den = den.scale(&lead.recip());
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(rat_int(n))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Membership in the subring R = Q[x]: a unit denominator.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator as a polynomial, provided the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// d/dx by the quotient rule, reduced.
    pub fn derive(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFunc::new(num, den).expect("denominator square is nonzero")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("product of nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("product of nonzero denominators")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        RatFunc::new(num, den).expect("product of nonzero denominators")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            panic!("division by zero rational function");
        }
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

macro_rules! forward_value_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}

forward_value_binop!(Add, add);
forward_value_binop!(Sub, sub);
forward_value_binop!(Mul, mul);
forward_value_binop!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

/// Checked division, for callers that must not panic on a zero divisor.
pub fn try_div(a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Clears denominators and content from a vector over K.
///
/// Returns `(scale, primitive)` with `primitive[i] = scale * v[i]`: every
/// entry a polynomial, and the rational content of all coefficients
/// together equal to 1. Errors on an all-zero vector.
pub fn content_and_primitive(v: &[RatFunc]) -> Result<(RatFunc, Vec<Poly>)> {
    if v.iter().all(RatFunc::is_zero) {
        return Err(Error::AllZeroVector);
    }
    let mut den_lcm = Poly::one();
    for f in v {
        den_lcm = den_lcm.lcm(f.den());
    }
    let cleared: Vec<Poly> = v
        .iter()
        .map(|f| {
            let cof = den_lcm.exact_div(f.den()).expect("lcm divides");
            &cof * f.num()
        })
        .collect();
    let content = crate::rational::rational_content(
        cleared.iter().flat_map(|p| p.coeffs().iter()),
    );
    let inv = Poly::constant(content.recip());
    let primitive: Vec<Poly> = cleared.iter().map(|p| p * &inv).collect();
    let scale = RatFunc::new(&den_lcm * &inv, Poly::one())?;
    Ok((scale, primitive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_ints(coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(poly(num), poly(den)).unwrap()
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let inv_x = rf(&[1], &[0, 1]);
        assert!((inv_x * RatFunc::x()).is_one());
    }

    #[test]
    fn partial_fractions_recombine() {
        // 1/(x-1) + 1/(x+1) = 2x / (x^2 - 1)
        let sum = rf(&[1], &[-1, 1]) + rf(&[1], &[1, 1]);
        assert_eq!(sum, rf(&[0, 2], &[-1, 0, 1]));
    }

    #[test]
    fn zero_has_unit_denominator() {
        let z = RatFunc::x() - RatFunc::x();
        assert!(z.is_zero());
        assert!(z.den().is_one());
    }

    #[test]
    fn derive_power_rule() {
        assert_eq!(RatFunc::x().derive(), RatFunc::from_int(1));
        let sq = RatFunc::x() * RatFunc::x();
        assert_eq!(sq.derive(), rf(&[0, 2], &[1]));
        // (1/x)' = -1/x^2
        assert_eq!(rf(&[1], &[0, 1]).derive(), rf(&[-1], &[0, 0, 1]));
    }

    #[test]
    fn derive_quotient_rule_example() {
        // ((x+1)/(x-1))' = -2/(x-1)^2
        let f = rf(&[1, 1], &[-1, 1]);
        assert_eq!(f.derive(), rf(&[-2], &[1, -2, 1]));
    }

    #[test]
    fn division_by_zero_is_checked() {
        assert!(matches!(
            try_div(&RatFunc::one(), &RatFunc::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn primitive_part_clears_single_denominator() {
        let (scale, prim) = content_and_primitive(&[rf(&[1], &[0, 1]), RatFunc::one()]).unwrap();
        assert_eq!(prim, vec![poly(&[1]), poly(&[0, 1])]);
        assert_eq!(scale, RatFunc::x());
    }

    #[test]
    fn primitive_part_removes_content() {
        let (scale, prim) = content_and_primitive(&[rf(&[0, 2], &[1]), rf(&[4], &[1])]).unwrap();
        assert_eq!(prim, vec![poly(&[0, 1]), poly(&[2])]);
        assert_eq!(scale, rf(&[1], &[2]));
    }

    #[test]
    fn primitive_part_clears_nested_denominators() {
        // [x/(x+1), 1/(x+1)^2] -> [x(x+1), 1]
        let v = [rf(&[0, 1], &[1, 1]), rf(&[1], &[1, 2, 1])];
        let (scale, prim) = content_and_primitive(&v).unwrap();
        assert_eq!(prim, vec![poly(&[0, 1, 1]), poly(&[1])]);
        assert_eq!(scale, rf(&[1, 2, 1], &[1]));
    }

    #[test]
    fn primitive_part_rejects_zero_vector() {
        assert!(matches!(
            content_and_primitive(&[RatFunc::zero()]),
            Err(Error::AllZeroVector)
        ));
    }

    use crate::testutil::arb_ratfunc;

    proptest! {
        #[test]
        fn leibniz_rule(f in arb_ratfunc(4), g in arb_ratfunc(4)) {
            let lhs = (&f * &g).derive();
            let rhs = &f.derive() * &g + &f * &g.derive();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn normal_form_is_canonical(f in arb_ratfunc(4), g in arb_ratfunc(4)) {
            // a - b = 0 exactly when the canonical representatives agree
            prop_assert_eq!((&f - &g).is_zero(), f == g);
        }

        #[test]
        fn subring_closed_under_arithmetic(
            a in crate::testutil::arb_poly(4),
            b in crate::testutil::arb_poly(4),
        ) {
            let (a, b) = (RatFunc::from_poly(a), RatFunc::from_poly(b));
            prop_assert!((&a + &b).is_polynomial());
            prop_assert!((&a * &b).is_polynomial());
            prop_assert!((&a - &b).is_polynomial());
        }
    }
}
