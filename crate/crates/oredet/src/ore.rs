//! The skew polynomial ring K[d] with the commutation rule d·f = f·d + f'.
//!
//! Elements are stored as ascending coefficient lists in the derivation
//! symbol; the top coefficient is nonzero and the zero operator is the
//! empty list with order `-infinity`. Multiplication is noncommutative
//! but order-additive, and right Euclidean division holds because K is
//! a field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::order::OrderValue;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OreOp {
    coeffs: Vec<RatFunc>,
}

impl OreOp {
    /// Builds an operator from ascending coefficients of `d^k`, trimming zeros.
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        OreOp { coeffs }
    }

    pub fn zero() -> Self {
        OreOp { coeffs: vec![] }
    }

    pub fn one() -> Self {
        OreOp::from_ratfunc(RatFunc::one())
    }

    /// The derivation symbol `d`.
    pub fn partial() -> Self {
        OreOp::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    /// An order-zero operator: multiplication by a function.
    pub fn from_ratfunc(f: RatFunc) -> Self {
        OreOp::new(vec![f])
    }

    pub fn from_poly(p: Poly) -> Self {
        OreOp::from_ratfunc(RatFunc::from_poly(p))
    }

    /// `f * d^k`.
    pub fn monomial(f: RatFunc, k: usize) -> Self {
        if f.is_zero() {
            return OreOp::zero();
        }
        let mut coeffs = vec![RatFunc::zero(); k + 1];
        coeffs[k] = f;
        OreOp { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in the derivation symbol; `-infinity` for zero.
    pub fn ord(&self) -> OrderValue {
        match self.coeffs.len() {
            0 => OrderValue::NegInf,
            n => OrderValue::Finite(n as i64 - 1),
        }
    }

    /// Coefficient of `d^k`; zero outside `0..=ord`.
    pub fn coeff_at(&self, k: i64) -> RatFunc {
        if k < 0 {
            return RatFunc::zero();
        }
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    /// Leading coefficient; zero for the zero operator.
    pub fn leading_coeff(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// True when every coefficient lies in R = Q[x].
    pub fn in_subring(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_polynomial)
    }

    /// Left multiplication by a function: scales every coefficient.
    pub fn scale(&self, f: &RatFunc) -> OreOp {
        if f.is_zero() {
            return OreOp::zero();
        }
        OreOp {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    /// Left multiplication by `d`: shifts up and adds the derivative.
    pub fn d_left(&self) -> OreOp {
        let mut coeffs = vec![RatFunc::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = &coeffs[k + 1] + c;
            coeffs[k] = &coeffs[k] + &c.derive();
        }
        OreOp::new(coeffs)
    }

    /// Right multiplication by `d`: a pure shift, since `d` commutes with itself.
    pub fn d_right(&self) -> OreOp {
        if self.is_zero() {
            return OreOp::zero();
        }
        let mut coeffs = vec![RatFunc::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        OreOp { coeffs }
    }

    pub fn pow(&self, mut k: u32) -> OreOp {
        let mut acc = OreOp::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Right Euclidean division: `(q, r)` with `self = q * div + r` and
    /// `ord r < ord div`. Errors on a zero divisor.
    pub fn right_divmod(&self, div: &OreOp) -> Result<(OreOp, OreOp)> {
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let div_ord = div.coeffs.len() as i64 - 1;
        let div_lead = div.leading_coeff();
        let mut quot = OreOp::zero();
        let mut rem = self.clone();
        while rem.coeffs.len() as i64 - 1 >= div_ord {
            let k = (rem.coeffs.len() as i64 - 1 - div_ord) as usize;
            let factor = &rem.leading_coeff() / &div_lead;
            let term = OreOp::monomial(factor, k);
            rem = &rem - &(&term * div);
            quot = &quot + &term;
        }
        Ok((quot, rem))
    }
}

impl Add for &OreOp {
    type Output = OreOp;
    fn add(self, rhs: &OreOp) -> OreOp {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff_at(k as i64) + rhs.coeff_at(k as i64))
            .collect();
        OreOp::new(coeffs)
    }
}

impl Sub for &OreOp {
    type Output = OreOp;
    fn sub(self, rhs: &OreOp) -> OreOp {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff_at(k as i64) - rhs.coeff_at(k as i64))
            .collect();
        OreOp::new(coeffs)
    }
}

impl Mul for &OreOp {
    type Output = OreOp;
    fn mul(self, rhs: &OreOp) -> OreOp {
        // a * b = sum_k a_k * (d^k * b), expanding d^k * b one step at a time
        let mut acc = OreOp::zero();
        let mut shifted = rhs.clone();
        for (k, a_k) in self.coeffs.iter().enumerate() {
            if k > 0 {
                shifted = shifted.d_left();
            }
            if !a_k.is_zero() {
                acc = &acc + &shifted.scale(a_k);
            }
        }
        acc
    }
}

impl Neg for &OreOp {
    type Output = OreOp;
    fn neg(self) -> OreOp {
        OreOp {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_value_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for OreOp {
            type Output = OreOp;
            fn $method(self, rhs: OreOp) -> OreOp {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&OreOp> for OreOp {
            type Output = OreOp;
            fn $method(self, rhs: &OreOp) -> OreOp {
                (&self).$method(rhs)
            }
        }
    };
}

forward_value_binop!(Add, add);
forward_value_binop!(Sub, sub);
forward_value_binop!(Mul, mul);

impl Neg for OreOp {
    type Output = OreOp;
    fn neg(self) -> OreOp {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{arb_oreop, arb_ratfunc};
    use proptest::prelude::*;

    fn x_times_d() -> OreOp {
        OreOp::monomial(RatFunc::x(), 1)
    }

    #[test]
    fn commutation_rule() {
        // d * x = x*d + 1
        let prod = OreOp::partial() * OreOp::from_ratfunc(RatFunc::x());
        let expected = OreOp::new(vec![RatFunc::one(), RatFunc::x()]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn commutation_rule_twice() {
        // d^2 * x = x*d^2 + 2*d
        let prod = OreOp::partial().pow(2) * OreOp::from_ratfunc(RatFunc::x());
        let expected = OreOp::new(vec![
            RatFunc::zero(),
            RatFunc::from_int(2),
            RatFunc::x(),
        ]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn x_d_squared() {
        // (x*d)^2 = x^2*d^2 + x*d
        let sq = x_times_d().pow(2);
        let x2 = &RatFunc::x() * &RatFunc::x();
        let expected = OreOp::new(vec![RatFunc::zero(), RatFunc::x(), x2]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn order_accessors() {
        let a = OreOp::new(vec![
            RatFunc::one(),
            RatFunc::zero(),
            RatFunc::x(),
        ]);
        assert_eq!(a.ord(), OrderValue::Finite(2));
        let constant = OreOp::from_ratfunc(RatFunc::from_int(5));
        assert_eq!(constant.ord(), OrderValue::Finite(0));
        assert_eq!(OreOp::zero().ord(), OrderValue::NegInf);
        assert_eq!(a.coeff_at(2), RatFunc::x());
        assert_eq!(a.coeff_at(5), RatFunc::zero());
        assert_eq!(a.coeff_at(-1), RatFunc::zero());
    }

    #[test]
    fn subring_membership() {
        assert!(OreOp::new(vec![RatFunc::one(), RatFunc::x()]).in_subring());
        let inv_x = RatFunc::new(Poly::one(), Poly::x()).unwrap();
        assert!(!OreOp::monomial(inv_x, 1).in_subring());
        assert!(OreOp::zero().in_subring());
    }

    #[test]
    fn right_division_commutative_case() {
        let (q, r) = OreOp::partial()
            .pow(2)
            .right_divmod(&OreOp::partial())
            .unwrap();
        assert_eq!(q, OreOp::partial());
        assert!(r.is_zero());
    }

    #[test]
    fn right_division_skew_case() {
        // d^2 = ((1/x)d - 1/x^2) * (x d)
        let (q, r) = OreOp::partial().pow(2).right_divmod(&x_times_d()).unwrap();
        let inv_x = RatFunc::new(Poly::one(), Poly::x()).unwrap();
        let inv_x2 = RatFunc::new(Poly::one(), &Poly::x() * &Poly::x()).unwrap();
        assert_eq!(q, OreOp::new(vec![-inv_x2, inv_x]));
        assert!(r.is_zero());
        assert_eq!(&q * &x_times_d(), OreOp::partial().pow(2));
    }

    #[test]
    fn right_division_by_larger_order() {
        let (q, r) = OreOp::partial()
            .right_divmod(&OreOp::partial().pow(2))
            .unwrap();
        assert!(q.is_zero());
        assert_eq!(r, OreOp::partial());
    }

    #[test]
    fn division_by_zero_operator() {
        assert!(matches!(
            OreOp::one().right_divmod(&OreOp::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn mul_is_associative(
            a in arb_oreop(3, 3),
            b in arb_oreop(3, 3),
            c in arb_oreop(3, 3),
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn order_is_additive(a in arb_oreop(3, 3), b in arb_oreop(3, 3)) {
            prop_assert_eq!((&a * &b).ord(), a.ord() + b.ord());
        }

        #[test]
        fn leading_coeff_multiplies(a in arb_oreop(3, 3), b in arb_oreop(3, 3)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(
                (&a * &b).leading_coeff(),
                &a.leading_coeff() * &b.leading_coeff()
            );
        }

        #[test]
        fn divmod_roundtrip(a in arb_oreop(4, 3), b in arb_oreop(3, 3)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.right_divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.ord() < b.ord());
        }

        #[test]
        fn left_distributive(
            a in arb_oreop(2, 2),
            b in arb_oreop(2, 2),
            c in arb_oreop(2, 2),
        ) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn scalar_bilinearity(f in arb_ratfunc(3), a in arb_oreop(2, 2), b in arb_oreop(2, 2)) {
            let lhs = (&a + &b).scale(&f);
            let rhs = &a.scale(&f) + &b.scale(&f);
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(
                a.scale(&f),
                &OreOp::from_ratfunc(f) * &a
            );
        }
    }
}
