//! Proptest strategies and fixture helpers shared across module tests.

use proptest::prelude::*;

use crate::matrix::OreMatrix;
use crate::ore::OreOp;
use crate::poly::Poly;
use crate::rational::{rat, Rational};
use crate::ratfunc::RatFunc;

/// Builds a matrix from expression strings, e.g. `mat(&[&["d", "1"], &["0", "d"]])`.
pub(crate) fn mat(rows: &[&[&str]]) -> OreMatrix {
    OreMatrix::from_rows(
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|s| crate::expr::parse_operator(s).expect("fixture parses"))
                    .collect()
            })
            .collect(),
    )
    .expect("fixture is square")
}

pub(crate) fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub(crate) fn arb_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_rational(), 0..=max_len).prop_map(Poly::new)
}

pub(crate) fn arb_ratfunc(max_len: usize) -> impl Strategy<Value = RatFunc> {
    (arb_poly(max_len), arb_poly(max_len)).prop_map(|(num, mut den)| {
        if den.is_zero() {
            den = Poly::one();
        }
        RatFunc::new(num, den).unwrap()
    })
}

/// Operators of order at most `max_ord` with coefficient degrees below `deg_len`.
pub(crate) fn arb_oreop(max_ord: usize, deg_len: usize) -> impl Strategy<Value = OreOp> {
    prop::collection::vec(arb_ratfunc(deg_len), 0..=max_ord + 1).prop_map(OreOp::new)
}

/// Operators restricted to R[d], so subring-closure paths are exercised.
pub(crate) fn arb_subring_op(max_ord: usize, deg_len: usize) -> impl Strategy<Value = OreOp> {
    prop::collection::vec(arb_poly(deg_len), 0..=max_ord + 1)
        .prop_map(|ps| OreOp::new(ps.into_iter().map(RatFunc::from_poly).collect()))
}
