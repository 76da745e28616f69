//! The Dieudonné determinant of a matrix over K[d].
//!
//! The determinant of an upper triangular matrix is the product of the
//! diagonal leading coefficients times a formal symbol raised to the sum
//! of the diagonal orders. A general matrix is brought to that shape with
//! swap and addmul operations only, so the result differs from the
//! original determinant by at most the tracked sign:
//!
//! - swapping two rows negates the determinant,
//! - adding a left K[d]-multiple of one row to another leaves it fixed.
//!
//! Per column, the elimination repeatedly right-divides the entries at or
//! below the pivot by the one of minimal order until a single nonzero
//! entry survives. Each pass strictly lowers the orders involved, so the
//! loop terminates.

use std::fmt;

use crate::error::Result;
use crate::matrix::{OreMatrix, RowOp, RowOpTranscript};
use crate::order::OrderValue;
use crate::ratfunc::RatFunc;

/// A Dieudonné determinant `det_1 * lambda^d`.
///
/// `coeff` is the unit part in K, `order` the power of the formal symbol.
/// A zero determinant is `(0, -infinity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DieudonneDet {
    pub coeff: RatFunc,
    pub order: OrderValue,
}

impl DieudonneDet {
    pub fn zero() -> Self {
        DieudonneDet {
            coeff: RatFunc::zero(),
            order: OrderValue::NegInf,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl fmt::Display for DieudonneDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "det_1 = {}, d = {}", self.coeff, self.order)
    }
}

/// Result of bringing a matrix to upper triangular form.
#[derive(Clone, Debug)]
pub struct Triangularization {
    pub matrix: OreMatrix,
    pub sign: i32,
    pub transcript: RowOpTranscript,
}

/// Reduces `m` to upper triangular form using only swap and addmul
/// operations, so `det T = sign * det m`.
pub fn triangularize(m: &OreMatrix) -> Triangularization {
    let n = m.size();
    let mut work = m.clone();
    let mut sign = 1;
    let mut transcript = RowOpTranscript::new();

    for col in 0..n {
        loop {
            // minimal-order nonzero entry at or below the diagonal
            let mut pivot: Option<(usize, OrderValue)> = None;
            let mut live = 0usize;
            for row in col..n {
                let ord = work.at(row, col).ord();
                if !ord.is_finite() {
                    continue;
                }
                live += 1;
                if pivot.is_none_or(|(_, best)| ord < best) {
                    pivot = Some((row, ord));
                }
            }
            let Some((pivot_row, _)) = pivot else {
                break; // column already clear; diagonal entry stays zero
            };
            if live == 1 {
                if pivot_row != col {
                    let op = RowOp::Swap(col, pivot_row);
                    work.apply_row_op(&op).expect("valid swap");
                    transcript.push(op);
                    sign = -sign;
                }
                break;
            }
            // knock every other live entry down below the pivot's order
            for row in col..n {
                if row == pivot_row || work.at(row, col).is_zero() {
                    continue;
                }
                let (quot, _) = work
                    .at(row, col)
                    .right_divmod(work.at(pivot_row, col))
                    .expect("pivot entry is nonzero");
                let op = RowOp::AddMul {
                    dst: row,
                    src: pivot_row,
                    factor: -quot,
                };
                work.apply_row_op(&op).expect("valid addmul");
                transcript.push(op);
            }
        }
    }

    Triangularization {
        matrix: work,
        sign,
        transcript,
    }
}

/// The Dieudonné determinant of `m`.
///
/// Triangularizes, then multiplies the diagonal leading coefficients and
/// sums the diagonal orders. Any zero diagonal entry collapses the result
/// to `(0, -infinity)`.
pub fn dieudonne_det(m: &OreMatrix) -> DieudonneDet {
    let tri = triangularize(m);
    let mut coeff = RatFunc::from_int(tri.sign as i64);
    let mut order = OrderValue::Finite(0);
    for i in 0..m.size() {
        let entry = tri.matrix.at(i, i);
        if entry.is_zero() {
            return DieudonneDet::zero();
        }
        coeff = &coeff * &entry.leading_coeff();
        order = order + entry.ord();
    }
    DieudonneDet { coeff, order }
}

/// Determinant of `m` computed independently from a transcript replay.
pub fn det_via_replay(m: &OreMatrix) -> Result<DieudonneDet> {
    let tri = triangularize(m);
    let replayed = tri.transcript.replay(m)?;
    if replayed != tri.matrix {
        return Err(crate::error::Error::Internal(
            "transcript replay diverged from triangularization".into(),
        ));
    }
    Ok(dieudonne_det(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::OreOp;
    use crate::poly::Poly;
    use crate::testutil::arb_oreop;
    use proptest::prelude::*;

    fn d() -> OreOp {
        OreOp::partial()
    }

    fn mat(rows: Vec<Vec<OreOp>>) -> OreMatrix {
        OreMatrix::from_rows(rows).unwrap()
    }

    fn det1(m: &OreMatrix) -> RatFunc {
        dieudonne_det(m).coeff
    }

    #[test]
    fn triangular_inputs_are_fixed_points() {
        let m = OreMatrix::identity(2);
        let tri = triangularize(&m);
        assert_eq!(tri.matrix, m);
        assert_eq!(tri.sign, 1);
        assert!(tri.transcript.is_empty());
    }

    #[test]
    fn swap_then_eliminate() {
        let m = mat(vec![vec![d(), OreOp::one()], vec![OreOp::one(), d()]]);
        let tri = triangularize(&m);
        let expected = mat(vec![
            vec![OreOp::one(), d()],
            vec![OreOp::zero(), OreOp::one() - d().pow(2)],
        ]);
        assert_eq!(tri.matrix, expected);
        assert_eq!(tri.sign, -1);
        assert_eq!(tri.transcript.replay(&m).unwrap(), tri.matrix);
    }

    #[test]
    fn equal_rows_force_a_zero_row() {
        let m = mat(vec![vec![d(), d()], vec![d(), d()]]);
        let tri = triangularize(&m);
        assert!(tri.matrix.at(1, 0).is_zero());
        assert!(tri.matrix.at(1, 1).is_zero());
        assert_eq!(dieudonne_det(&m), DieudonneDet::zero());
    }

    #[test]
    fn triangular_product_rule() {
        // [[x d, 1], [0, d^2]] -> det_1 = x, d = 3
        let m = mat(vec![
            vec![OreOp::monomial(RatFunc::x(), 1), OreOp::one()],
            vec![OreOp::zero(), d().pow(2)],
        ]);
        let det = dieudonne_det(&m);
        assert_eq!(det.coeff, RatFunc::x());
        assert_eq!(det.order, OrderValue::Finite(3));
    }

    #[test]
    fn swap_heavy_example() {
        // [[d, 1], [1, d]] -> det_1 = 1, d = 2
        let m = mat(vec![vec![d(), OreOp::one()], vec![OreOp::one(), d()]]);
        let det = dieudonne_det(&m);
        assert_eq!(det.coeff, RatFunc::one());
        assert_eq!(det.order, OrderValue::Finite(2));
    }

    #[test]
    fn near_singular_leading_block() {
        // [[d, d], [d, d+1]] -> det_1 = 1, d = 1
        let m = mat(vec![vec![d(), d()], vec![d(), d() + OreOp::one()]]);
        let det = dieudonne_det(&m);
        assert_eq!(det.coeff, RatFunc::one());
        assert_eq!(det.order, OrderValue::Finite(1));
    }

    #[test]
    fn zero_row_gives_zero_determinant() {
        let m = mat(vec![vec![OreOp::zero(), OreOp::zero()], vec![d(), d()]]);
        assert_eq!(dieudonne_det(&m), DieudonneDet::zero());
    }

    #[test]
    fn skew_entries_need_noncommutative_division() {
        // [[d^2, d], [d, x]] -> det_1 = x - 1, d = 2
        let m = mat(vec![
            vec![d().pow(2), d()],
            vec![d(), OreOp::from_ratfunc(RatFunc::x())],
        ]);
        let det = dieudonne_det(&m);
        let x_minus_1 = RatFunc::from_poly(Poly::from_ints(&[-1, 1]));
        assert_eq!(det.coeff, x_minus_1);
        assert_eq!(det.order, OrderValue::Finite(2));
    }

    fn arb_matrix(n: usize, max_ord: usize, deg: usize) -> impl Strategy<Value = OreMatrix> {
        prop::collection::vec(arb_oreop(max_ord, deg), n * n)
            .prop_map(move |entries| OreMatrix::new(n, entries).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn determinant_is_multiplicative(
            a in arb_matrix(2, 2, 2),
            b in arb_matrix(2, 2, 2),
        ) {
            let (da, db) = (dieudonne_det(&a), dieudonne_det(&b));
            prop_assume!(!da.is_zero() && !db.is_zero());
            let dab = dieudonne_det(&(&a * &b));
            prop_assert_eq!(dab.coeff, &da.coeff * &db.coeff);
            prop_assert_eq!(dab.order, da.order + db.order);
        }

        #[test]
        fn row_swap_negates(a in arb_matrix(3, 2, 2)) {
            let da = dieudonne_det(&a);
            let mut swapped = a.clone();
            swapped.apply_row_op(&RowOp::Swap(0, 2)).unwrap();
            let ds = dieudonne_det(&swapped);
            prop_assert_eq!(ds.coeff, -&da.coeff);
            prop_assert_eq!(ds.order, da.order);
        }

        #[test]
        fn addmul_leaves_determinant_fixed(
            a in arb_matrix(2, 2, 2),
            h in arb_oreop(2, 2),
        ) {
            let da = dieudonne_det(&a);
            let mut shifted = a.clone();
            shifted.apply_row_op(&RowOp::AddMul { dst: 0, src: 1, factor: h }).unwrap();
            prop_assert_eq!(dieudonne_det(&shifted), da);
        }

        #[test]
        fn replay_reproduces_triangular_form(a in arb_matrix(3, 2, 2)) {
            let tri = triangularize(&a);
            prop_assert_eq!(&tri.transcript.replay(&a).unwrap(), &tri.matrix);
            for i in 0..3 {
                for j in 0..i {
                    prop_assert!(tri.matrix.at(i, j).is_zero());
                }
            }
        }
    }
}
