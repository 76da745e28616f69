//! Square matrices over K[d] and elementary row operations.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::ore::OreOp;
use crate::ratfunc::RatFunc;

/// An n×n matrix of differential operators, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreMatrix {
    n: usize,
    entries: Vec<OreOp>,
}

impl OreMatrix {
    pub fn new(n: usize, entries: Vec<OreOp>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(OreMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<OreOp>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        Ok(OreMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = OreMatrix {
            n,
            entries: vec![OreOp::zero(); n * n],
        };
        for i in 0..n {
            m[(i, i)] = OreOp::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &OreOp {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[OreOp] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[OreOp]> {
        self.entries.chunks(self.n)
    }

    /// True when every entry lies in R[d].
    pub fn in_subring(&self) -> bool {
        self.entries.iter().all(OreOp::in_subring)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.n {
            self.entries.swap(i * self.n + k, j * self.n + k);
        }
    }

    /// Applies one elementary row operation in place.
    pub fn apply_row_op(&mut self, op: &RowOp) -> Result<()> {
        match op {
            RowOp::Swap(i, j) => {
                self.check_row(*i)?;
                self.check_row(*j)?;
                self.swap_rows(*i, *j);
            }
            RowOp::Scale(i, c) => {
                self.check_row(*i)?;
                if c.is_zero() {
                    return Err(Error::ZeroScale);
                }
                for k in 0..self.n {
                    self.entries[i * self.n + k] = self.entries[i * self.n + k].scale(c);
                }
            }
            RowOp::AddMul { dst, src, factor } => {
                self.check_row(*dst)?;
                self.check_row(*src)?;
                if dst == src {
                    return Err(Error::SameRow);
                }
                for k in 0..self.n {
                    let term = factor * self.at(*src, k);
                    self.entries[dst * self.n + k] = &self.entries[dst * self.n + k] + &term;
                }
            }
        }
        Ok(())
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: i,
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for OreMatrix {
    type Output = OreOp;
    fn index(&self, (i, j): (usize, usize)) -> &OreOp {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for OreMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut OreOp {
        &mut self.entries[i * self.n + j]
    }
}

impl Mul for &OreMatrix {
    type Output = OreMatrix;
    fn mul(self, rhs: &OreMatrix) -> OreMatrix {
        assert_eq!(self.n, rhs.n, "matrix sizes must agree");
        let n = self.n;
        let mut entries = vec![OreOp::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = OreOp::zero();
                for k in 0..n {
                    acc = &acc + &(self.at(i, k) * rhs.at(k, j));
                }
                entries[i * n + j] = acc;
            }
        }
        OreMatrix { n, entries }
    }
}

/// One elementary row operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOp {
    /// Exchange rows `i` and `j`; negates the determinant.
    Swap(usize, usize),
    /// Multiply row `i` on the left by a nonzero function.
    Scale(usize, RatFunc),
    /// `row dst += factor * row src` with `factor` in K[d]; determinant unchanged.
    AddMul {
        dst: usize,
        src: usize,
        factor: OreOp,
    },
}

/// An ordered, replayable list of elementary row operations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowOpTranscript {
    ops: Vec<RowOp>,
}

impl RowOpTranscript {
    pub fn new() -> Self {
        RowOpTranscript { ops: vec![] }
    }

    pub fn push(&mut self, op: RowOp) {
        self.ops.push(op);
    }

    pub fn ops(&self) -> &[RowOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Applies every operation to a copy of `m`, in order.
    pub fn replay(&self, m: &OreMatrix) -> Result<OreMatrix> {
        let mut out = m.clone();
        for op in &self.ops {
            out.apply_row_op(op)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> OreOp {
        OreOp::partial()
    }

    fn one() -> OreOp {
        OreOp::one()
    }

    fn m2(a: OreOp, b: OreOp, c: OreOp, e: OreOp) -> OreMatrix {
        OreMatrix::from_rows(vec![vec![a, b], vec![c, e]]).unwrap()
    }

    #[test]
    fn swap_exchanges_rows() {
        let mut m = m2(d(), one(), one(), d());
        m.apply_row_op(&RowOp::Swap(0, 1)).unwrap();
        assert_eq!(m, m2(one(), d(), d(), one()));
    }

    #[test]
    fn addmul_matches_hand_computation() {
        // row2 <- row2 - d*row1 on [[1,d],[d,1]] gives [[1,d],[0,1-d^2]]
        let mut m = m2(one(), d(), d(), one());
        m.apply_row_op(&RowOp::AddMul {
            dst: 1,
            src: 0,
            factor: -d(),
        })
        .unwrap();
        let expected = m2(one(), d(), OreOp::zero(), one() - d().pow(2));
        assert_eq!(m, expected);
    }

    #[test]
    fn scale_multiplies_row_on_the_left() {
        let mut m = m2(d(), OreOp::zero(), OreOp::zero(), one());
        m.apply_row_op(&RowOp::Scale(0, RatFunc::x())).unwrap();
        assert_eq!(m.at(0, 0), &OreOp::monomial(RatFunc::x(), 1));
        assert_eq!(m.at(1, 1), &one());
    }

    #[test]
    fn invalid_row_ops_are_rejected() {
        let mut m = m2(d(), one(), one(), d());
        assert!(matches!(
            m.apply_row_op(&RowOp::Scale(0, RatFunc::zero())),
            Err(Error::ZeroScale)
        ));
        assert!(matches!(
            m.apply_row_op(&RowOp::AddMul {
                dst: 1,
                src: 1,
                factor: d()
            }),
            Err(Error::SameRow)
        ));
    }

    #[test]
    fn row_op_equals_elementary_left_multiplication() {
        let m = m2(d(), one(), OreOp::from_ratfunc(RatFunc::x()), d().pow(2));

        let mut swapped = m.clone();
        swapped.apply_row_op(&RowOp::Swap(0, 1)).unwrap();
        let mut e = OreMatrix::identity(2);
        e.swap_rows(0, 1);
        assert_eq!(swapped, &e * &m);

        let mut added = m.clone();
        added
            .apply_row_op(&RowOp::AddMul {
                dst: 1,
                src: 0,
                factor: d(),
            })
            .unwrap();
        let mut e = OreMatrix::identity(2);
        e[(1, 0)] = d();
        assert_eq!(added, &e * &m);
    }

    #[test]
    fn transcript_replays_in_order() {
        let m = m2(d(), one(), one(), d());
        let mut t = RowOpTranscript::new();
        t.push(RowOp::Swap(0, 1));
        t.push(RowOp::AddMul {
            dst: 1,
            src: 0,
            factor: -d(),
        });
        let replayed = t.replay(&m).unwrap();
        let expected = m2(one(), d(), OreOp::zero(), one() - d().pow(2));
        assert_eq!(replayed, expected);
    }
}
