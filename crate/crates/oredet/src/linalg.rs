//! Exact linear algebra over the commutative field K = Q(x).
//!
//! Determinants run fraction-free: each row is cleared to polynomials,
//! Bareiss one-step elimination keeps every intermediate in Q[x] with an
//! exact division, and the row multipliers are divided back out at the
//! end. `det_cofactor` is a deliberately separate route used to
//! cross-check the elimination.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// A square matrix of rational functions, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncMatrix {
    n: usize,
    entries: Vec<RatFunc>,
}

impl FuncMatrix {
    pub fn new(n: usize, entries: Vec<RatFunc>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(FuncMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        Ok(FuncMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(n: usize) -> Self {
        FuncMatrix {
            n,
            entries: vec![RatFunc::zero(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RatFunc]> {
        self.entries.chunks(self.n)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.n {
            self.entries.swap(i * self.n + k, j * self.n + k);
        }
    }

    /// Replaces row `i` with the given entries.
    pub fn set_row(&mut self, i: usize, row: Vec<RatFunc>) {
        assert_eq!(row.len(), self.n);
        for (k, v) in row.into_iter().enumerate() {
            self.entries[i * self.n + k] = v;
        }
    }

    /// True when every entry lies in R = Q[x].
    pub fn in_subring(&self) -> bool {
        self.entries.iter().all(RatFunc::is_polynomial)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det_fraction_free(&self) -> RatFunc {
        let n = self.n;
        if n == 0 {
            return RatFunc::one();
        }

        // clear each row to polynomials, remembering the multipliers
        let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n);
        let mut multiplier = Poly::one();
        for i in 0..n {
            let mut den_lcm = Poly::one();
            for j in 0..n {
                den_lcm = den_lcm.lcm(self.at(i, j).den());
            }
            let row = (0..n)
                .map(|j| {
                    let e = self.at(i, j);
                    let cof = den_lcm.exact_div(e.den()).expect("lcm divides");
                    &cof * e.num()
                })
                .collect();
            rows.push(row);
            multiplier = &multiplier * &den_lcm;
        }

        let mut sign = 1i64;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if rows[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !rows[r][k].is_zero()) else {
                    return RatFunc::zero();
                };
                rows.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&rows[k][k] * &rows[i][j]) - &(&rows[i][k] * &rows[k][j]);
                    rows[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                rows[i][k] = Poly::zero();
            }
            prev = rows[k][k].clone();
        }

        let det_poly = rows[n - 1][n - 1].scale(&crate::rational::rat_int(sign));
        RatFunc::new(det_poly, multiplier).expect("multiplier is nonzero")
    }

    /// Determinant by cofactor expansion along the first row.
    ///
    /// Exponential; kept as an independent oracle for small sizes.
    pub fn det_cofactor(&self) -> RatFunc {
        match self.n {
            0 => return RatFunc::one(),
            1 => return self.at(0, 0).clone(),
            _ => {}
        }
        let mut acc = RatFunc::zero();
        for j in 0..self.n {
            let cof = self.at(0, j);
            if cof.is_zero() {
                continue;
            }
            let minor = self.minor(0, j);
            let term = cof * &minor.det_cofactor();
            if j % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    fn minor(&self, row: usize, col: usize) -> FuncMatrix {
        let entries = (0..self.n)
            .filter(|&i| i != row)
            .flat_map(|i| {
                (0..self.n)
                    .filter(|&j| j != col)
                    .map(move |j| self.at(i, j).clone())
            })
            .collect();
        FuncMatrix {
            n: self.n - 1,
            entries,
        }
    }

    /// A nonzero vector `c` with `sum_i c[i] * row_i = 0`, or `None` if the
    /// rows are independent.
    ///
    /// Deterministic: reduced echelon form of the transpose, first free
    /// column set to one.
    pub fn left_kernel_vector(&self) -> Option<Vec<RatFunc>> {
        let n = self.n;
        // t = transpose; a left kernel of self is a right kernel of t
        let mut t: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(j, i).clone()).collect())
            .collect();

        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut next_row = 0;
        for col in 0..n {
            let Some(pivot) = (next_row..n).find(|&r| !t[r][col].is_zero()) else {
                continue;
            };
            t.swap(next_row, pivot);
            let inv = t[next_row][col].recip().expect("pivot is nonzero");
            for j in col..n {
                t[next_row][j] = &t[next_row][j] * &inv;
            }
            for r in 0..n {
                if r == next_row || t[r][col].is_zero() {
                    continue;
                }
                let factor = t[r][col].clone();
                for j in col..n {
                    let delta = &factor * &t[next_row][j];
                    t[r][j] = &t[r][j] - &delta;
                }
            }
            pivot_cols.push(col);
            next_row += 1;
        }

        let free_col = (0..n).find(|c| !pivot_cols.contains(c))?;
        let mut kernel = vec![RatFunc::zero(); n];
        kernel[free_col] = RatFunc::one();
        for (row, &col) in pivot_cols.iter().enumerate() {
            kernel[col] = -&t[row][free_col];
        }
        Some(kernel)
    }
}
