//! Total order, majorants, characteristic matrices, and degeneracy degree.
//!
//! The total order of a matrix is the maximum over permutations of the
//! summed entry orders, a maximum-weight assignment with zero entries
//! forbidden. The dual potentials of that assignment are exactly an
//! optimal majorant, which is how `optimal_majorant` realizes one
//! constructively instead of searching.
//!
//! A majorant `(N, h)` bounds entry orders by `ord(A[i][j]) <= N[j] - h[i]`
//! and is optimal when `sum(N) - sum(h)` equals the total order. Its
//! characteristic matrix holds the coefficient of `d^(N[j]-h[i])` in each
//! entry; since every permutation term of that matrix carries the same
//! power `sum(N) - sum(h)` of the formal symbol, its determinant reduces
//! to one commutative determinant over K times that power.

use std::fmt;

use itertools::Itertools;

use crate::assignment;
use crate::dieudonne::{dieudonne_det, DieudonneDet};
use crate::error::{Error, Result};
use crate::linalg::FuncMatrix;
use crate::matrix::OreMatrix;
use crate::order::OrderValue;
use crate::ratfunc::RatFunc;

/// Integer order bounds `(N, h)`: `ord(A[i][j]) <= N[j] - h[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Majorant {
    /// Column bounds, the `N` vector.
    pub col_orders: Vec<i64>,
    /// Row offsets, the `h` vector.
    pub row_orders: Vec<i64>,
}

impl Majorant {
    pub fn new(col_orders: Vec<i64>, row_orders: Vec<i64>) -> Self {
        Majorant {
            col_orders,
            row_orders,
        }
    }

    pub fn size(&self) -> usize {
        self.col_orders.len()
    }

    /// `sum(N) - sum(h)`, an upper bound for the total order.
    pub fn tord_bound(&self) -> i64 {
        self.col_orders.iter().sum::<i64>() - self.row_orders.iter().sum::<i64>()
    }

    /// The shifted majorant `(N + k, h + k)`; bounds and optimality are
    /// unchanged.
    pub fn shifted(&self, k: i64) -> Majorant {
        Majorant {
            col_orders: self.col_orders.iter().map(|&v| v + k).collect(),
            row_orders: self.row_orders.iter().map(|&v| v + k).collect(),
        }
    }

    /// Raises a single column bound, the smallest perturbation that makes
    /// an optimal majorant non-optimal.
    pub fn with_col_increment(&self, j: usize) -> Majorant {
        let mut out = self.clone();
        out.col_orders[j] += 1;
        out
    }
}

impl fmt::Display for Majorant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N = ({}), h = ({})",
            self.col_orders.iter().join(", "),
            self.row_orders.iter().join(", ")
        )
    }
}

/// The coefficient layer of a characteristic matrix.
///
/// Entry `(i, j)` of the full characteristic matrix is
/// `coeffs[i][j] * lambda^(N[j] - h[i])`; `total_power` is the common
/// power `sum(N) - sum(h)` carried by every permutation term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrix {
    pub coeffs: FuncMatrix,
    pub total_power: i64,
}

/// Entry orders as assignment weights; zero entries are forbidden pairs.
fn order_weights(m: &OreMatrix) -> Vec<Vec<Option<i64>>> {
    m.rows()
        .map(|row| row.iter().map(|e| e.ord().finite()).collect())
        .collect()
}

/// Total order via maximum-weight assignment; `-infinity` when every
/// permutation crosses a zero entry.
pub fn total_order(m: &OreMatrix) -> OrderValue {
    match assignment::solve_max(&order_weights(m)) {
        Some(a) => OrderValue::Finite(a.value),
        None => OrderValue::NegInf,
    }
}

/// Brute-force total order by literal enumeration of all permutations.
///
/// Exists solely as an independent oracle; refuses n > 8.
pub fn tord_bruteforce(m: &OreMatrix) -> Result<OrderValue> {
    const LIMIT: usize = 8;
    let n = m.size();
    if n > LIMIT {
        return Err(Error::MatrixTooLarge { n, limit: LIMIT });
    }
    let weights = order_weights(m);
    let best = (0..n)
        .permutations(n)
        .filter_map(|perm| {
            perm.iter()
                .enumerate()
                .map(|(i, &j)| weights[i][j])
                .sum::<Option<i64>>()
        })
        .max();
    Ok(match best {
        Some(v) => OrderValue::Finite(v),
        None => OrderValue::NegInf,
    })
}

/// Checks `ord(A[i][j]) <= N[j] - h[i]` for every entry.
pub fn is_majorant(m: &OreMatrix, maj: &Majorant) -> Result<bool> {
    let n = m.size();
    if maj.col_orders.len() != n || maj.row_orders.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: maj.col_orders.len().min(maj.row_orders.len()),
        });
    }
    for i in 0..n {
        for j in 0..n {
            let bound = OrderValue::Finite(maj.col_orders[j] - maj.row_orders[i]);
            if m.at(i, j).ord() > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An optimal majorant from the assignment duals, normalized to
/// `min(h) = 0`.
///
/// Errors with `StructurallySingular` when the total order is
/// `-infinity`, in which case no majorant is optimal.
pub fn optimal_majorant(m: &OreMatrix) -> Result<Majorant> {
    let solution =
        assignment::solve_max(&order_weights(m)).ok_or(Error::StructurallySingular)?;
    let raw_rows: Vec<i64> = solution.row_duals.iter().map(|&p| -p).collect();
    let shift = -raw_rows.iter().min().copied().unwrap_or(0);
    let maj = Majorant {
        col_orders: solution.col_duals.iter().map(|&q| q + shift).collect(),
        row_orders: raw_rows.iter().map(|&h| h + shift).collect(),
    };
    debug_assert_eq!(maj.tord_bound(), solution.value);
    debug_assert!(is_majorant(m, &maj).unwrap_or(false));
    Ok(maj)
}

/// Coefficient extraction at the majorant's order bounds.
pub fn characteristic_matrix(m: &OreMatrix, maj: &Majorant) -> Result<CharMatrix> {
    if !is_majorant(m, maj)? {
        return Err(Error::NotAMajorant);
    }
    let n = m.size();
    let mut coeffs = FuncMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let k = maj.col_orders[j] - maj.row_orders[i];
            coeffs.set(i, j, m.at(i, j).coeff_at(k));
        }
    }
    Ok(CharMatrix {
        coeffs,
        total_power: maj.tord_bound(),
    })
}

/// Determinant of the characteristic matrix, as `(coefficient, power)`.
///
/// Every permutation term carries the same power of the formal symbol, so
/// the determinant is one commutative determinant over K times
/// `lambda^total_power`. The power is meaningful only when the
/// coefficient is nonzero.
pub fn char_det(m: &OreMatrix, maj: &Majorant) -> Result<(RatFunc, i64)> {
    let cm = characteristic_matrix(m, maj)?;
    Ok((cm.coeffs.det_fraction_free(), cm.total_power))
}

/// Degeneracy degree `tord - d`; requires a nonzero determinant.
pub fn degeneracy_degree(m: &OreMatrix) -> Result<i64> {
    degeneracy_degree_with(m, &dieudonne_det(m))
}

/// As `degeneracy_degree`, reusing an already computed determinant.
pub fn degeneracy_degree_with(m: &OreMatrix, det: &DieudonneDet) -> Result<i64> {
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let d = det.order.expect_finite("order of a nonzero determinant");
    let tord = total_order(m).finite().ok_or_else(|| {
        Error::Internal("nonzero determinant but no finite total order".into())
    })?;
    Ok(tord - d)
}

/// Outcome of checking one sampled majorant against the determinant laws.
#[derive(Clone, Debug)]
pub struct MajorantCheck {
    pub majorant: Majorant,
    pub optimal: bool,
    pub char_coeff: RatFunc,
    pub char_power: i64,
    pub ok: bool,
}

/// Verdict of the majorant/determinant law suite on one matrix.
///
/// The four clauses checked for a matrix with nonzero determinant:
///
/// 1. the degeneracy degree is nonnegative;
/// 2. an optimal majorant exists (and the constructed one is optimal);
/// 3. if `dd >= 1`, the characteristic determinant vanishes for every
///    sampled majorant;
/// 4. if `dd = 0`, the characteristic determinant vanishes for
///    non-optimal samples and equals the Dieudonné determinant (both
///    coefficient and power) for optimal ones.
#[derive(Clone, Debug)]
pub struct MajorantLawReport {
    pub tord: i64,
    pub det_order: i64,
    pub dd: i64,
    pub optimal: Majorant,
    pub nonneg_degeneracy: bool,
    pub optimal_is_tight: bool,
    pub checks: Vec<MajorantCheck>,
    pub passed: bool,
}

/// Runs the law suite on `m` with the given sampled majorants.
pub fn check_majorant_laws(m: &OreMatrix, samples: &[Majorant]) -> Result<MajorantLawReport> {
    let det = dieudonne_det(m);
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let det_order = det.order.expect_finite("order of a nonzero determinant");
    let tord = total_order(m)
        .finite()
        .ok_or_else(|| Error::Internal("nonzero determinant but tord = -infinity".into()))?;
    let dd = tord - det_order;

    let optimal = optimal_majorant(m)?;
    let nonneg_degeneracy = dd >= 0;
    let optimal_is_tight =
        is_majorant(m, &optimal)? && optimal.tord_bound() == tord;

    let mut checks = Vec::with_capacity(samples.len());
    for maj in samples {
        let (coeff, power) = char_det(m, maj)?;
        let maj_optimal = maj.tord_bound() == tord;
        let ok = if dd >= 1 {
            coeff.is_zero()
        } else if maj_optimal {
            coeff == det.coeff && power == det_order
        } else {
            coeff.is_zero()
        };
        checks.push(MajorantCheck {
            majorant: maj.clone(),
            optimal: maj_optimal,
            char_coeff: coeff,
            char_power: power,
            ok,
        });
    }

    let passed = nonneg_degeneracy && optimal_is_tight && checks.iter().all(|c| c.ok);
    Ok(MajorantLawReport {
        tord,
        det_order,
        dd,
        optimal,
        nonneg_degeneracy,
        optimal_is_tight,
        checks,
        passed,
    })
}

/// The standard sample set for the law suite: the optimal majorant, a
/// shifted copy (still optimal), and a single-column perturbation
/// (non-optimal).
pub fn sample_majorants(m: &OreMatrix) -> Result<Vec<Majorant>> {
    let optimal = optimal_majorant(m)?;
    let shifted = optimal.shifted(1);
    let perturbed = optimal.with_col_increment(0);
    Ok(vec![optimal, shifted, perturbed])
}
