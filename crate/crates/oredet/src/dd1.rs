//! Membership certificates for degeneracy degree 1.
//!
//! For a matrix M over R[d] with `dd(M) = 1` and nonzero determinant, the
//! coefficient `det_1 M` lies in R = Q[x], not merely in K. `reduce`
//! establishes this constructively and returns a replayable transcript:
//!
//! 1. extract an optimal majorant and pad M to a uniform one
//!    `(N,...,N, h,...,h)` by right-multiplying columns and
//!    left-multiplying rows by `d` (both preserve `det_1`, raise the
//!    total order and determinant order together, and keep entries in R);
//! 2. split off the coefficient matrices A (order `N-h`) and B (order
//!    `N-h-1`); A is singular because the padded matrix is degenerate;
//! 3. clear a left kernel vector of A into R with content 1: the
//!    relation `sum_i c_i A_i = 0` across the rows of A;
//! 4. swap the first row with the pivot row if `c_1 = 0`, tracking the
//!    determinant sign;
//! 5. scale row 1 by `c_1` and add `c_i` times row i to it. The order-
//!    `N-h` coefficients of row 1 cancel by the relation, so the new
//!    matrix has the majorant `(N,..,N, h+1, h,..,h)`, is non-degenerate,
//!    and its characteristic matrix has rows `(sum_i c_i B_i, A_2, ...,
//!    A_n)` with determinant `sign * c_1 * det_1 M`;
//! 6. expand that determinant by linearity in the first row; each
//!    summand is divisible by `c_1` in R, witnessed by exact polynomial
//!    quotients;
//! 7. cancel `c_1` to obtain `D = det_1 M` as an element of R, and check
//!    it against the independently computed Dieudonné determinant.
//!
//! Any disagreement between a pipeline step and the independent
//! determinant is reported as an internal error rather than papered over.

use crate::dieudonne::{dieudonne_det, DieudonneDet};
use crate::error::{Error, Result};
use crate::linalg::FuncMatrix;
use crate::majorant::{
    degeneracy_degree_with, is_majorant, optimal_majorant, total_order, Majorant,
};
use crate::matrix::OreMatrix;
use crate::order::OrderValue;
use crate::poly::Poly;
use crate::ratfunc::{content_and_primitive, RatFunc};

/// A matrix padded so that a single pair `(N, h)` bounds every entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformForm {
    /// The padded matrix; `det_1` agrees with the original.
    pub matrix: OreMatrix,
    /// Common column bound N.
    pub col_order: i64,
    /// Common row offset h.
    pub row_order: i64,
    /// Number of right-multiplications by `d` applied to each column.
    pub col_pads: Vec<i64>,
    /// Number of left-multiplications by `d` applied to each row.
    pub row_pads: Vec<i64>,
}

impl UniformForm {
    /// The uniform entry order bound `N - h`.
    pub fn level(&self) -> i64 {
        self.col_order - self.row_order
    }

    /// Total number of padding steps; the determinant order grows by this.
    pub fn total_pads(&self) -> i64 {
        self.col_pads.iter().sum::<i64>() + self.row_pads.iter().sum::<i64>()
    }
}

/// The two top coefficient layers of a uniform matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingSplit {
    /// Coefficients of `d^(N-h)`; singular whenever the matrix is degenerate.
    pub leading: FuncMatrix,
    /// Coefficients of `d^(N-h-1)`.
    pub subleading: FuncMatrix,
}

/// A row relation `sum_i coeffs[i] * A_i = 0` with entries in R,
/// content 1, and a positive leading coefficient at the pivot (the least
/// index with a nonzero entry).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVector {
    pub coeffs: Vec<Poly>,
    pub pivot: usize,
}

/// Pads `m` so the optimal majorant becomes uniform.
///
/// Column j is right-multiplied by `d` exactly `max(N) - N[j]` times and
/// row i is left-multiplied by `d` exactly `h[i] - min(h)` times. Both
/// kinds of step multiply the determinant by the determinant of an
/// elementary diagonal `d` matrix, so `det_1` is unchanged while the
/// order and the total order each grow by one per step.
pub fn pad_to_uniform(m: &OreMatrix, maj: &Majorant) -> Result<UniformForm> {
    if !is_majorant(m, maj)? {
        return Err(Error::NotAMajorant);
    }
    let tord = total_order(m)
        .finite()
        .ok_or(Error::StructurallySingular)?;
    if maj.tord_bound() != tord {
        return Err(Error::NotOptimalMajorant);
    }

    let n = m.size();
    let col_order = *maj.col_orders.iter().max().expect("nonempty");
    let row_order = *maj.row_orders.iter().min().expect("nonempty");
    let col_pads: Vec<i64> = maj.col_orders.iter().map(|&nj| col_order - nj).collect();
    let row_pads: Vec<i64> = maj.row_orders.iter().map(|&hi| hi - row_order).collect();

    let mut matrix = m.clone();
    for i in 0..n {
        for j in 0..n {
            let mut entry = matrix[(i, j)].clone();
            for _ in 0..col_pads[j] {
                entry = entry.d_right();
            }
            for _ in 0..row_pads[i] {
                entry = entry.d_left();
            }
            matrix[(i, j)] = entry;
        }
    }

    let uniform = UniformForm {
        matrix,
        col_order,
        row_order,
        col_pads,
        row_pads,
    };

    // the padded matrix must again have (N,..,N, h,..,h) optimal
    let n_i64 = n as i64;
    let uniform_maj = Majorant::new(vec![col_order; n], vec![row_order; n]);
    if !is_majorant(&uniform.matrix, &uniform_maj)? {
        return Err(Error::Internal(
            "padding violated the uniform majorant bound".into(),
        ));
    }
    if total_order(&uniform.matrix) != OrderValue::Finite(n_i64 * uniform.level()) {
        return Err(Error::Internal(
            "padded matrix lost optimality of the uniform majorant".into(),
        ));
    }
    Ok(uniform)
}

/// Extracts the coefficient matrices at orders `N-h` and `N-h-1`.
pub fn leading_split(uniform: &UniformForm) -> LeadingSplit {
    let n = uniform.matrix.size();
    let level = uniform.level();
    let mut leading = FuncMatrix::zero(n);
    let mut subleading = FuncMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            leading.set(i, j, uniform.matrix.at(i, j).coeff_at(level));
            subleading.set(i, j, uniform.matrix.at(i, j).coeff_at(level - 1));
        }
    }
    LeadingSplit {
        leading,
        subleading,
    }
}

/// A kernel relation among the rows of a singular matrix over K, cleared
/// into R with content 1.
pub fn kernel_relation(a: &FuncMatrix) -> Result<RelationVector> {
    let kernel = a.left_kernel_vector().ok_or(Error::NoKernel)?;
    let (_, mut coeffs) = content_and_primitive(&kernel)?;
    let pivot = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("kernel vector is nonzero");
    if coeffs[pivot].leading_sign() < 0 {
        coeffs = coeffs.iter().map(|c| -c).collect();
    }

    let n = a.size();
    for j in 0..n {
        let mut combo = RatFunc::zero();
        for (i, c) in coeffs.iter().enumerate() {
            combo = &combo + &(&RatFunc::from_poly(c.clone()) * a.at(i, j));
        }
        if !combo.is_zero() {
            return Err(Error::Internal(
                "cleared kernel vector no longer annihilates the rows".into(),
            ));
        }
    }
    Ok(RelationVector { coeffs, pivot })
}

/// The full transcript of the reduction, sufficient to re-verify
/// `D = det_1 M` and its membership in R without re-running it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dd1Certificate {
    pub input: OreMatrix,
    /// Independently computed Dieudonné determinant of the input.
    pub det: DieudonneDet,
    pub tord: i64,
    pub dd: i64,
    pub majorant: Majorant,
    pub uniform: UniformForm,
    /// Split of the uniform matrix, before any pivot swap.
    pub split: LeadingSplit,
    /// Kernel relation of `split.leading`, before any pivot swap.
    pub relation: RelationVector,
    /// Row exchanged with row 0 when the relation pivot is not the first row.
    pub row_swap: Option<usize>,
    /// Determinant sign introduced by the swap.
    pub sign: i32,
    /// Characteristic matrix of the reduced matrix:
    /// `(sum_i c_i B_i, A_2, ..., A_n)` after the swap.
    pub char_matrix: FuncMatrix,
    /// `det(char_matrix) = sign * c_1 * D`.
    pub char_det: RatFunc,
    /// First-row-linearity summands `det(M_i)`, rows `(c_i B_i, A_2, ..., A_n)`.
    pub summand_dets: Vec<RatFunc>,
    /// Exact quotients `det(M_i) / c_1`, witnessing divisibility in R.
    pub summand_quotients: Vec<Poly>,
    /// `D = det_1 M`, a polynomial.
    pub result: Poly,
}

/// Applies the pivot swap to working copies of the split and relation.
fn swapped_data(
    split: &LeadingSplit,
    relation: &RelationVector,
) -> (FuncMatrix, FuncMatrix, Vec<Poly>, Option<usize>, i32) {
    let mut leading = split.leading.clone();
    let mut subleading = split.subleading.clone();
    let mut coeffs = relation.coeffs.clone();
    if relation.pivot == 0 {
        (leading, subleading, coeffs, None, 1)
    } else {
        let k = relation.pivot;
        leading.swap_rows(0, k);
        subleading.swap_rows(0, k);
        coeffs.swap(0, k);
        (leading, subleading, coeffs, Some(k), -1)
    }
}

/// Runs the reduction on a matrix over R[d] with `dd = 1`.
pub fn reduce(m: &OreMatrix) -> Result<Dd1Certificate> {
    if !m.in_subring() {
        return Err(Error::NotInSubring);
    }
    let det = dieudonne_det(m);
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let dd = degeneracy_degree_with(m, &det)?;
    if dd != 1 {
        return Err(Error::DegeneracyNotOne { found: dd });
    }
    let tord = total_order(m).expect_finite("total order with nonzero determinant");

    let majorant = optimal_majorant(m)?;
    let uniform = pad_to_uniform(m, &majorant)?;
    if !uniform.matrix.in_subring() {
        return Err(Error::Internal("padding left the subring".into()));
    }
    let level = uniform.level();
    for (i, row) in uniform.matrix.rows().enumerate() {
        let top = row.iter().map(|e| e.ord()).max().expect("nonempty row");
        if top != OrderValue::Finite(level) {
            return Err(Error::Internal(format!(
                "row {i} of the uniform form does not attain order {level}"
            )));
        }
    }

    let split = leading_split(&uniform);
    if !split.leading.in_subring() || !split.subleading.in_subring() {
        return Err(Error::Internal("coefficient split left the subring".into()));
    }
    let relation = match kernel_relation(&split.leading) {
        Ok(rel) => rel,
        Err(Error::NoKernel) => {
            return Err(Error::Internal(
                "leading matrix of a degenerate uniform form must be singular".into(),
            ))
        }
        Err(e) => return Err(e),
    };

    let (leading, subleading, coeffs, row_swap, sign) = swapped_data(&split, &relation);
    let n = m.size();

    // characteristic matrix of the reduced matrix
    let mut char_matrix = leading.clone();
    let top_row: Vec<RatFunc> = (0..n)
        .map(|j| {
            let mut acc = RatFunc::zero();
            for i in 0..n {
                acc = &acc + &(&RatFunc::from_poly(coeffs[i].clone()) * subleading.at(i, j));
            }
            acc
        })
        .collect();
    char_matrix.set_row(0, top_row);
    let char_det = char_matrix.det_fraction_free();

    // first-row linearity: det(char) = sum_i det(M_i)
    let mut summand_dets = Vec::with_capacity(n);
    let mut summand_quotients = Vec::with_capacity(n);
    let lead_coeff = &coeffs[0];
    let mut summand_total = RatFunc::zero();
    for i in 0..n {
        let mut with_row = char_matrix.clone();
        let scaled: Vec<RatFunc> = (0..n)
            .map(|j| &RatFunc::from_poly(coeffs[i].clone()) * subleading.at(i, j))
            .collect();
        with_row.set_row(0, scaled);
        let det_i = with_row.det_fraction_free();
        summand_total = &summand_total + &det_i;
        let poly_i = det_i
            .as_poly()
            .ok_or_else(|| Error::Internal("summand determinant left R".into()))?;
        let quotient = poly_i.exact_div(lead_coeff).map_err(|_| {
            Error::Internal(format!("summand determinant {i} not divisible by c_1"))
        })?;
        summand_dets.push(det_i);
        summand_quotients.push(quotient);
    }
    if summand_total != char_det {
        return Err(Error::Internal(
            "first-row linearity decomposition does not sum to det".into(),
        ));
    }

    // cancel c_1: char_det = sign * c_1 * D
    let char_poly = char_det
        .as_poly()
        .ok_or_else(|| Error::Internal("characteristic determinant left R".into()))?;
    let mut result = char_poly.exact_div(lead_coeff).map_err(|_| {
        Error::Internal("characteristic determinant not divisible by c_1".into())
    })?;
    if sign < 0 {
        result = -result;
    }
    if RatFunc::from_poly(result.clone()) != det.coeff {
        return Err(Error::Internal(
            "reduced determinant disagrees with the Dieudonné determinant".into(),
        ));
    }

    Ok(Dd1Certificate {
        input: m.clone(),
        det,
        tord,
        dd,
        majorant,
        uniform,
        split,
        relation,
        row_swap,
        sign,
        char_matrix,
        char_det,
        summand_dets,
        summand_quotients,
        result,
    })
}

impl Dd1Certificate {
    /// Re-verifies the certificate: replays the pipeline and compares all
    /// stored intermediates, then re-checks the arithmetic identities of
    /// the stored data itself.
    pub fn verify(&self) -> Result<()> {
        let fresh = reduce(&self.input)?;
        if fresh != *self {
            return Err(Error::Internal(
                "replaying the reduction does not reproduce the certificate".into(),
            ));
        }
        self.check_identities()
    }

    /// Checks the certificate's internal identities without re-running
    /// the reduction (suitable for certificates read back from disk).
    pub fn check_identities(&self) -> Result<()> {
        let n = self.input.size();
        let fail = |msg: &str| Err(Error::Internal(msg.into()));

        if self.dd != 1 || self.det.is_zero() {
            return fail("certificate must describe a dd = 1 matrix");
        }

        // the relation annihilates the rows of the split
        let rel_check = kernel_relation(&self.split.leading)?;
        if rel_check != self.relation {
            return fail("relation vector does not match the leading matrix");
        }

        let (leading, subleading, coeffs, row_swap, sign) =
            swapped_data(&self.split, &self.relation);
        if row_swap != self.row_swap || sign != self.sign {
            return fail("pivot swap bookkeeping is inconsistent");
        }

        // stored characteristic matrix matches the split and relation
        for j in 0..n {
            let mut acc = RatFunc::zero();
            for i in 0..n {
                acc = &acc + &(&RatFunc::from_poly(coeffs[i].clone()) * subleading.at(i, j));
            }
            if &acc != self.char_matrix.at(0, j) {
                return fail("first characteristic row does not match sum c_i B_i");
            }
            for i in 1..n {
                if self.char_matrix.at(i, j) != leading.at(i, j) {
                    return fail("characteristic rows do not match the leading matrix");
                }
            }
        }

        if self.char_matrix.det_fraction_free() != self.char_det {
            return fail("stored characteristic determinant is wrong");
        }

        // linearity, divisibility, and the final factorization
        let mut total = RatFunc::zero();
        for (i, det_i) in self.summand_dets.iter().enumerate() {
            total = &total + det_i;
            let product = &coeffs[0] * &self.summand_quotients[i];
            if det_i.as_poly() != Some(&product) {
                return fail("summand quotient does not witness divisibility by c_1");
            }
        }
        if total != self.char_det {
            return fail("summand determinants do not sum to the characteristic determinant");
        }

        let mut signed = self.result.clone();
        if self.sign < 0 {
            signed = -signed;
        }
        if self.char_det.as_poly() != Some(&(&coeffs[0] * &signed)) {
            return fail("char_det != sign * c_1 * D");
        }
        if RatFunc::from_poly(self.result.clone()) != self.det.coeff {
            return fail("certificate result differs from det_1");
        }
        Ok(())
    }
}

/// Confirms the membership prediction directly: the determinant
/// coefficient of `m` lies in R. Errors on a zero determinant.
pub fn verify_membership(m: &OreMatrix) -> Result<bool> {
    let det = dieudonne_det(m);
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    Ok(det.coeff.is_polynomial())
}
