//! Maximum-weight perfect assignment with dual potentials.
//!
//! Solves `max over permutations s of sum_i w[i][s(i)]` on an n×n integer
//! weight matrix where `None` marks a forbidden pair. Besides the optimal
//! matching it returns integer potentials `(p, q)` that are feasible from
//! above, `p[i] + q[j] >= w[i][j]` for every allowed pair, and tight on
//! the matching, so `sum(p) + sum(q)` equals the optimal value. The
//! potentials are what the majorant construction consumes.
//!
//! Internally this is the O(n^3) shortest-augmenting-path form of the
//! Hungarian algorithm, run on negated weights with forbidden pairs at a
//! large finite cost. A matching that is forced through a forbidden pair
//! means no allowed perfect assignment exists.

/// Cost stand-in for a forbidden pair. Large enough to never be chosen
/// over any allowed assignment, small enough that n of them cannot
/// overflow an i64.
const FORBIDDEN: i64 = 1 << 40;

#[derive(Clone, Debug)]
pub struct Assignment {
    /// Optimal total weight.
    pub value: i64,
    /// Column matched to each row.
    pub row_to_col: Vec<usize>,
    /// Row potentials, feasible from above.
    pub row_duals: Vec<i64>,
    /// Column potentials, feasible from above.
    pub col_duals: Vec<i64>,
}

/// Solves the maximum-weight perfect assignment problem.
///
/// Returns `None` when every perfect assignment crosses a forbidden pair.
pub fn solve_max(weights: &[Vec<Option<i64>>]) -> Option<Assignment> {
    let n = weights.len();
    if n == 0 {
        return Some(Assignment {
            value: 0,
            row_to_col: vec![],
            row_duals: vec![],
            col_duals: vec![],
        });
    }
    assert!(weights.iter().all(|row| row.len() == n), "square matrix");

    let cost = |i: usize, j: usize| -> i64 {
        match weights[i][j] {
            Some(w) => -w,
            None => FORBIDDEN,
        }
    };

    // 1-indexed arrays; index 0 is the virtual column used while growing
    // the alternating tree.
    let inf = i64::MAX / 2;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched_row = vec![0usize; n + 1]; // row matched to a column
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        // augment along the recorded path
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0usize; n];
    for j in 1..=n {
        row_to_col[matched_row[j] - 1] = j - 1;
    }
    let mut value = 0i64;
    for (i, &j) in row_to_col.iter().enumerate() {
        value += weights[i][j]?;
    }

    // max-form potentials: p[i] + q[j] >= w[i][j] with equality on matches
    let row_duals: Vec<i64> = (1..=n).map(|i| -u[i]).collect();
    let col_duals: Vec<i64> = (1..=n).map(|j| -v[j]).collect();

    debug_assert!((0..n).all(|i| {
        (0..n).all(|j| match weights[i][j] {
            Some(w) => row_duals[i] + col_duals[j] >= w,
            None => true,
        })
    }));
    debug_assert_eq!(
        row_duals.iter().sum::<i64>() + col_duals.iter().sum::<i64>(),
        value
    );

    Some(Assignment {
        value,
        row_to_col,
        row_duals,
        col_duals,
    })
}
