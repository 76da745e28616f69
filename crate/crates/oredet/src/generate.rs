//! Seeded random instance generation with degeneracy targeting.
//!
//! Instances are matrices over R[d] (polynomial coefficients, rational
//! scalars). Generation is deterministic under the configured seed.
//! Degeneracy targets are met by rejection sampling; the `dd1` target
//! biases proposals by overwriting one row's leading coefficients with an
//! R-combination of the other rows', which makes the leading matrix
//! singular before the lower-order terms are perturbed.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dieudonne::dieudonne_det;
use crate::error::{Error, Result};
use crate::majorant::degeneracy_degree_with;
use crate::matrix::OreMatrix;
use crate::ore::OreOp;
use crate::poly::Poly;
use crate::rational::{rat, Rational};
use crate::ratfunc::RatFunc;

/// Degeneracy goal for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Any,
    Dd0,
    Dd1,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Any => write!(f, "any"),
            Target::Dd0 => write!(f, "dd0"),
            Target::Dd1 => write!(f, "dd1"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(Target::Any),
            "dd0" => Ok(Target::Dd0),
            "dd1" => Ok(Target::Dd1),
            other => Err(Error::Document(format!(
                "unknown target '{other}' (expected any, dd0, or dd1)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Largest entry order.
    pub max_order: i64,
    /// Largest coefficient polynomial degree.
    pub max_degree: i64,
    /// Magnitude bound for coefficient numerators and denominators.
    pub coeff_bound: i64,
    pub seed: u64,
    pub target: Target,
}

impl GeneratorConfig {
    pub fn new(n: usize, max_order: i64, max_degree: i64, seed: u64, target: Target) -> Self {
        GeneratorConfig {
            n,
            max_order,
            max_degree,
            coeff_bound: 5,
            seed,
            target,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.max_order < 0 || self.max_degree < 0 || self.coeff_bound < 1 {
            return Err(Error::Document(
                "generator bounds must be positive (n >= 1, orders and degrees >= 0)".into(),
            ));
        }
        Ok(())
    }
}

/// A generated instance together with its achieved degeneracy degree
/// (`None` when the determinant is zero).
#[derive(Clone, Debug)]
pub struct GeneratedMatrix {
    pub matrix: OreMatrix,
    pub dd: Option<i64>,
}

fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    let num = rng.random_range(-bound..=bound);
    // mostly integers, occasionally a proper fraction
    let den = if bound >= 2 && rng.random_range(0..4) == 0 {
        rng.random_range(2..=bound)
    } else {
        1
    };
    rat(num, den)
}

fn random_poly(rng: &mut impl Rng, max_degree: i64, bound: i64) -> Poly {
    let degree = rng.random_range(0..=max_degree) as usize;
    let coeffs = (0..=degree).map(|_| random_rational(rng, bound)).collect();
    Poly::new(coeffs)
}

fn random_nonzero_poly(rng: &mut impl Rng, max_degree: i64, bound: i64) -> Poly {
    loop {
        let p = random_poly(rng, max_degree, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random operator with coefficients in R = Q[x].
pub fn random_operator(rng: &mut impl Rng, max_order: i64, max_degree: i64, bound: i64) -> OreOp {
    let order = rng.random_range(0..=max_order) as usize;
    let mut coeffs: Vec<RatFunc> = (0..=order)
        .map(|_| RatFunc::from_poly(random_poly(rng, max_degree, bound)))
        .collect();
    coeffs[order] = RatFunc::from_poly(random_nonzero_poly(rng, max_degree, bound));
    OreOp::new(coeffs)
}

/// A random operator with genuine x-denominators, for exercising K[d]
/// beyond the subring.
pub fn random_operator_in_k(
    rng: &mut impl Rng,
    max_order: i64,
    max_degree: i64,
    bound: i64,
) -> OreOp {
    let order = rng.random_range(0..=max_order) as usize;
    let coeffs = (0..=order)
        .map(|_| {
            let num = random_poly(rng, max_degree, bound);
            let den = if rng.random_range(0..2) == 0 {
                random_nonzero_poly(rng, max_degree.min(1), bound)
            } else {
                Poly::one()
            };
            RatFunc::new(num, den).expect("nonzero denominator")
        })
        .collect();
    OreOp::new(coeffs)
}

fn random_entry(rng: &mut impl Rng, cfg: &GeneratorConfig) -> OreOp {
    if rng.random_range(0..8) == 0 {
        return OreOp::zero();
    }
    random_operator(rng, cfg.max_order, cfg.max_degree, cfg.coeff_bound)
}

fn plain_proposal(rng: &mut impl Rng, cfg: &GeneratorConfig) -> OreMatrix {
    let entries = (0..cfg.n * cfg.n).map(|_| random_entry(rng, cfg)).collect();
    OreMatrix::new(cfg.n, entries).expect("square by construction")
}

/// Proposal biased toward degeneracy degree 1: every entry gets order
/// exactly `k`, then one row's order-`k` coefficients are replaced by an
/// R-combination of the other rows', making the leading matrix singular.
fn degenerate_proposal(rng: &mut impl Rng, cfg: &GeneratorConfig) -> OreMatrix {
    let n = cfg.n;
    let k = cfg.max_order.max(1) as usize;
    let bound = cfg.coeff_bound;

    let mut rows: Vec<Vec<OreOp>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let mut coeffs: Vec<RatFunc> = (0..=k)
                        .map(|_| RatFunc::from_poly(random_poly(rng, cfg.max_degree, bound)))
                        .collect();
                    coeffs[k] =
                        RatFunc::from_poly(random_nonzero_poly(rng, cfg.max_degree, bound));
                    OreOp::new(coeffs)
                })
                .collect()
        })
        .collect();

    let victim = rng.random_range(0..n);
    let combiners: Vec<Poly> = (0..n)
        .map(|i| {
            if i == victim {
                Poly::zero()
            } else {
                random_poly(rng, 1, bound)
            }
        })
        .collect();
    for j in 0..n {
        let mut lead = RatFunc::zero();
        for i in 0..n {
            if i == victim {
                continue;
            }
            let contribution =
                &RatFunc::from_poly(combiners[i].clone()) * &rows[i][j].coeff_at(k as i64);
            lead = &lead + &contribution;
        }
        let mut coeffs: Vec<RatFunc> = (0..k)
            .map(|c| rows[victim][j].coeff_at(c as i64))
            .collect();
        coeffs.push(lead);
        rows[victim][j] = OreOp::new(coeffs);
    }

    OreMatrix::from_rows(rows).expect("square by construction")
}

fn achieved_dd(m: &OreMatrix) -> Option<i64> {
    let det = dieudonne_det(m);
    if det.is_zero() {
        return None;
    }
    degeneracy_degree_with(m, &det).ok()
}

const MAX_ATTEMPTS: usize = 600;

/// Generates a matrix meeting the configured target, deterministically
/// under the seed. Errors when the retry budget runs out.
pub fn random_matrix(cfg: &GeneratorConfig) -> Result<GeneratedMatrix> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match cfg.target {
        Target::Any => {
            let matrix = plain_proposal(&mut rng, cfg);
            let dd = achieved_dd(&matrix);
            Ok(GeneratedMatrix { matrix, dd })
        }
        Target::Dd0 => {
            for _ in 0..MAX_ATTEMPTS {
                let matrix = plain_proposal(&mut rng, cfg);
                if let Some(0) = achieved_dd(&matrix) {
                    return Ok(GeneratedMatrix {
                        matrix,
                        dd: Some(0),
                    });
                }
            }
            Err(Error::GeneratorExhausted {
                target: cfg.target.to_string(),
                attempts: MAX_ATTEMPTS,
            })
        }
        Target::Dd1 => {
            for _ in 0..MAX_ATTEMPTS {
                let matrix = degenerate_proposal(&mut rng, cfg);
                if let Some(1) = achieved_dd(&matrix) {
                    return Ok(GeneratedMatrix {
                        matrix,
                        dd: Some(1),
                    });
                }
            }
            Err(Error::GeneratorExhausted {
                target: cfg.target.to_string(),
                attempts: MAX_ATTEMPTS,
            })
        }
    }
}

/// A convenience stream of deterministic sub-seeds, for harnesses that
/// consume many instances.
pub fn subseeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = StdRng::seed_from_u64(master);
    (0..count).map(|_| rng.random()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, target: Target) -> GeneratorConfig {
        GeneratorConfig::new(2, 2, 2, seed, target)
    }

    #[test]
    fn deterministic_under_seed() {
        let a = random_matrix(&cfg(42, Target::Any)).unwrap();
        let b = random_matrix(&cfg(42, Target::Any)).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.dd, b.dd);
        let c = random_matrix(&cfg(43, Target::Any)).unwrap();
        assert_ne!(a.matrix, c.matrix);
    }

    #[test]
    fn dd0_target_is_met() {
        for seed in 0..5 {
            let out = random_matrix(&cfg(seed, Target::Dd0)).unwrap();
            assert_eq!(out.dd, Some(0));
            assert_eq!(
                crate::majorant::degeneracy_degree(&out.matrix).unwrap(),
                0
            );
        }
    }

    #[test]
    fn dd1_target_is_met() {
        for seed in 0..5 {
            let out = random_matrix(&cfg(seed, Target::Dd1)).unwrap();
            assert_eq!(out.dd, Some(1));
            assert_eq!(
                crate::majorant::degeneracy_degree(&out.matrix).unwrap(),
                1
            );
            assert!(out.matrix.in_subring());
        }
    }

    #[test]
    fn generated_entries_stay_in_subring() {
        for seed in 0..10 {
            let out = random_matrix(&cfg(seed, Target::Any)).unwrap();
            assert!(out.matrix.in_subring());
        }
    }

    #[test]
    fn invalid_bounds_are_rejected() {
        let mut bad = cfg(0, Target::Any);
        bad.n = 0;
        assert!(random_matrix(&bad).is_err());
    }

    #[test]
    fn unreachable_target_reports_exhaustion() {
        // dd = 1 is impossible for 1x1 matrices
        let mut one = cfg(0, Target::Dd1);
        one.n = 1;
        assert!(matches!(
            random_matrix(&one),
            Err(Error::GeneratorExhausted { .. })
        ));
    }

    #[test]
    fn subseeds_are_deterministic() {
        assert_eq!(subseeds(7, 4), subseeds(7, 4));
        assert_ne!(subseeds(7, 4), subseeds(8, 4));
    }
}
