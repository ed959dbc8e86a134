//! The muting part `f₂′(x) = Σ_j w_j ω^{λ_j(xᵀx + 1ᵀx)}` on `F_p^n` evaluated
//! on small subconfigurations, against the bounds used for pairs, for
//! non-progression quadruples and for 4-APs.
//!
//! Every average factorizes over the `n` coordinates, so each value is
//! `Σ_λ (∏ w) · S_λ^n` with `S_λ` a one-coordinate average over the span
//! of the forms.

use serde::Serialize;

use crate::arith::{is_prime, rank_mod_p};
use crate::counterexamples::muting::muting_atoms;
use crate::error::{Error, Result};
use crate::forms::FormSystem;
use crate::group::{DensityTable, GroupSpec};
use crate::multiplicity::multiplicity_direct;
use crate::structured::{muting_average, phase_lambda_terms, LambdaTerm, Mode, PhaseAtom};

/// Largest `n` at which the factorized value is also enumerated directly.
pub const DIRECT_CHECK_MAX_N: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MutingInequality {
    /// `|v| ≤ 16/√(p^n)` for two independent forms.
    IndependentPair,
    /// `|v| ≤ 244/√(p^n) + 12β³` for pairwise independent quadruples that are not 4-APs.
    NonProgression,
    /// `v ≥ 2β² - 254/√(p^n)` for 4-APs.
    Progression,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MutingCheck {
    pub label: String,
    pub rows: Vec<Vec<i64>>,
    pub inequality: MutingInequality,
    pub rank: usize,
    pub value: f64,
    /// Total weight of the atom choices whose phase vanishes identically.
    pub main_term: f64,
    /// For 4-APs: the part of `main_term` from `λ = ±(1, -3, 3, -1)` in progression order.
    pub progression_term: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// For non-progressions: `|v|` exceeds `244/√(p^n)`, so the `β³` term is needed.
    pub beta_term_needed: bool,
    /// Brute-force value when `n ≤ DIRECT_CHECK_MAX_N`.
    pub direct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MutingBoundReport {
    pub p: u64,
    pub n: usize,
    pub beta: f64,
    pub checks: Vec<MutingCheck>,
}

impl MutingBoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// Largest gap between factorized and enumerated values.
    pub fn max_direct_gap(&self) -> Option<f64> {
        self.checks
            .iter()
            .filter_map(|c| c.direct.map(|d| (d - c.value).abs()))
            .reduce(f64::max)
    }
}

fn pairwise_independent(rows: &[Vec<i64>], p: u64) -> bool {
    (0..rows.len()).all(|i| (i + 1..rows.len()).all(|j| rank_mod_p(&[rows[i].clone(), rows[j].clone()], p) == 2))
}

/// Test systems at `p`, with 4-APs and pairwise dependent quadruples moved
/// out of the non-progression class.
pub fn muting_catalog(p: u64) -> Result<Vec<(String, Vec<Vec<i64>>, MutingInequality)>> {
    use MutingInequality::*;
    let mut out: Vec<(String, Vec<Vec<i64>>, MutingInequality)> = vec![
        ("(x, y)".into(), vec![vec![1, 0], vec![0, 1]], IndependentPair),
        ("(x, x+y)".into(), vec![vec![1, 0], vec![1, 1]], IndependentPair),
        ("(x+y, x+2y)".into(), vec![vec![1, 1], vec![1, 2]], IndependentPair),
        ("(x, x+y, x+2y, x+3y)".into(), vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]], Progression),
        ("(x, y, 2x-y, -x+2y)".into(), vec![vec![1, 0], vec![0, 1], vec![2, -1], vec![-1, 2]], Progression),
    ];
    let mut quads: Vec<(String, Vec<Vec<i64>>)> = vec![
        ("(x, y, x+y, x+2y)".into(), vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]),
        ("(x, y, x+y, x-y)".into(), vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]),
        ("(x, y, x+2y, 2x+y)".into(), vec![vec![1, 0], vec![0, 1], vec![1, 2], vec![2, 1]]),
        (
            "(x, y, z, x+y+z)".into(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        ),
        (
            "(x, y, z, w)".into(),
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        ),
    ];
    if p == 7 {
        quads.push(("(x, y, 4x-3y, 2x-y)".into(), vec![vec![1, 0], vec![0, 1], vec![4, -3], vec![2, -1]]));
    }
    for (label, rows) in quads {
        if !pairwise_independent(&rows, p) {
            continue;
        }
        let system = FormSystem::new(rows.clone(), GroupSpec::cyclic(p)?)?;
        if system.detect_four_ap()?.is_some() {
            continue;
        }
        out.push((label, rows, NonProgression));
    }
    Ok(out)
}

fn muting_density(group: GroupSpec, atoms: &[PhaseAtom]) -> Result<DensityTable> {
    let p = group.moduli()[0];
    let size = group.size()?;
    let values = (0..size)
        .map(|idx| {
            let q = group.coords(idx).iter().map(|&t| t * t + t).sum::<u64>() % p;
            atoms
                .iter()
                .map(|a| {
                    let e = (a.lambda.rem_euclid(p as i64) as u64 * q) % p;
                    a.weight * (std::f64::consts::TAU * e as f64 / p as f64).cos()
                })
                .sum()
        })
        .collect();
    let bound: f64 = atoms.iter().map(|a| a.weight.abs()).sum();
    DensityTable::new(group, values, -bound, bound)
}

/// Value of the muting average on one system, the trivial-phase weight, and
/// the weight of those trivial choices accepted by `select`.
fn evaluate(
    rows: &[Vec<i64>],
    p: u64,
    n: usize,
    atoms: &[PhaseAtom],
    select: impl Fn(&[i64]) -> bool,
) -> (f64, f64, f64) {
    let reduced: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| row.iter().map(|&a| a.rem_euclid(p as i64) as u64).collect())
        .collect();
    let lambdas: Vec<i64> = atoms.iter().map(|a| a.lambda).collect();
    let terms = phase_lambda_terms(&reduced, p, 1, &lambdas);
    let weight = |t: &&LambdaTerm| t.atoms.iter().map(|&a| atoms[a].weight).product::<f64>();
    let trivial: Vec<&LambdaTerm> = terms.iter().filter(|t| t.trivial).collect();
    let main = trivial.iter().map(weight).sum();
    let selected = trivial
        .iter()
        .filter(|t| select(&t.atoms.iter().map(|&a| atoms[a].lambda).collect::<Vec<_>>()))
        .map(weight)
        .sum();
    (muting_average(&terms, atoms, n), main, selected)
}

/// Value of the muting average on one system, with the trivial-phase weight.
pub fn muting_subconfig_value(rows: &[Vec<i64>], p: u64, n: usize, atoms: &[PhaseAtom]) -> (f64, f64) {
    let (value, main, _) = evaluate(rows, p, n, atoms, |_| false);
    (value, main)
}

/// Checks the three subconfiguration bounds on the catalog at `(p, n, β)`.
pub fn check_muting_subconfig_bounds(p: u64, n: usize, beta: f64) -> Result<MutingBoundReport> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotVectorMode(format!("F_p^n needs an odd prime p, got {p}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let atoms = muting_atoms(Mode::Vector, p, beta)?;
    let scale = (p as f64).powf(-(n as f64) / 2.0);
    let density = if n <= DIRECT_CHECK_MAX_N {
        Some(muting_density(GroupSpec::vector(p, n)?, &atoms)?)
    } else {
        None
    };
    let mut checks = Vec::new();
    for (label, rows, inequality) in muting_catalog(p)? {
        let order = match inequality {
            MutingInequality::Progression => FormSystem::new(rows.clone(), GroupSpec::cyclic(p)?)?.detect_four_ap()?,
            _ => None,
        };
        let (value, main_term, selected) = evaluate(&rows, p, n, &atoms, |lam| {
            order.is_some_and(|o| {
                let seq: Vec<i64> = o.iter().map(|&i| lam[i]).collect();
                seq == [1, -3, 3, -1] || seq == [-1, 3, -3, 1]
            })
        });
        let (lhs, rhs, holds) = match inequality {
            MutingInequality::IndependentPair => (value.abs(), 16.0 * scale, value.abs() <= 16.0 * scale + 1e-12),
            MutingInequality::NonProgression => {
                let rhs = 244.0 * scale + 12.0 * beta.powi(3);
                (value.abs(), rhs, value.abs() <= rhs + 1e-12)
            }
            MutingInequality::Progression => {
                let rhs = 2.0 * beta * beta - 254.0 * scale;
                (value, rhs, value >= rhs - 1e-12)
            }
        };
        let direct = match &density {
            Some(f) => {
                let system = FormSystem::new(rows.clone(), f.group().clone())?;
                Some(multiplicity_direct(&system, f)?)
            }
            None => None,
        };
        checks.push(MutingCheck {
            label,
            rank: rank_mod_p(&rows, p),
            rows,
            inequality,
            value,
            main_term,
            progression_term: order.map(|_| selected),
            lhs,
            rhs,
            holds,
            beta_term_needed: inequality == MutingInequality::NonProgression && value.abs() > 244.0 * scale,
            direct,
        });
    }
    Ok(MutingBoundReport { p, n, beta, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn progression_main_term_is_two_beta_squared() {
        for beta in [1.0, 0.5, 0.25] {
            let report = check_muting_subconfig_bounds(5, 40, beta).unwrap();
            for c in report.checks.iter().filter(|c| c.inequality == MutingInequality::Progression) {
                assert!((c.progression_term.unwrap() - 2.0 * beta * beta).abs() < 1e-15, "{c:?}");
                // mod 5 the multiple 3·(1,-3,3,-1) = (3,1,-1,-3) is trivial too
                assert!((c.main_term - 4.0 * beta * beta).abs() < 1e-15, "{c:?}");
                assert!((c.value - c.main_term).abs() < 1e-9);
            }
            let seven = check_muting_subconfig_bounds(7, 40, beta).unwrap();
            for c in seven.checks.iter().filter(|c| c.inequality == MutingInequality::Progression) {
                assert!((c.main_term - 2.0 * beta * beta).abs() < 1e-15, "{c:?}");
                assert_eq!(c.progression_term, Some(c.main_term));
            }
            assert!(report.all_hold());
        }
    }

    #[test]
    fn seven_anomaly_needs_beta_cubed() {
        let report = check_muting_subconfig_bounds(7, 40, 0.5).unwrap();
        let anomaly = report.checks.iter().find(|c| c.label == "(x, y, 4x-3y, 2x-y)").unwrap();
        assert_eq!(anomaly.inequality, MutingInequality::NonProgression);
        assert!(anomaly.beta_term_needed);
        assert!((anomaly.main_term - 2.0 * 0.125).abs() < 1e-15);
        assert!(anomaly.holds);
    }

    #[test]
    fn factorized_matches_enumeration() {
        for p in [5, 7] {
            for n in [1, 2] {
                let report = check_muting_subconfig_bounds(p, n, 0.5).unwrap();
                assert!(report.max_direct_gap().unwrap() < 1e-8, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn independent_pair_example() {
        let atoms = muting_atoms(Mode::Vector, 5, 0.5).unwrap();
        let (v, main) = muting_subconfig_value(&[vec![1, 0], vec![0, 1]], 5, 4, &atoms);
        assert_eq!(main, 0.0);
        assert!(v.abs() <= 16.0 / 25.0);
    }
}
