//! Grid search over `(α, β, n)` for the largest margin `2^{1-d} - (t(f) + t(1-f))`.

use serde::Serialize;

use crate::counterexamples::directional::directional_function;
use crate::counterexamples::muting::{alpha_cap, muting_atoms};
use crate::counterexamples::proportional::{ProportionalConstruction, ProportionalKind};
use crate::error::{Error, Result};
use crate::forms::FormSystem;
use crate::group::GroupSpec;
use crate::multiplicity::commonness_threshold;
use crate::structured::{CounterexampleRecipe, Expansion, Mode};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuneGrid {
    pub betas: Vec<f64>,
    /// `α` runs over `cap·2^{-k/2}` for `k < alpha_steps`.
    pub alpha_steps: usize,
    /// Muting dimensions tried in vector mode.
    pub ns: Vec<usize>,
    /// Largest subset size kept in the expansion (`None`: all, exact).
    pub subset_cap: Option<usize>,
}

impl Default for TuneGrid {
    fn default() -> Self {
        Self {
            betas: (1..=8).map(|k| 0.5f64.powi(k)).collect(),
            alpha_steps: 12,
            ns: vec![1, 2, 4, 8, 16, 30, 50, 100],
            subset_cap: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub value: f64,
    pub threshold: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    Proportional { kind: ProportionalKind, pair: (usize, usize) },
    FourAp { quadruple: [usize; 4] },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuneOutcome {
    pub route: Route,
    pub mode: Mode,
    pub p: u64,
    pub n: usize,
    pub alpha: f64,
    /// `β` of the muting part; 0 for proportional constructions, which have none.
    pub beta: f64,
    pub value: f64,
    pub threshold: f64,
    pub margin: f64,
    pub truncation_bound: f64,
    /// Every evaluated grid point, starting with the `α = 0` baseline.
    pub rows: Vec<SweepRow>,
    pub recipe: Option<CounterexampleRecipe>,
    pub proportional: Option<ProportionalConstruction>,
}

fn alpha_grid(cap: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..steps).map(move |k| cap * 0.5f64.powf(k as f64 / 2.0))
}

/// Searches for parameters making the system's monochromatic multiplicity
/// fall below `2^{1-d}`.
///
/// Systems with two proportional forms use the proportional construction
/// (its value does not depend on `n`). Otherwise the system must contain a
/// 4-AP and the muting construction is evaluated on `F_p^{n+1}` (vector
/// mode) or `Z_p` (cyclic mode).
pub fn tune_parameters(system: &FormSystem, mode: Mode, p: u64, grid: &TuneGrid) -> Result<TuneOutcome> {
    if grid.alpha_steps == 0 || grid.betas.is_empty() || (mode == Mode::Vector && grid.ns.is_empty()) {
        return Err(Error::InvalidParameter("empty tuning grid".into()));
    }
    if grid.ns.contains(&0) {
        return Err(Error::InvalidParameter("muting dimension n must be at least 1".into()));
    }
    let cap = system.group().enumeration_cap();
    let zp = GroupSpec::vector(p, 1)?.with_enumeration_cap(cap);
    let base = system.over(zp)?;
    let threshold = commonness_threshold(base.d());

    if base.detect_proportional_pair()?.is_some() {
        return tune_proportional(&base, mode, p, grid, threshold);
    }
    let Some(quadruple) = base.detect_four_ap()? else {
        return Err(Error::NoConstruction(
            "the system has neither two proportional forms nor a 4-AP".into(),
        ));
    };
    let (directional, _) = directional_function(p)?;
    let max_f1 = directional.max_abs();
    let first_n = if mode == Mode::Vector { grid.ns[0] } else { 1 };
    let baseline = SweepRow {
        p,
        n: first_n,
        alpha: 0.0,
        beta: grid.betas[0],
        value: threshold,
        threshold,
        margin: 0.0,
    };
    let mut rows = vec![baseline];
    let mut best: Option<(SweepRow, f64)> = None;
    let mut consider = |row: SweepRow, truncation: f64, rows: &mut Vec<SweepRow>| {
        if best.as_ref().map_or(true, |(b, _)| row.margin > b.margin) {
            best = Some((row, truncation));
        }
        rows.push(row);
    };
    let subset_cap = grid.subset_cap.unwrap_or(base.d()).min(base.d());

    match mode {
        Mode::Vector => {
            let lambdas: Vec<i64> = muting_atoms(mode, p, 1.0)?.iter().map(|a| a.lambda).collect();
            let expansion = Expansion::vector(&base, directional.values(), &lambdas, subset_cap)?;
            for &beta in &grid.betas {
                let atoms = muting_atoms(mode, p, beta)?;
                let a_cap = alpha_cap(max_f1, beta);
                for &n in &grid.ns {
                    for alpha in alpha_grid(a_cap, grid.alpha_steps) {
                        let v = expansion.evaluate(alpha, &atoms, n, max_f1 * (2.0 + 2.0 * beta));
                        let row = SweepRow { p, n, alpha, beta, value: v.value, threshold, margin: v.margin() };
                        consider(row, v.truncation_bound, &mut rows);
                    }
                }
            }
        }
        Mode::Cyclic => {
            let zp = GroupSpec::cyclic(p)?.with_enumeration_cap(cap);
            let cyc = system.over(zp)?;
            for &beta in &grid.betas {
                let atoms = muting_atoms(mode, p, beta)?;
                let recipe = CounterexampleRecipe {
                    mode,
                    p,
                    n: 1,
                    directional: directional.values().to_vec(),
                    atoms: atoms.clone(),
                    alpha: 0.0,
                    beta,
                };
                let table = recipe.cyclic_product_table();
                let max_abs = table.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let expansion = Expansion::cyclic(&cyc, &table, subset_cap)?;
                for alpha in alpha_grid(recipe.alpha_cap(), grid.alpha_steps) {
                    let v = expansion.evaluate(alpha, &atoms, 1, max_abs);
                    let row = SweepRow { p, n: 1, alpha, beta, value: v.value, threshold, margin: v.margin() };
                    consider(row, v.truncation_bound, &mut rows);
                }
            }
        }
    }

    let (row, truncation_bound) = best.expect("grid is nonempty");
    let recipe = CounterexampleRecipe {
        mode,
        p,
        n: row.n,
        directional: directional.values().to_vec(),
        atoms: muting_atoms(mode, p, row.beta)?,
        alpha: row.alpha,
        beta: row.beta,
    };
    recipe.validate()?;
    Ok(TuneOutcome {
        route: Route::FourAp { quadruple },
        mode,
        p,
        n: row.n,
        alpha: row.alpha,
        beta: row.beta,
        value: row.value,
        threshold,
        margin: row.margin,
        truncation_bound,
        rows,
        recipe: Some(recipe),
        proportional: None,
    })
}

fn tune_proportional(base: &FormSystem, mode: Mode, p: u64, grid: &TuneGrid, threshold: f64) -> Result<TuneOutcome> {
    let probe = ProportionalConstruction::detect(base, 0.0)?;
    let n = if mode == Mode::Vector { grid.ns[0] } else { 1 };
    let mut rows = vec![SweepRow {
        p,
        n,
        alpha: 0.0,
        beta: 0.0,
        value: threshold,
        threshold,
        margin: 0.0,
    }];
    let mut best: Option<(SweepRow, ProportionalConstruction)> = None;
    for alpha in alpha_grid(probe.alpha_cap(), grid.alpha_steps) {
        let construction = ProportionalConstruction { alpha, ..probe.clone() };
        let v = construction.pair_value(base)?;
        let row = SweepRow {
            p,
            n,
            alpha,
            beta: 0.0,
            value: v.sum,
            threshold,
            margin: v.margin(),
        };
        if best.as_ref().map_or(true, |(b, _)| row.margin > b.margin) {
            best = Some((row, construction));
        }
        rows.push(row);
    }
    let (row, construction) = best.expect("grid is nonempty");
    Ok(TuneOutcome {
        route: Route::Proportional {
            kind: construction.kind,
            pair: construction.pair,
        },
        mode,
        p,
        n,
        alpha: row.alpha,
        beta: 0.0,
        value: row.value,
        threshold,
        margin: row.margin,
        truncation_bound: 0.0,
        rows,
        recipe: None,
        proportional: Some(construction),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::induce_system;

    #[test]
    fn negation_pair_routes_to_proportional() {
        let sys = induce_system(vec![vec![1], vec![-1]], GroupSpec::cyclic(5).unwrap()).unwrap();
        let out = tune_parameters(&sys, Mode::Vector, 5, &TuneGrid::default()).unwrap();
        assert!(matches!(out.route, Route::Proportional { kind: ProportionalKind::Negation, .. }));
        assert_eq!(out.alpha, 0.25);
        assert!((out.margin - 0.25).abs() < 1e-12);
        assert_eq!(out.rows[0].margin, 0.0);
    }

    #[test]
    fn independent_forms_have_no_construction() {
        let sys = induce_system(vec![vec![1, 0], vec![0, 1], vec![1, 1]], GroupSpec::cyclic(5).unwrap()).unwrap();
        assert!(matches!(
            tune_parameters(&sys, Mode::Vector, 5, &TuneGrid::default()),
            Err(Error::NoConstruction(_))
        ));
    }
}
