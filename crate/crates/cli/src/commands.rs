use std::path::Path;

use serde_json::{json, Value};

use multicommon::counterexamples::tuner::Route;
use multicommon::counterexamples::{assemble, round_to_set, tune_parameters, TuneGrid, TuneOutcome};
use multicommon::{
    degenerate_count, min_coloring, monochromatic_pair, multiplicity_structured, DensityTable, Error, FormSystem,
    GroupSpec, Mode,
};

use crate::config::{config_error, resolve_function, Function, GroupConfig, JobConfig};
use crate::output::{Artifact, CsvRow, Outcome};
use crate::{Failure, VERDICT_TOLERANCE};

const DEFAULT_MAX_TABLE: u64 = 100_000;

fn threshold_verdict(value: f64, threshold: f64) -> &'static str {
    if (value - threshold).abs() <= VERDICT_TOLERANCE {
        "at-threshold"
    } else if value < threshold {
        "below-threshold"
    } else {
        "above-threshold"
    }
}

fn one_based(q: [usize; 4]) -> [usize; 4] {
    q.map(|i| i + 1)
}

/// Distinctness, injectivity, 4-AP and proportional pair of `system`.
fn structure(system: &FormSystem, lines: &mut Vec<String>) -> Value {
    let four_ap = if system.d() < 4 {
        lines.push("4-AP: no 4-AP possible (d<4)".into());
        json!({"quadruple": null, "note": "no 4-AP possible (d<4)"})
    } else {
        match system.detect_four_ap() {
            Ok(Some(q)) => {
                let q = one_based(q);
                lines.push(format!("4-AP: forms {q:?}"));
                json!({"quadruple": q, "note": null})
            }
            Ok(None) => {
                lines.push("4-AP: none".into());
                json!({"quadruple": null, "note": "no four forms in arithmetic progression"})
            }
            Err(e) => json!({"quadruple": null, "note": e.to_string()}),
        }
    };
    let proportional = match system.detect_proportional_pair() {
        Ok(Some(pair)) => {
            lines.push(format!("proportional pair: forms ({}, {}) with factor {}", pair.i + 1, pair.j + 1, pair.c));
            json!({
                "pair": [pair.i + 1, pair.j + 1],
                "factor": pair.c,
                "negation": pair.negation.map(|(i, j)| [i + 1, j + 1]),
            })
        }
        Ok(None) => Value::Null,
        Err(e) => json!({"note": e.to_string()}),
    };
    lines.push(format!(
        "d = {}, r = {}, distinct: {}, injective: {}",
        system.d(),
        system.r(),
        system.is_distinct(),
        system.is_injective()
    ));
    json!({
        "moduli": system.group().moduli(),
        "d": system.d(),
        "r": system.r(),
        "distinct": system.is_distinct(),
        "injective": system.is_injective(),
        "four_ap": four_ap,
        "proportional_pair": proportional,
    })
}

fn multiplicity_kind(system: &FormSystem) -> &'static str {
    if system.is_injective() {
        "instance-set"
    } else {
        "parameter-space"
    }
}

pub fn analyze(config: &JobConfig, base: &Path) -> Result<Outcome, Failure> {
    let spec = config.function.as_ref().ok_or_else(|| config_error("missing field `function`"))?;
    let group = match &config.group {
        Some(_) => Some(config.group()?),
        None => None,
    };
    let mut lines = Vec::new();
    match resolve_function(spec, group.as_ref(), base)? {
        Function::Table(f) => {
            let system = config.system(f.group().clone())?;
            let structure = structure(&system, &mut lines);
            let pair = monochromatic_pair(&system, &f)?;
            let parameters = system.group().check_enumeration(system.r())?;
            let degenerate = degenerate_count(&system)?;
            let verdict = threshold_verdict(pair.sum, pair.threshold);
            lines.push(format!("t(f) = {:.15}, t(1-f) = {:.15}", pair.t_f, pair.t_complement));
            lines.push(format!("t(f) + t(1-f) = {:.15}, threshold 2^(1-d) = {:.15}", pair.sum, pair.threshold));
            lines.push(format!("parameters |G|^r = {parameters}, degenerate parameters {degenerate}"));
            Ok(Outcome::new(
                json!({
                    "system": structure,
                    "multiplicity": multiplicity_kind(&system),
                    "t_f": pair.t_f,
                    "t_complement": pair.t_complement,
                    "pair_sum": pair.sum,
                    "threshold": pair.threshold,
                    "margin": pair.margin(),
                    "truncation_bound": 0.0,
                    "inequality": {"lhs": pair.sum, "rhs": pair.threshold, "relation": verdict},
                    "parameters": parameters,
                    "degenerate_parameters": degenerate,
                }),
                verdict,
                lines,
            ))
        }
        Function::Recipe(recipe) => {
            let target = recipe.target_group().map_err(|e| config_error(e.to_string()))?;
            let target = match config.options.enumeration_cap {
                Some(cap) => target.with_enumeration_cap(cap),
                None => target,
            };
            if let Some(g) = &group {
                if g.moduli() != target.moduli() {
                    return Err(config_error(format!(
                        "recipe lives on Z{:?} but `group` is Z{:?}",
                        target.moduli(),
                        g.moduli()
                    )));
                }
            }
            let system = config.system(target)?;
            let structure = structure(&system, &mut lines);
            let cap = config.options.subset_cap.unwrap_or(system.d());
            let value = multiplicity_structured(&system, &recipe, cap)?;
            let verdict = threshold_verdict(value.value, value.threshold);
            lines.push(format!(
                "t(f) + t(1-f) = {:.15} (truncation bound {:.3e}), threshold 2^(1-d) = {:.15}",
                value.value, value.truncation_bound, value.threshold
            ));
            lines.push(format!("margin = {:.15e}", value.margin()));
            Ok(Outcome::new(
                json!({
                    "system": structure,
                    "multiplicity": multiplicity_kind(&system),
                    "t_f": null,
                    "t_complement": null,
                    "pair_sum": value.value,
                    "threshold": value.threshold,
                    "margin": value.margin(),
                    "truncation_bound": value.truncation_bound,
                    "subset_cap": value.subset_cap,
                    "inequality": {"lhs": value.value, "rhs": value.threshold, "relation": verdict},
                    "recipe": {"mode": recipe.mode, "p": recipe.p, "n": recipe.n, "alpha": recipe.alpha, "beta": recipe.beta},
                }),
                verdict,
                lines,
            ))
        }
    }
}

fn tune_grid(config: &JobConfig, implied_n: Option<usize>) -> Result<TuneGrid, Failure> {
    let o = &config.options;
    let mut grid = TuneGrid::default();
    if let Some(b) = &o.betas {
        grid.betas = b.clone();
    }
    if let Some(k) = o.alpha_steps {
        grid.alpha_steps = k;
    }
    match (implied_n, &o.ns) {
        (Some(_), Some(_)) => return Err(config_error("give either `group.vector.n` or `options.ns`, not both")),
        (Some(n), None) => grid.ns = vec![n],
        (None, Some(ns)) => grid.ns = ns.clone(),
        (None, None) => {}
    }
    grid.subset_cap = o.subset_cap;
    Ok(grid)
}

fn counterexample_error(e: Error) -> Failure {
    match e {
        Error::NotVectorMode(_) | Error::IndistinctForms(_) | Error::NoConstruction(_) => Failure::new(4, e.to_string()),
        e => e.into(),
    }
}

fn with_cap(group: GroupSpec, config: &JobConfig) -> GroupSpec {
    match config.options.enumeration_cap {
        Some(cap) => group.with_enumeration_cap(cap),
        None => group,
    }
}

/// Table, rounding and certificate for the constructed `f` on `system`'s group.
fn realize(
    config: &JobConfig,
    system: &FormSystem,
    table: impl FnOnce() -> multicommon::Result<DensityTable>,
    value: f64,
    artifacts: &mut Vec<Artifact>,
    lines: &mut Vec<String>,
) -> Result<Value, Failure> {
    let group = system.group();
    let order = group.order();
    let max_table = config.options.max_table.unwrap_or(DEFAULT_MAX_TABLE);
    let small = order <= max_table as u128 && group.is_enumerable();
    let wants_round = config.options.round;
    let roundable = small && group.check_enumeration(system.r()).is_ok();
    let bound = (system.d() * (system.d() - 1) / 2) as f64 / order as f64;
    let symbolic = || {
        let (p, k) = group.vector_params().unwrap_or((0, 0));
        json!({
            "status": "symbolic",
            "group_order": if p > 0 { format!("{p}^{k}") } else { order.to_string() },
            "rhs": value + bound,
            "statement": "some set A has t(1_A) + t(1_{A^C}) <= t(f) + t(1-f) + C(d,2)/|G|",
        })
    };
    if !small {
        if wants_round == Some(true) {
            return Err(Failure::new(
                3,
                format!("rounding needs the table on |G| = {order}; raise `options.max_table` or the enumeration cap"),
            ));
        }
        lines.push(format!("|G| = {order} is too large to tabulate; certificate reported symbolically"));
        return Ok(json!({"table": null, "rounding": symbolic()}));
    }
    let f = table()?;
    artifacts.push(Artifact::json(
        "table.json",
        &json!({"moduli": group.moduli(), "values": f.values()}),
    ));
    let rounding = if wants_round == Some(false) {
        Value::Null
    } else if roundable && system.is_distinct() && group.is_vector() {
        let rounded = round_to_set(&f, system).map_err(counterexample_error)?;
        lines.push(format!(
            "rounded set |A| = {}: t(1_A) + t(1_(A^C)) = {:.15} <= {:.15}: {}",
            rounded.members.len(),
            rounded.lhs,
            rounded.rhs,
            rounded.certificate_holds()
        ));
        let report = json!({
            "status": "computed",
            "members": rounded.members,
            "lhs": rounded.lhs,
            "rhs": rounded.rhs,
            "slack": rounded.slack,
            "certificate_holds": rounded.certificate_holds(),
            "moves": rounded.psi_trace.len() - 1,
        });
        artifacts.push(Artifact::json("rounded_set.json", &report));
        report
    } else if wants_round == Some(true) {
        return Err(round_failure(system).unwrap_or_else(|| {
            Failure::new(3, format!("rounding needs |G|^r within the enumeration cap ({})", group.enumeration_cap()))
        }));
    } else {
        symbolic()
    };
    Ok(json!({"table": "table.json", "rounding": rounding}))
}

fn round_failure(system: &FormSystem) -> Option<Failure> {
    if !system.group().is_vector() {
        return Some(Failure::new(4, "rounding needs a vector-space group F_p^n"));
    }
    if !system.is_distinct() {
        return Some(Failure::new(
            4,
            "rounding needs pairwise distinct forms (non-injective instances are otherwise not rare)",
        ));
    }
    None
}

pub fn counterexample(config: &JobConfig) -> Result<Outcome, Failure> {
    let (mode, p, dimension) = match config.group.as_ref().ok_or_else(|| config_error("missing field `group`"))? {
        GroupConfig::Vector { p, n } => (Mode::Vector, *p, *n),
        GroupConfig::Cyclic { p } => (Mode::Cyclic, *p, None),
        GroupConfig::Moduli(m) => {
            return Err(Failure::new(4, format!("no construction for Z{m:?}: use a vector or cyclic group")))
        }
    };
    let implied_n = match dimension {
        Some(0) | Some(1) => return Err(config_error("vector counterexamples need n >= 2 (one directional coordinate)")),
        Some(n) => Some(n - 1),
        None => None,
    };
    let zp = with_cap(GroupSpec::vector(p, 1).map_err(|e| config_error(e.to_string()))?, config);
    let system = config.system(zp)?;
    if config.options.round == Some(true) {
        if let Some(f) = round_failure(&system) {
            return Err(f);
        }
    }
    let grid = tune_grid(config, implied_n)?;
    let outcome: TuneOutcome = tune_parameters(&system, mode, p, &grid).map_err(counterexample_error)?;
    let mut lines = Vec::new();
    let mut artifacts = Vec::new();
    let structure = structure(&system, &mut lines);

    let (construction, target_dimension, realized) = match (&outcome.route, &outcome.recipe, &outcome.proportional) {
        (Route::FourAp { quadruple }, Some(recipe), _) => {
            lines.push(format!("route: muting construction on the 4-AP {:?}", one_based(*quadruple)));
            artifacts.push(Artifact::json("recipe.json", recipe));
            let target = with_cap(recipe.target_group()?, config);
            let k = target.moduli().len();
            let on_target = system.over(target)?;
            let realized = realize(config, &on_target, || assemble(recipe), outcome.value, &mut artifacts, &mut lines)?;
            (json!({"route": "four_ap", "quadruple": one_based(*quadruple), "recipe": "recipe.json"}), k, realized)
        }
        (Route::Proportional { kind, pair }, _, Some(c)) => {
            lines.push(format!("route: proportional construction on forms ({}, {})", pair.0 + 1, pair.1 + 1));
            artifacts.push(Artifact::json("construction.json", c));
            let group = with_cap(
                match dimension {
                    Some(n) => GroupSpec::vector(p, n)?,
                    None => GroupSpec::vector(p, 1)?,
                },
                config,
            );
            let k = group.moduli().len();
            let on_group = system.over(group.clone())?;
            let realized = realize(config, &on_group, || c.table_on(&group), outcome.value, &mut artifacts, &mut lines)?;
            (
                json!({"route": "proportional", "kind": kind, "pair": [pair.0 + 1, pair.1 + 1], "construction": "construction.json"}),
                k,
                realized,
            )
        }
        _ => unreachable!("the tuner returns the construction matching its route"),
    };

    let uncommon = outcome.margin > outcome.truncation_bound + VERDICT_TOLERANCE;
    let verdict = if uncommon {
        format!("uncommon at (p={p}, n={target_dimension})")
    } else {
        "no margin found at searched grid".to_string()
    };
    lines.push(format!(
        "alpha = {}, beta = {}, t(f) + t(1-f) = {:.15}, threshold {:.15}, margin {:.6e}",
        outcome.alpha, outcome.beta, outcome.value, outcome.threshold, outcome.margin
    ));
    let sweep = outcome.rows.iter().map(|r| CsvRow::from_sweep(r, mode)).collect();
    let mut result = Outcome::new(
        json!({
            "system": structure,
            "construction": construction,
            "mode": mode,
            "p": p,
            "muting_n": outcome.n,
            "dimension": target_dimension,
            "alpha": outcome.alpha,
            "beta": outcome.beta,
            "value": outcome.value,
            "threshold": outcome.threshold,
            "margin": outcome.margin,
            "truncation_bound": outcome.truncation_bound,
            "inequality": {"lhs": outcome.value, "rhs": outcome.threshold, "relation": threshold_verdict(outcome.value, outcome.threshold)},
            "grid": grid,
            "realization": realized,
        }),
        verdict,
        lines,
    );
    result.sweep = sweep;
    result.artifacts = artifacts;
    Ok(result)
}

pub fn min_coloring_command(config: &JobConfig) -> Result<Outcome, Failure> {
    let system = config.system(config.group()?)?;
    let mut lines = Vec::new();
    let structure = structure(&system, &mut lines);
    let best = min_coloring(&system)?;
    let group = system.group();
    let coords: Vec<Vec<u64>> = best.subset.iter().map(|&i| group.coords(i)).collect();
    let verdict = threshold_verdict(best.value, best.threshold);
    lines.push(format!(
        "minimum t(1_A) + t(1_(A^C)) = {:.15} at A = {:?}, threshold {:.15}",
        best.value, best.subset, best.threshold
    ));
    Ok(Outcome::new(
        json!({
            "system": structure,
            "subset": best.subset,
            "subset_coordinates": coords,
            "value": best.value,
            "monochromatic_parameters": best.monochromatic,
            "parameters": best.parameters,
            "threshold": best.threshold,
            "inequality": {"lhs": best.value, "rhs": best.threshold, "relation": verdict},
        }),
        verdict,
        lines,
    ))
}
