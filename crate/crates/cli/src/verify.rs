use std::collections::BTreeSet;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use multicommon::arith::{independent_subset, is_prime, primes_between};
use multicommon::bounds::{check_muting_subconfig_bounds, check_phase_bounds, CubeAnalyzer};
use multicommon::counterexamples::directional::{directional_guarantee, large_prime_bound, DirectionalSpec};
use multicommon::group::{mixed_phase_average_direct, phase_average_direct};
use multicommon::{
    c_fraction_bound, fraction_census, induce_system, reparametrize, split_ap, APDescriptor, DensityTable, Error,
    FormSystem, GroupSpec,
};

use crate::config::{config_error, JobConfig, Suite};
use crate::output::{CsvRow, Outcome};
use crate::{Failure, INEQUALITY_TOLERANCE};

/// Violating instances kept in the report.
const MAX_LISTED: usize = 100;

struct Tally {
    checked: usize,
    violations: Vec<Value>,
    total_violations: usize,
}

impl Tally {
    fn new() -> Self {
        Self {
            checked: 0,
            violations: Vec::new(),
            total_violations: 0,
        }
    }

    fn check(&mut self, holds: bool, instance: impl FnOnce() -> Value) {
        self.checked += 1;
        if !holds {
            self.total_violations += 1;
            if self.violations.len() < MAX_LISTED {
                self.violations.push(instance());
            }
        }
    }

    fn finish(self, suite: &str, mut results: Value, lines: Vec<String>) -> Outcome {
        let verdict = if self.total_violations == 0 {
            format!("{suite}: 0 violations in {} checks", self.checked)
        } else {
            format!("{suite}: {} violations in {} checks", self.total_violations, self.checked)
        };
        results["checked"] = json!(self.checked);
        results["violation_count"] = json!(self.total_violations);
        results["violations"] = Value::Array(self.violations);
        let mut out = Outcome::new(results, verdict, lines);
        out.violations = self.total_violations;
        out
    }
}

fn to_f64(q: Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn check_primes(primes: &[u64], min: u64) -> Result<(), Failure> {
    match primes.iter().find(|&&p| p < min || !is_prime(p)) {
        Some(p) => Err(config_error(format!("{p} is not a prime >= {min}"))),
        None => Ok(()),
    }
}

pub fn verify(config: &JobConfig, seed: u64) -> Result<Outcome, Failure> {
    let suite = config.options.suite.ok_or_else(|| config_error("missing field `options.suite`"))?;
    match suite {
        Suite::DirectionalSweep => directional_sweep(config),
        Suite::Gauss => gauss(config),
        Suite::PhaseVanish => phase_vanish(config, seed),
        Suite::MutingBounds => muting_bounds(config),
        Suite::Cube => cube(config, seed),
        Suite::Splitting => splitting(config, seed),
        Suite::Reparam => reparam(config, seed),
    }
}

fn directional_sweep(config: &JobConfig) -> Result<Outcome, Failure> {
    let [lo, hi] = config.options.prime_range.unwrap_or([5, 500]);
    let primes = primes_between(lo.max(5), hi);
    let guarantee = directional_guarantee();
    let mut tally = Tally::new();
    let mut rows = Vec::new();
    let mut worst: Option<(u64, Rational64)> = None;
    for &p in &primes {
        let t = DirectionalSpec::for_prime(p)?.four_ap_density();
        let large = (p > 200).then(|| large_prime_bound(p));
        tally.check(t <= guarantee && large.map_or(true, |b| t < b), || {
            json!({"p": p, "t": t.to_string(), "bound": guarantee.to_string(), "large_prime_bound": large.map(|b| b.to_string())})
        });
        if worst.map_or(true, |(_, w)| t > w) {
            worst = Some((p, t));
        }
        rows.push(CsvRow {
            p,
            n: Some(1),
            alpha: None,
            beta: None,
            value: to_f64(t),
            threshold: to_f64(guarantee),
            margin: to_f64(guarantee - t),
        });
    }
    let worst = worst.map(|(p, t)| json!({"p": p, "t": t.to_string(), "t_f64": to_f64(t), "ratio": to_f64(t / guarantee)}));
    let lines = vec![format!("{} primes in [{lo}, {hi}], bound t <= {guarantee}", primes.len())];
    let mut out = tally.finish(
        "directional-sweep",
        json!({"suite": "directional-sweep", "primes": primes.len(), "bound": guarantee.to_string(), "worst": worst}),
        lines,
    );
    out.sweep = rows;
    Ok(out)
}

fn gauss(config: &JobConfig) -> Result<Outcome, Failure> {
    let primes = config.options.primes.clone().unwrap_or_else(|| vec![5, 7, 11, 13]);
    check_primes(&primes, 2)?;
    let ns = config.options.ns.clone().unwrap_or_else(|| vec![1, 2]);
    let include_trivial = config.options.include_trivial.unwrap_or(false);
    let check_hypothesis = config.options.check_hypothesis.unwrap_or(true);
    let mut tally = Tally::new();
    let mut excluded = Vec::new();
    let mut gauss_ratio: f64 = 0.0;
    let mut mixed_ratio: f64 = 0.0;
    for &p in &primes {
        for &n in &ns {
            let g = GroupSpec::vector(p, n)?;
            g.check_enumeration(1)?;
            let size = (p as f64).powi(n as i32);
            let gauss_rhs = size.powf(-0.5);
            let mixed_rhs = 1.0 / size + size.powf(-0.5);
            for a in 0..p {
                for b0 in 0..p {
                    for c in 0..p {
                        let trivial = (a, b0) == (0, 0);
                        if trivial && include_trivial && check_hypothesis {
                            let lhs = phase_average_direct(&g, a, b0, c)?.norm();
                            excluded.push(json!({
                                "p": p, "n": n, "a": a, "b0": b0, "c": c, "lhs": lhs, "rhs": gauss_rhs,
                                "status": "excluded by hypothesis",
                            }));
                        } else if !trivial || include_trivial {
                            let lhs = phase_average_direct(&g, a, b0, c)?.norm();
                            gauss_ratio = gauss_ratio.max(lhs / gauss_rhs);
                            tally.check(lhs <= gauss_rhs + INEQUALITY_TOLERANCE, || {
                                json!({"kind": "gauss", "p": p, "n": n, "a": a, "b0": b0, "c": c, "lhs": lhs, "rhs": gauss_rhs})
                            });
                        }
                        for d in 0..p {
                            if (a, b0, d) == (0, 0, 0) {
                                continue;
                            }
                            let lhs = mixed_phase_average_direct(&g, a, b0, c, d)?;
                            mixed_ratio = mixed_ratio.max(lhs / mixed_rhs);
                            tally.check(lhs <= mixed_rhs + INEQUALITY_TOLERANCE, || {
                                json!({"kind": "mixed", "p": p, "n": n, "a": a, "b0": b0, "c": c, "d": d, "lhs": lhs, "rhs": mixed_rhs})
                            });
                        }
                    }
                }
            }
        }
    }
    let mut lines = vec![format!("worst ratios: Gauss {gauss_ratio:.6}, mixed {mixed_ratio:.6}")];
    if !excluded.is_empty() {
        lines.push(format!("{} trivial phases (a, b0) = (0, 0) excluded by hypothesis (average 1)", excluded.len()));
    }
    Ok(tally.finish(
        "gauss",
        json!({
            "suite": "gauss",
            "primes": primes,
            "ns": ns,
            "worst_ratio": {"gauss": gauss_ratio, "mixed": mixed_ratio},
            "excluded": excluded,
        }),
        lines,
    ))
}

fn phase_vanish(config: &JobConfig, seed: u64) -> Result<Outcome, Failure> {
    let primes = config.options.primes.clone().unwrap_or_else(|| vec![101, 499, 997]);
    let bounds = config.options.fraction_bounds.clone().unwrap_or_else(|| vec![2, 3]);
    let trials = config.options.trials.unwrap_or(1000);
    let mut tally = Tally::new();
    let mut cases = Vec::new();
    let mut lines = Vec::new();
    for &p in &primes {
        for &c in &bounds {
            match check_phase_bounds(p, c, trials, seed) {
                Ok(report) => {
                    for r in &report.regimes {
                        tally.checked += r.trials;
                        tally.total_violations += r.violations;
                        if r.violations > 0 && tally.violations.len() < MAX_LISTED {
                            tally.violations.push(json!({"p": p, "c": c, "regime": r.regime, "worst": r.worst}));
                        }
                    }
                    let ratios: Vec<String> = report.regimes.iter().map(|r| format!("{:.3}", r.max_ratio)).collect();
                    lines.push(format!("(p={p}, C={c}) worst ratios [{}]", ratios.join(", ")));
                    cases.push(json!({"p": p, "c": c, "status": "checked", "regimes": report.regimes}));
                }
                Err(Error::Hypothesis(why)) => {
                    lines.push(format!("(p={p}, C={c}) excluded by hypothesis: {why}"));
                    cases.push(json!({"p": p, "c": c, "status": "excluded by hypothesis", "reason": why}));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(tally.finish(
        "phase-vanish",
        json!({"suite": "phase-vanish", "trials": trials, "seed": seed, "cases": cases}),
        lines,
    ))
}

fn muting_bounds(config: &JobConfig) -> Result<Outcome, Failure> {
    let primes = config.options.primes.clone().unwrap_or_else(|| vec![5, 7]);
    let betas = config.options.betas.clone().unwrap_or_else(|| vec![1.0, 0.5, 0.25]);
    let ns = config.options.ns.clone().unwrap_or_else(|| vec![4, 40]);
    let mut tally = Tally::new();
    let mut reports = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for &p in &primes {
        for &n in &ns {
            for &beta in &betas {
                let report = check_muting_subconfig_bounds(p, n, beta)?;
                for check in &report.checks {
                    if check.rhs.abs() > 0.0 {
                        worst_ratio = worst_ratio.max(check.lhs / check.rhs);
                    }
                    tally.check(check.holds, || json!({"p": p, "n": n, "beta": beta, "check": check}));
                }
                reports.push(report);
            }
        }
    }
    Ok(tally.finish(
        "muting-bounds",
        json!({"suite": "muting-bounds", "worst_ratio": worst_ratio, "reports": reports}),
        vec![format!("worst lhs/rhs {worst_ratio:.6}")],
    ))
}

fn cube(config: &JobConfig, seed: u64) -> Result<Outcome, Failure> {
    let groups = config.options.groups.clone().unwrap_or_else(|| {
        vec![vec![2], vec![3], vec![4], vec![5], vec![6], vec![7], vec![8], vec![2, 2], vec![3, 3], vec![2, 4]]
    });
    let trials = config.options.trials.unwrap_or(1000);
    let exhaustive = config.options.exhaustive_max_order.unwrap_or(8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    let mut per_group = Vec::new();
    let mut lines = Vec::new();
    let floor = 1.0 / 64.0;
    for moduli in groups {
        let group = GroupSpec::new(moduli.clone()).map_err(|e| config_error(e.to_string()))?;
        let analyzer = CubeAnalyzer::new(group.clone())?;
        let order = group.size()?;
        let mut tables = Vec::new();
        if order <= exhaustive.min(20) {
            for mask in 0u32..1 << order {
                let members: Vec<usize> = (0..order).filter(|i| mask >> i & 1 == 1).collect();
                tables.push(DensityTable::indicator(group.clone(), &members)?);
            }
        }
        for _ in 0..trials {
            let values = (0..order).map(|_| rng.gen::<f64>()).collect();
            tables.push(DensityTable::unit(group.clone(), values)?);
        }
        let mut min_total = f64::INFINITY;
        for g in &tables {
            let report = analyzer.report(g)?;
            min_total = min_total.min(report.total);
            let holds = report.all_hold() && report.total >= floor - INEQUALITY_TOLERANCE;
            tally.check(holds, || {
                json!({"moduli": moduli, "values": g.values(), "total": report.total, "rhs": floor, "failures": report.failures()})
            });
        }
        lines.push(format!("Z{moduli:?}: {} functions, min total {min_total:.12} (1/64 = {floor:.12})", tables.len()));
        per_group.push(json!({
            "moduli": moduli,
            "functions": tables.len(),
            "min_total": min_total,
            "ratio": min_total / floor,
            "classes": analyzer.classes(),
        }));
    }
    Ok(tally.finish(
        "cube",
        json!({"suite": "cube", "rhs": floor, "trials": trials, "seed": seed, "groups": per_group}),
        lines,
    ))
}

fn splitting(config: &JobConfig, seed: u64) -> Result<Outcome, Failure> {
    let [lo, hi] = config.options.prime_range.unwrap_or([5, 199]);
    let primes = primes_between(lo.max(3), hi);
    if primes.is_empty() {
        return Err(config_error(format!("no primes in [{lo}, {hi}]")));
    }
    let bounds = config.options.fraction_bounds.clone().unwrap_or_else(|| (2..=8).collect());
    if bounds.iter().any(|&c| c < 2) {
        return Err(config_error("fraction bounds must be at least 2"));
    }
    let trials = config.options.trials.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for _ in 0..trials {
        let p = primes[rng.gen_range(0..primes.len())];
        let cap = bounds[rng.gen_range(0..bounds.len())];
        let (s, witness) = loop {
            let s = rng.gen_range(1..p);
            if let Some(w) = c_fraction_bound(s, p, cap) {
                break (s, w);
            }
        };
        let start = rng.gen_range(0..p);
        let len = rng.gen_range(0..=p);
        let ap = APDescriptor::modular(start, s, len, p)?;
        let pieces = split_ap(&ap, &witness)?;
        let expected: BTreeSet<i64> = ap.members().into_iter().collect();
        let total: usize = pieces.iter().map(|a| a.len as usize).sum();
        let union: BTreeSet<i64> = pieces.iter().flat_map(APDescriptor::members).collect();
        let c = witness.bound;
        let holds = union == expected
            && total == expected.len()
            && pieces.len() as u64 <= 3 * c
            && pieces.iter().all(|a| a.diff.unsigned_abs() < c && a.modulus.is_none());
        tally.check(holds, || {
            json!({"kind": "split", "p": p, "diff": s, "start": start, "len": len, "fraction_bound": c, "pieces": pieces.len(), "max_pieces": 3 * c})
        });
    }
    let mut census_ratio: f64 = 0.0;
    for &p in &primes_between(2, hi) {
        for c in 1..=*bounds.iter().max().expect("nonempty") {
            let count = fraction_census(p, c);
            let rhs = 4 * c * c;
            census_ratio = census_ratio.max(count as f64 / rhs as f64);
            tally.check(count as u64 <= rhs, || json!({"kind": "census", "p": p, "c": c, "lhs": count, "rhs": rhs}));
        }
    }
    Ok(tally.finish(
        "splitting",
        json!({"suite": "splitting", "trials": trials, "seed": seed, "worst_census_ratio": census_ratio}),
        vec![format!("worst census count / 4C^2 = {census_ratio:.3}")],
    ))
}

fn image(system: &FormSystem) -> Result<BTreeSet<Vec<usize>>, Failure> {
    let order = system.group().size()?;
    let total = system.group().check_enumeration(system.r())?;
    let r = system.r();
    Ok((0..total)
        .map(|mut k| {
            let w: Vec<usize> = (0..r)
                .map(|_| {
                    let x = k % order;
                    k /= order;
                    x
                })
                .collect();
            system.evaluate_indices(&w)
        })
        .collect())
}

fn reparam(config: &JobConfig, seed: u64) -> Result<Outcome, Failure> {
    let primes = config.options.primes.clone().unwrap_or_else(|| vec![5, 7, 11, 13]);
    check_primes(&primes, 2)?;
    let trials = config.options.trials.unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    let mut skipped = 0;
    for _ in 0..trials {
        let p = primes[rng.gen_range(0..primes.len())];
        let d = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=4);
        let matrix: Vec<Vec<i64>> = (0..d).map(|_| (0..r).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let system = induce_system(matrix.clone(), GroupSpec::vector(p, 1)?)?;
        let pivots = independent_subset(&matrix, p);
        if pivots.is_empty() {
            skipped += 1;
            continue;
        }
        let re = reparametrize(&system, &pivots)?;
        let coordinate_pivots = pivots.iter().enumerate().all(|(j, &i)| {
            re.system.matrix()[i]
                .iter()
                .enumerate()
                .all(|(k, &v)| v.rem_euclid(p as i64) == (j == k) as i64)
        });
        let same_image = image(&system)? == image(&re.system)?;
        let holds = same_image && re.within_c2() && coordinate_pivots;
        tally.check(holds, || {
            json!({"p": p, "matrix": matrix, "pivots": pivots, "same_image": same_image, "within_c2": re.within_c2(), "coordinate_pivots": coordinate_pivots})
        });
    }
    Ok(tally.finish(
        "reparam",
        json!({"suite": "reparam", "trials": trials, "seed": seed, "skipped_zero_matrices": skipped}),
        Vec::new(),
    ))
}
