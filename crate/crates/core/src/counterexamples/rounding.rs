//! Rounding a `[0, 1]`-valued function to a set without raising the
//! monochromatic multiplicity by more than `C(d, 2)/|G|`.
//!
//! Restricted to injective instances (all `d` entries distinct),
//! `ψ(f) = Σ_inst ∏ f + ∏ (1 - f)` is affine in each single value `f(a)`.
//! Moving `f(a)` to the endpoint that does not increase `ψ`, one point at a
//! time, ends at an indicator function with `ψ(1_A) ≤ ψ(f)`. Non-injective
//! instances make up at most a `C(d, 2)/|G|` fraction of the parameters.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::FormSystem;
use crate::group::{DensityTable, RANGE_TOLERANCE};
use crate::multiplicity::{monochromatic_pair, Evaluator};
use crate::structured::binomial;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundedSet {
    pub members: Vec<usize>,
    /// `ψ` before the first move and after each move, unnormalized.
    pub psi_trace: Vec<f64>,
    /// `t(1_A) + t(1_{A^C})`.
    pub lhs: f64,
    /// `t(f) + t(1 - f) + C(d, 2)/|G|`.
    pub rhs: f64,
    pub slack: f64,
}

impl RoundedSet {
    pub fn certificate_holds(&self) -> bool {
        self.lhs <= self.rhs + 1e-12
    }
}

pub fn round_to_set(f: &DensityTable, system: &FormSystem) -> Result<RoundedSet> {
    if system.group().vector_params().is_none() {
        return Err(Error::NotVectorMode(format!("moduli {:?}", system.group().moduli())));
    }
    if !system.is_distinct() {
        return Err(Error::IndistinctForms(
            "rounding needs pairwise distinct forms, otherwise non-injective instances are not rare".into(),
        ));
    }
    if !f.is_unit_valued() {
        let (index, &value) = f
            .values()
            .iter()
            .enumerate()
            .find(|(_, &v)| !(-RANGE_TOLERANCE..=1.0 + RANGE_TOLERANCE).contains(&v))
            .expect("some value is out of range");
        return Err(Error::RangeViolation { index, value, lo: 0.0, hi: 1.0 });
    }
    let before = monochromatic_pair(system, f)?;
    let ev = Evaluator::new(system)?;
    let order = ev.order();
    let d = system.d();

    let mut instances: Vec<u32> = Vec::new();
    let mut sorted = Vec::with_capacity(d);
    ev.for_each(|inst| {
        sorted.clear();
        sorted.extend_from_slice(inst);
        sorted.sort_unstable();
        if sorted.windows(2).all(|w| w[0] != w[1]) {
            instances.extend(inst.iter().map(|&x| x as u32));
        }
    });
    let count = instances.len() / d;
    let mut incidence: Vec<Vec<u32>> = vec![Vec::new(); order];
    for k in 0..count {
        for &x in &instances[k * d..(k + 1) * d] {
            incidence[x as usize].push(k as u32);
        }
    }

    let mut g: Vec<f64> = f.values().to_vec();
    let psi = |g: &[f64]| -> f64 {
        let mut acc = crate::numeric::Neumaier::new();
        for inst in instances.chunks_exact(d) {
            let a: f64 = inst.iter().map(|&x| g[x as usize]).product();
            let b: f64 = inst.iter().map(|&x| 1.0 - g[x as usize]).product();
            acc.add(a + b);
        }
        acc.value()
    };
    let mut current = psi(&g);
    let mut trace = vec![current];
    for a in 0..order {
        let v = g[a];
        if v == 0.0 || v == 1.0 {
            continue;
        }
        let mut coef = crate::numeric::Neumaier::new();
        for &k in &incidence[a] {
            let inst = &instances[k as usize * d..(k as usize + 1) * d];
            let mut with = 1.0;
            let mut without = 1.0;
            for &x in inst {
                if x as usize != a {
                    with *= g[x as usize];
                    without *= 1.0 - g[x as usize];
                }
            }
            coef.add(with - without);
        }
        let coef = coef.value();
        let target = if coef < 0.0 { 1.0 } else { 0.0 };
        g[a] = target;
        current += (target - v) * coef;
        trace.push(current);
    }

    let members: Vec<usize> = (0..order).filter(|&x| g[x] == 1.0).collect();
    let set = DensityTable::indicator(system.group().clone(), &members)?;
    let after = monochromatic_pair(system, &set)?;
    let slack = binomial(d, 2) / order as f64;
    Ok(RoundedSet {
        members,
        psi_trace: trace,
        lhs: after.sum,
        rhs: before.sum + slack,
        slack,
    })
}
