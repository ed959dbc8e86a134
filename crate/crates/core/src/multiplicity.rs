//! Arithmetic multiplicities by direct enumeration of the parameter space `G^r`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::FormSystem;
use crate::group::{Adder, DensityTable, GroupSpec};
use crate::numeric::Neumaier;

/// Largest group on which [`min_coloring`] runs (it visits all `2^|G|` subsets).
pub const MAX_COLORING_ORDER: usize = 25;

/// Precomputed tables for evaluating a system at many parameters.
pub(crate) struct Evaluator {
    d: usize,
    r: usize,
    order: usize,
    adder: Adder,
    // scaled[i][k][x] = M[i][k]·x
    scaled: Vec<Vec<Vec<u32>>>,
}

impl Evaluator {
    pub(crate) fn new(system: &FormSystem) -> Result<Self> {
        let group = system.group();
        let order = group.size()?;
        if order > u32::MAX as usize {
            return Err(Error::EnumerationCap {
                needed: order as u128,
                cap: u32::MAX as u64,
            });
        }
        let scaled = system
            .matrix()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&c| scale_table(group, c, order))
                    .collect()
            })
            .collect();
        Ok(Self {
            d: system.d(),
            r: system.r(),
            order,
            adder: Adder::new(group)?,
            scaled,
        })
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    /// Calls `visit` with the instance `(φ_1(w), …, φ_d(w))` for every `w`
    /// whose first coordinate is `w0`, in lexicographic order of `w`.
    pub(crate) fn for_each_with_first(&self, w0: usize, visit: &mut impl FnMut(&[usize])) {
        let (d, r, n) = (self.d, self.r, self.order);
        let mut partial = vec![vec![0usize; d]; r];
        for i in 0..d {
            partial[0][i] = self.scaled[i][0][w0] as usize;
        }
        if r == 1 {
            visit(&partial[0]);
            return;
        }
        for k in 1..r {
            partial[k] = partial[k - 1].clone();
        }
        let mut w = vec![0usize; r];
        loop {
            visit(&partial[r - 1]);
            let mut k = r - 1;
            loop {
                w[k] += 1;
                if w[k] < n {
                    break;
                }
                w[k] = 0;
                if k == 1 {
                    return;
                }
                k -= 1;
            }
            for l in k..r {
                let (lo, hi) = partial.split_at_mut(l);
                let prev = &lo[l - 1];
                for i in 0..d {
                    hi[0][i] = self.adder.add(prev[i], self.scaled[i][l][w[l]] as usize);
                }
            }
        }
    }

    /// Every instance, in lexicographic order of the parameters.
    pub(crate) fn for_each(&self, mut visit: impl FnMut(&[usize])) {
        for w0 in 0..self.order {
            self.for_each_with_first(w0, &mut visit);
        }
    }

    /// Compensated sum of `term(instance)` over `G^r`, parallel over the first
    /// variable and merged in index order so the result is reproducible.
    pub(crate) fn sum<F>(&self, term: F) -> f64
    where
        F: Fn(&[usize]) -> f64 + Sync,
    {
        let parts: Vec<Neumaier> = (0..self.order)
            .into_par_iter()
            .map(|w0| {
                let mut acc = Neumaier::new();
                self.for_each_with_first(w0, &mut |inst| acc.add(term(inst)));
                acc
            })
            .collect();
        let mut total = Neumaier::new();
        for part in parts {
            total.merge(part);
        }
        total.value()
    }
}

fn scale_table(group: &GroupSpec, c: i64, order: usize) -> Vec<u32> {
    if group.moduli().len() == 1 {
        let m = group.moduli()[0] as u128;
        let c = c.rem_euclid(m as i64) as u128;
        return (0..order).map(|x| ((c * x as u128) % m) as u32).collect();
    }
    (0..order).map(|x| group.scale(x, c) as u32).collect()
}

fn check_same_group(system: &FormSystem, f: &DensityTable) -> Result<()> {
    if system.group().moduli() == f.group().moduli() {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!(
            "system lives on Z{:?} but the table on Z{:?}",
            system.group().moduli(),
            f.group().moduli()
        )))
    }
}

/// `t_Φ(f) = E_{w ∈ G^r} ∏_i f(φ_i(w))`.
pub fn multiplicity_direct(system: &FormSystem, f: &DensityTable) -> Result<f64> {
    check_same_group(system, f)?;
    let total = system.group().check_enumeration(system.r())?;
    let ev = Evaluator::new(system)?;
    let values = f.values();
    let sum = ev.sum(|inst| inst.iter().map(|&x| values[x]).product());
    Ok(sum / total as f64)
}

/// `t(f)`, `t(1 - f)` and their sum against the random-coloring value `2^{1-d}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairValue {
    pub t_f: f64,
    pub t_complement: f64,
    pub sum: f64,
    pub threshold: f64,
}

impl PairValue {
    /// `2^{1-d} - (t(f) + t(1-f))`; positive when `f` beats the random coloring.
    pub fn margin(&self) -> f64 {
        self.threshold - self.sum
    }
}

/// `2^{1-d}`.
pub fn commonness_threshold(d: usize) -> f64 {
    0.5f64.powi(d as i32 - 1)
}

pub fn monochromatic_pair(system: &FormSystem, f: &DensityTable) -> Result<PairValue> {
    check_same_group(system, f)?;
    if let Some((index, &value)) = f
        .values()
        .iter()
        .enumerate()
        .find(|(_, &v)| !(-crate::group::RANGE_TOLERANCE..=1.0 + crate::group::RANGE_TOLERANCE).contains(&v))
    {
        return Err(Error::RangeViolation {
            index,
            value,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let total = system.group().check_enumeration(system.r())?;
    let ev = Evaluator::new(system)?;
    let values = f.values();
    let t_f = ev.sum(|inst| inst.iter().map(|&x| values[x]).product()) / total as f64;
    let t_complement = ev.sum(|inst| inst.iter().map(|&x| 1.0 - values[x]).product()) / total as f64;
    Ok(PairValue {
        t_f,
        t_complement,
        sum: t_f + t_complement,
        threshold: commonness_threshold(system.d()),
    })
}

/// Number of parameters `w` whose instance repeats an element.
pub fn degenerate_count(system: &FormSystem) -> Result<u64> {
    system.group().check_enumeration(system.r())?;
    let ev = Evaluator::new(system)?;
    let mut count = 0u64;
    let mut seen: Vec<usize> = Vec::with_capacity(system.d());
    ev.for_each(|inst| {
        seen.clear();
        seen.extend_from_slice(inst);
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            count += 1;
        }
    });
    Ok(count)
}

/// Minimizer of `t(1_A) + t(1_{A^C})` over all subsets `A ⊆ G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinColoring {
    pub subset: Vec<usize>,
    pub value: f64,
    /// Monochromatic parameters of the minimizer (in `A` or in `A^C`).
    pub monochromatic: u64,
    /// `|G|^r`.
    pub parameters: u64,
    pub threshold: f64,
}

/// Exhaustive search over all `2^|G|` two-colorings.
///
/// Each parameter contributes its instance's support mask; a zeta transform
/// over the subset lattice then counts, for every `A`, the parameters whose
/// instance lies inside `A`. Ties go to the smallest mask.
pub fn min_coloring(system: &FormSystem) -> Result<MinColoring> {
    let order = system.group().size()?;
    if order > MAX_COLORING_ORDER {
        return Err(Error::InvalidParameter(format!(
            "exhaustive coloring search needs |G| <= {MAX_COLORING_ORDER}, got {order}"
        )));
    }
    let parameters = system.group().check_enumeration(system.r())? as u64;
    let ev = Evaluator::new(system)?;
    let full = 1usize << order;
    let mut counts = vec![0u32; full];
    ev.for_each(|inst| {
        let mask = inst.iter().fold(0usize, |m, &x| m | (1 << x));
        counts[mask] += 1;
    });
    for bit in 0..order {
        let b = 1usize << bit;
        for mask in 0..full {
            if mask & b != 0 {
                counts[mask] += counts[mask ^ b];
            }
        }
    }
    let (best_mask, best) = (0..full)
        .map(|a| (a, counts[a] as u64 + counts[(full - 1) ^ a] as u64))
        .min_by_key(|&(a, c)| (c, a))
        .expect("at least one subset");
    Ok(MinColoring {
        subset: (0..order).filter(|&x| best_mask & (1 << x) != 0).collect(),
        value: best as f64 / parameters as f64,
        monochromatic: best,
        parameters,
        threshold: commonness_threshold(system.d()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::induce_system;
    use approx::assert_abs_diff_eq;

    fn four_ap_z5() -> FormSystem {
        induce_system(
            vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]],
            GroupSpec::cyclic(5).unwrap(),
        )
        .unwrap()
    }

    // straightforward nested loops, independent of the evaluator
    fn brute_four_ap(values: &[f64]) -> f64 {
        let p = values.len();
        let mut s = 0.0;
        for x in 0..p {
            for y in 0..p {
                s += (0..4).map(|k| values[(x + k * y) % p]).product::<f64>();
            }
        }
        s / (p * p) as f64
    }

    #[test]
    fn constant_tables() {
        let sys = four_ap_z5();
        let g = sys.group().clone();
        let one = DensityTable::constant(g.clone(), 1.0).unwrap();
        assert_eq!(multiplicity_direct(&sys, &one).unwrap(), 1.0);
        let half = DensityTable::constant(g, 0.5).unwrap();
        assert_abs_diff_eq!(multiplicity_direct(&sys, &half).unwrap(), 1.0 / 16.0, epsilon = 1e-15);
        let pair = monochromatic_pair(&sys, &half).unwrap();
        assert_abs_diff_eq!(pair.sum, 0.125, epsilon = 1e-15);
        assert_eq!(pair.threshold, 0.125);
    }

    #[test]
    fn directional_table_on_z5() {
        let sys = four_ap_z5();
        let f = DensityTable::new(sys.group().clone(), vec![-1.0, 1.0, 1.0, 1.0, 1.0], -1.0, 1.0).unwrap();
        let t = multiplicity_direct(&sys, &f).unwrap();
        assert_abs_diff_eq!(t, brute_four_ap(f.values()), epsilon = 1e-15);
        assert_abs_diff_eq!(t, -7.0 / 25.0, epsilon = 1e-12);
    }

    #[test]
    fn indicator_pairs() {
        let sys = four_ap_z5();
        let g = sys.group().clone();
        let empty = DensityTable::indicator(g.clone(), &[]).unwrap();
        assert_abs_diff_eq!(monochromatic_pair(&sys, &empty).unwrap().sum, 1.0, epsilon = 1e-15);
        let a = DensityTable::indicator(g.clone(), &[0, 1]).unwrap();
        assert_abs_diff_eq!(monochromatic_pair(&sys, &a).unwrap().sum, 0.2, epsilon = 1e-15);
        let a = DensityTable::indicator(g, &[1, 2, 3, 4]).unwrap();
        assert_abs_diff_eq!(monochromatic_pair(&sys, &a).unwrap().sum, 9.0 / 25.0, epsilon = 1e-15);
        assert_eq!(degenerate_count(&sys).unwrap(), 5);
    }

    #[test]
    fn mixed_moduli_three_variables() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        let sys = induce_system(vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]], g.clone()).unwrap();
        let vals: Vec<f64> = (0..6).map(|i| (i as f64 + 1.0) / 7.0).collect();
        let f = DensityTable::unit(g.clone(), vals.clone()).unwrap();
        let mut s = 0.0;
        for x in 0..6 {
            for h1 in 0..6 {
                for h2 in 0..6 {
                    let a = g.add(x, h1);
                    let b = g.add(x, h2);
                    let c = g.add(a, h2);
                    s += vals[x] * vals[a] * vals[b] * vals[c];
                }
            }
        }
        assert_abs_diff_eq!(multiplicity_direct(&sys, &f).unwrap(), s / 216.0, epsilon = 1e-14);
    }

    #[test]
    fn coloring_search_examples() {
        let best = min_coloring(&four_ap_z5()).unwrap();
        assert_abs_diff_eq!(best.value, 0.2, epsilon = 1e-15);
        assert!(best.subset.len() == 2 || best.subset.len() == 3);

        let three_ap = induce_system(
            vec![vec![1, 0], vec![1, 1], vec![1, 2]],
            GroupSpec::cyclic(5).unwrap(),
        )
        .unwrap();
        assert!(min_coloring(&three_ap).unwrap().value >= 0.25);

        let big = induce_system(vec![vec![1]], GroupSpec::cyclic(26).unwrap()).unwrap();
        assert!(min_coloring(&big).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = GroupSpec::cyclic(101).unwrap().with_enumeration_cap(1000);
        let sys = induce_system(vec![vec![1, 0], vec![1, 1]], g.clone()).unwrap();
        let f = DensityTable::constant(g, 0.5).unwrap();
        assert!(matches!(multiplicity_direct(&sys, &f), Err(Error::EnumerationCap { .. })));
    }
}
