//! The cube with one missing vertex,
//! `(x, x+h₁, x+h₂, x+h₃, x+h₁+h₂, x+h₁+h₃, x+h₂+h₃)`, split into the
//! contributions of its subconfigurations.
//!
//! With `α = E g ≥ 1/2` (after replacing `g` by `1 - g` if needed) and
//! `f = g - α`,
//! `t(g) + t(1-g) = Σ_k (α^{7-k} + (-1)^k (1-α)^{7-k}) Σ_{|I|=k} E ∏_{i∈I} f(φ_i)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::FormSystem;
use crate::group::{fourier_transform, Adder, DensityTable, GroupSpec};
use crate::multiplicity::monochromatic_pair;
use crate::numeric::Neumaier;

/// Absolute slack on every inequality and identity.
pub const CUBE_TOLERANCE: f64 = 1e-9;

/// Rows over `(x, h₁, h₂, h₃)`, in the order used for subset masks.
pub const CUBE_MATRIX: [[i64; 4]; 7] = [
    [1, 0, 0, 0],
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [1, 1, 1, 0],
    [1, 1, 0, 1],
    [1, 0, 1, 1],
];

const K4_A2: [[usize; 4]; 3] = [[0, 1, 2, 4], [0, 1, 3, 5], [0, 2, 3, 6]];
const K4_A3: [[usize; 4]; 3] = [[1, 2, 5, 6], [1, 3, 4, 6], [2, 3, 4, 5]];
const K4_A4: [[usize; 4]; 1] = [[0, 4, 5, 6]];
const K5_A2: [[usize; 5]; 3] = [[0, 1, 4, 5, 6], [0, 2, 4, 5, 6], [0, 3, 4, 5, 6]];
// each six-form class is listed by the omitted form
const K6_A1: [usize; 3] = [6, 5, 4];
const K6_A2: [usize; 3] = [3, 2, 1];
const K6_A3: [usize; 1] = [0];

fn mask_of(forms: &[usize]) -> usize {
    forms.iter().map(|&i| 1 << i).sum()
}

fn omit(i: usize) -> usize {
    0x7f & !(1 << i)
}

fn forms_of(mask: usize) -> Vec<usize> {
    (0..7).filter(|i| mask >> i & 1 == 1).collect()
}

/// `t_AQ(f) = E_h (E_x f(x) f(x+h))²`.
pub fn additive_quadruple_value(f: &DensityTable) -> Result<f64> {
    f.group().check_enumeration(2)?;
    let adder = Adder::new(f.group())?;
    let v = f.values();
    let n = v.len();
    let total: Neumaier = (0..n)
        .map(|h| {
            let inner: Neumaier = (0..n).map(|x| v[x] * v[adder.add(x, h)]).collect();
            let a = inner.value() / n as f64;
            a * a
        })
        .collect();
    Ok(total.value() / n as f64)
}

/// `t_AH(f) = E_{h₂,h₃} (E_x f(x) f(x+h₂) f(x+h₃))²`.
pub fn additive_hextuple_value(f: &DensityTable) -> Result<f64> {
    f.group().check_enumeration(3)?;
    let adder = Adder::new(f.group())?;
    let v = f.values();
    let n = v.len();
    let mut total = Neumaier::new();
    for h2 in 0..n {
        for h3 in 0..n {
            let inner: Neumaier = (0..n).map(|x| v[x] * v[adder.add(x, h2)] * v[adder.add(x, h3)]).collect();
            let a = inner.value() / n as f64;
            total.add(a * a);
        }
    }
    Ok(total.value() / (n * n) as f64)
}

/// Subsets of each size whose forms include one with constant fibres.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubeClasses {
    /// Masks over the seven forms, for `k = 4` and `k = 5`.
    pub independent_k4: Vec<usize>,
    pub independent_k5: Vec<usize>,
    /// Listed subsets that also have a form with constant fibres. The `A4`
    /// quadruple does whenever 2 is invertible in `G`; over `Z_2` more do.
    pub listed_also_independent: Vec<usize>,
    /// Every unlisted subset of size 4 or 5 is detected.
    pub partition_consistent: bool,
}

impl CubeClasses {
    /// A form `φ_i` of `I` has constant fibres when the tuple of the other
    /// forms takes the same set of values on every level set of `φ_i`,
    /// i.e. when `|image(I)| = |G|·|image(I \ {i})|`.
    pub fn detect(group: &GroupSpec) -> Result<Self> {
        group.check_enumeration(4)?;
        let adder = Adder::new(group)?;
        let n = group.size()?;
        let masks: Vec<usize> = (0..128usize).filter(|m| (3..=5).contains(&m.count_ones())).collect();
        let mut images: Vec<HashSet<u128>> = vec![HashSet::new(); 128];
        for x in 0..n {
            for h1 in 0..n {
                let xh1 = adder.add(x, h1);
                for h2 in 0..n {
                    let xh2 = adder.add(x, h2);
                    let xh12 = adder.add(xh1, h2);
                    for h3 in 0..n {
                        let vals = [
                            x,
                            xh1,
                            xh2,
                            adder.add(x, h3),
                            xh12,
                            adder.add(xh1, h3),
                            adder.add(xh2, h3),
                        ];
                        for &m in &masks {
                            let key = forms_of(m).iter().fold(0u128, |acc, &i| acc * n as u128 + vals[i] as u128);
                            images[m].insert(key);
                        }
                    }
                }
            }
        }
        let independent = |k: u32| -> Vec<usize> {
            (0..128usize)
                .filter(|m| m.count_ones() == k)
                .filter(|&m| {
                    forms_of(m)
                        .iter()
                        .any(|&i| images[m].len() == n * images[m & !(1 << i)].len())
                })
                .collect()
        };
        let independent_k4 = independent(4);
        let independent_k5 = independent(5);
        let listed4: Vec<usize> = K4_A2.iter().chain(&K4_A3).chain(&K4_A4).map(|s| mask_of(s)).collect();
        let listed5: Vec<usize> = K5_A2.iter().map(|s| mask_of(s)).collect();
        let covers = |found: &[usize], listed: &[usize], k: u32| {
            (0..128usize)
                .filter(|m| m.count_ones() == k)
                .all(|m| listed.contains(&m) || found.contains(&m))
        };
        let partition_consistent = covers(&independent_k4, &listed4, 4) && covers(&independent_k5, &listed5, 5);
        let listed_also_independent = listed4
            .iter()
            .chain(&listed5)
            .copied()
            .filter(|m| independent_k4.contains(m) || independent_k5.contains(m))
            .collect();
        Ok(Self {
            independent_k4,
            independent_k5,
            listed_also_independent,
            partition_consistent,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassContribution {
    pub k: usize,
    pub class: String,
    /// One value per subconfiguration in the class, in listing order.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContributionReport {
    pub alpha: f64,
    /// Whether `g` was replaced by `1 - g` to get `α ≥ 1/2`.
    pub swapped: bool,
    /// `t(g) + t(1-g)` by direct enumeration.
    pub total: f64,
    /// The same quantity rebuilt from all 128 subset contributions.
    pub expansion_total: f64,
    pub main_term: f64,
    pub t_aq: f64,
    pub t_ah: f64,
    pub f_square_mean: f64,
    pub max_nontrivial_fourier: f64,
    pub classes: Vec<ClassContribution>,
    pub inequalities: Vec<InequalityCheck>,
    pub partition_consistent: bool,
}

impl ContributionReport {
    pub fn all_hold(&self) -> bool {
        self.partition_consistent && self.inequalities.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&InequalityCheck> {
        self.inequalities.iter().filter(|c| !c.holds).collect()
    }
}

/// Precomputed cube system and classes for one group.
#[derive(Debug, Clone)]
pub struct CubeAnalyzer {
    group: GroupSpec,
    system: FormSystem,
    adder: Adder,
    classes: CubeClasses,
}

impl CubeAnalyzer {
    pub fn new(group: GroupSpec) -> Result<Self> {
        let classes = CubeClasses::detect(&group)?;
        let system = FormSystem::new(CUBE_MATRIX.iter().map(|r| r.to_vec()).collect(), group.clone())?;
        let adder = Adder::new(&group)?;
        Ok(Self {
            group,
            system,
            adder,
            classes,
        })
    }

    pub fn classes(&self) -> &CubeClasses {
        &self.classes
    }

    /// `E ∏_{i∈I} f(φ_i)` for every mask `I`.
    fn subset_averages(&self, f: &[f64]) -> [f64; 128] {
        let n = f.len();
        let mut acc = [Neumaier::new(); 128];
        let mut prod = [0.0f64; 128];
        prod[0] = 1.0;
        for x in 0..n {
            let mut local = [0.0f64; 128];
            for h1 in 0..n {
                let xh1 = self.adder.add(x, h1);
                for h2 in 0..n {
                    let xh2 = self.adder.add(x, h2);
                    let xh12 = self.adder.add(xh1, h2);
                    for h3 in 0..n {
                        let v = [
                            f[x],
                            f[xh1],
                            f[xh2],
                            f[self.adder.add(x, h3)],
                            f[xh12],
                            f[self.adder.add(xh1, h3)],
                            f[self.adder.add(xh2, h3)],
                        ];
                        for m in 1..128usize {
                            prod[m] = prod[m & (m - 1)] * v[m.trailing_zeros() as usize];
                            local[m] += prod[m];
                        }
                    }
                }
            }
            for (a, l) in acc.iter_mut().zip(local) {
                a.add(l);
            }
            acc[0].add((n * n * n) as f64);
        }
        let scale = (n as f64).powi(4);
        let mut out = [0.0; 128];
        for (o, a) in out.iter_mut().zip(acc) {
            *o = a.value() / scale;
        }
        out
    }

    pub fn report(&self, g: &DensityTable) -> Result<ContributionReport> {
        if g.group() != &self.group {
            return Err(Error::GroupMismatch(format!(
                "function on {:?}, analyzer on {:?}",
                g.group().moduli(),
                self.group.moduli()
            )));
        }
        let g = DensityTable::unit(self.group.clone(), g.values().to_vec())?;
        let total = monochromatic_pair(&self.system, &g)?.sum;
        let mean = g.mean();
        let swapped = mean < 0.5;
        let (alpha, g) = if swapped { (1.0 - mean, g.complement()) } else { (mean, g) };
        let f = DensityTable::new(self.group.clone(), g.values().iter().map(|v| v - alpha).collect(), -1.0, 1.0)?;
        let t_aq = additive_quadruple_value(&f)?;
        let t_ah = additive_hextuple_value(&f)?;
        let f_square_mean = f.values().iter().map(|v| v * v).collect::<Neumaier>().value() / f.len() as f64;
        let max_nontrivial_fourier = fourier_transform(&f)?
            .iter()
            .skip(1)
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let avg = self.subset_averages(f.values());
        let prefactor = |k: i32| alpha.powi(7 - k) + if k % 2 == 0 { 1.0 } else { -1.0 } * (1.0 - alpha).powi(7 - k);
        let expansion_total = (0..128usize)
            .map(|m| prefactor(m.count_ones() as i32) * avg[m])
            .collect::<Neumaier>()
            .value();
        let main_term = prefactor(0);

        let pick = |masks: &[usize]| masks.iter().map(|&m| avg[m]).collect::<Vec<_>>();
        let class = |k: usize, name: &str, values: Vec<f64>| ClassContribution {
            k,
            class: name.into(),
            values,
        };
        let k4_a1 = pick(&self.classes.independent_k4);
        let k4_a2 = pick(&K4_A2.map(|s| mask_of(&s)));
        let k4_a3 = pick(&K4_A3.map(|s| mask_of(&s)));
        let k4_a4 = pick(&K4_A4.map(|s| mask_of(&s)));
        let k5_a1 = pick(&self.classes.independent_k5);
        let k5_a2 = pick(&K5_A2.map(|s| mask_of(&s)));
        let k6_a1 = pick(&K6_A1.map(omit));
        let k6_a2 = pick(&K6_A2.map(omit));
        let k6_a3 = pick(&K6_A3.map(omit));
        let small: Vec<f64> = (1..128usize).filter(|m| m.count_ones() <= 3).map(|m| avg[m]).collect();

        let max_abs = |v: &[f64]| v.iter().fold(0.0, |a: f64, b| a.max(b.abs()));
        let max_dev = |v: &[f64], t: f64| v.iter().fold(0.0, |a: f64, b| a.max((b - t).abs()));
        let poly = 22.0 * alpha * alpha - 25.0 * alpha + 8.0;
        let mut inequalities = Vec::new();
        let mut le = |name: &str, lhs: f64, rhs: f64| {
            inequalities.push(InequalityCheck {
                name: name.into(),
                lhs,
                rhs,
                holds: lhs <= rhs + CUBE_TOLERANCE,
            })
        };
        le("|k<=3 contributions| <= 0", max_abs(&small), 0.0);
        le("|A1(k=4)| <= 0", max_abs(&k4_a1), 0.0);
        le("|A2(k=4) - t_AQ| <= 0", max_dev(&k4_a2, t_aq), 0.0);
        le("|A3(k=4) - t_AQ| <= 0", max_dev(&k4_a3, t_aq), 0.0);
        le("|A4(k=4)| <= t_AQ", max_abs(&k4_a4), t_aq);
        if self.group.order() % 2 == 1 {
            le("|A4(k=4)| <= 0 (odd order)", max_abs(&k4_a4), 0.0);
        }
        le("|A1(k=5)| <= 0", max_abs(&k5_a1), 0.0);
        le("max |f^(gamma != 1)| <= 1 - alpha", max_nontrivial_fourier, 1.0 - alpha);
        le("|A2(k=5)| <= (1 - alpha) t_AQ", max_abs(&k5_a2), (1.0 - alpha) * t_aq);
        le("|A1(k=6) - t_AH| <= 0", max_dev(&k6_a1, t_ah), 0.0);
        le("|A2(k=6)| <= t_AH", max_abs(&k6_a2), t_ah);
        le("|A3(k=6)| <= E(f^2) t_AQ", max_abs(&k6_a3), f_square_mean * t_aq);
        le("E(f^2) <= alpha - alpha^2", f_square_mean, alpha - alpha * alpha);
        le("79/88 <= 22 alpha^2 - 25 alpha + 8", 79.0 / 88.0, poly);
        le("|expansion - direct| <= 0", (expansion_total - total).abs(), 0.0);
        le("main + t_AQ (22 alpha^2 - 25 alpha + 8) <= total", main_term + t_aq * poly, total);
        le("1/64 + t_AQ (22 alpha^2 - 25 alpha + 8) <= total", 1.0 / 64.0 + t_aq * poly, total);
        le("1/64 <= total", 1.0 / 64.0, total);

        Ok(ContributionReport {
            alpha,
            swapped,
            total,
            expansion_total,
            main_term,
            t_aq,
            t_ah,
            f_square_mean,
            max_nontrivial_fourier,
            classes: vec![
                class(4, "A1", k4_a1),
                class(4, "A2", k4_a2),
                class(4, "A3", k4_a3),
                class(4, "A4", k4_a4),
                class(5, "A1", k5_a1),
                class(5, "A2", k5_a2),
                class(6, "A1", k6_a1),
                class(6, "A2", k6_a2),
                class(6, "A3", k6_a3),
            ],
            inequalities,
            partition_consistent: self.classes.partition_consistent,
        })
    }
}

/// One-off report; use [`CubeAnalyzer`] for many functions on the same group.
pub fn cube_report(group: &GroupSpec, g: &DensityTable) -> Result<ContributionReport> {
    CubeAnalyzer::new(group.clone())?.report(g)
}
