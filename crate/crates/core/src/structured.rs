//! Structured evaluation of `t(f) + t(1 - f)` for `f = 1/2 + α·f₁·f₂`,
//! where `f₂` is a short sum of quadratic phase functions.
//!
//! Expanding the product over the `d` forms gives
//!
//! ```text
//! t(f) + t(1-f) = 2^{1-d} + Σ_{I even, I ≠ ∅} 2^{|I|+1-d} α^{|I|} E_w ∏_{i∈I} (f₁f₂)(φ_i(w)),
//! ```
//!
//! odd subsets cancelling between `f` and `1 - f`. In vector mode
//! (`G = F_p^{n+1}`, `f₁` reading the first coordinate and `f₂` the other
//! `n`) each average splits into a directional factor on `F_p^r` and a
//! muting factor which, after expanding `f₂` into its atoms, is a sum of
//! `n`-th powers of single `F_p^s` phase averages. The cost is therefore
//! independent of `n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, isqrt, reduce_rows};
use crate::error::{Error, Result};
use crate::forms::{span_coordinates, FormSystem};
use crate::group::GroupSpec;
use crate::multiplicity::commonness_threshold;
use crate::numeric::{ComplexSum, Neumaier, RootTable};

/// One term `weight · ω^{λ(xᵀx + q·1ᵀx)}` of the muting function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseAtom {
    pub weight: f64,
    pub lambda: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `G = F_p^{n+1}`: directional part on the first coordinate, muting part on the rest.
    Vector,
    /// `G = Z_p`: both parts on the same coordinate, linear phase scaled by `⌊√p⌋`.
    Cyclic,
}

/// Symbolic description of `f = 1/2 + α·f₁·f₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleRecipe {
    pub mode: Mode,
    pub p: u64,
    /// Number of muting coordinates; always 1 in cyclic mode.
    pub n: usize,
    /// `f₁` on `Z_p`.
    pub directional: Vec<f64>,
    pub atoms: Vec<PhaseAtom>,
    pub alpha: f64,
    pub beta: f64,
}

impl CounterexampleRecipe {
    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} must be an odd prime")));
        }
        match self.mode {
            Mode::Vector if self.n == 0 => {
                return Err(Error::InvalidParameter("vector mode needs at least one muting coordinate".into()))
            }
            Mode::Cyclic if self.n != 1 => {
                return Err(Error::InvalidParameter("cyclic recipes have n = 1".into()));
            }
            _ => {}
        }
        if self.directional.len() != p as usize {
            return Err(Error::GroupMismatch(format!(
                "directional table has {} values, expected {p}",
                self.directional.len()
            )));
        }
        if self.directional.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("directional table has non-finite values".into()));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::InvalidParameter(format!("beta = {} outside (0, 1]", self.beta)));
        }
        if self.atoms.is_empty() {
            return Err(Error::InvalidParameter("no phase atoms".into()));
        }
        for a in &self.atoms {
            if a.lambda == 0 || !(a.weight.abs() <= 1.0) {
                return Err(Error::InvalidParameter(format!("invalid atom {a:?}")));
            }
        }
        // conjugate pairs keep f₂ real
        let mut plus: Vec<(i64, u64)> = self.atoms.iter().map(|a| (a.lambda, a.weight.to_bits())).collect();
        let mut minus: Vec<(i64, u64)> = self.atoms.iter().map(|a| (-a.lambda, a.weight.to_bits())).collect();
        plus.sort_unstable();
        minus.sort_unstable();
        if plus != minus {
            return Err(Error::InvalidParameter("atoms must come in conjugate pairs (λ, -λ)".into()));
        }
        let cap = self.alpha_cap();
        if !(self.alpha >= 0.0 && self.alpha <= cap * (1.0 + 1e-12)) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} outside [0, {cap}] (range of f would leave [0, 1])",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Linear-phase scale: 1 in vector mode, `⌊√p⌋` in cyclic mode.
    pub fn q(&self) -> u64 {
        match self.mode {
            Mode::Vector => 1,
            Mode::Cyclic => isqrt(self.p),
        }
    }

    /// Group on which the assembled function lives.
    pub fn target_group(&self) -> Result<GroupSpec> {
        match self.mode {
            Mode::Vector => GroupSpec::vector(self.p, self.n + 1),
            Mode::Cyclic => GroupSpec::cyclic(self.p),
        }
    }

    pub fn max_abs_directional(&self) -> f64 {
        self.directional.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Σ |weight|`, an upper bound for `|f₂|`.
    pub fn muting_bound(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight.abs()).sum()
    }

    /// Largest `α` keeping `1/2 + α·f₁·f₂` inside `[0, 1]`: `1 / (2·max|f₁|·Σ|w|)`.
    pub fn alpha_cap(&self) -> f64 {
        1.0 / (2.0 * self.max_abs_directional().max(f64::MIN_POSITIVE) * self.muting_bound())
    }

    /// `f₂` at a point given by its muting coordinates.
    pub fn muting_value(&self, roots: &RootTable, coords: &[u64]) -> f64 {
        let p = self.p;
        let q = self.q();
        let e = coords.iter().fold(0u64, |acc, &t| (acc + t * t % p + q * t % p) % p);
        self.atoms
            .iter()
            .map(|a| a.weight * roots.pow(a.lambda * e as i64).re)
            .sum()
    }

    /// `F = f₁·f₂` on `Z_p` (cyclic mode).
    pub fn cyclic_product_table(&self) -> Vec<f64> {
        let roots = RootTable::new(self.p);
        (0..self.p)
            .map(|x| self.directional[x as usize] * self.muting_value(&roots, &[x]))
            .collect()
    }
}

/// One choice of atom per form and its phase average over `F_p^s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaTerm {
    /// Index into the atom list, one per form.
    pub atoms: Vec<usize>,
    /// `E_{v ∈ F_p^s} ω^{Σ_i λ_i((N_i v)² + q N_i v)}` for a single coordinate.
    pub sum: Complex64,
    /// Whether the phase vanishes identically (then `sum = 1` exactly).
    pub trivial: bool,
}

/// Expands `∏_i f₂(φ_i(·))` over all atom choices.
///
/// `rows` are the forms mod `p` over `F_p^r`; each form's contribution
/// `(φ_i(u))² + q·φ_i(u)` depends on `u` only through the span of the rows,
/// so the average runs over `F_p^s`, `s` the rank.
pub fn phase_lambda_terms(rows: &[Vec<u64>], p: u64, q: u64, lambdas: &[i64]) -> Vec<LambdaTerm> {
    let coords = span_coordinates(rows, p);
    let s = coords[0].len();
    let points = (p as usize).pow(s as u32);
    let exps: Vec<Vec<u32>> = coords
        .iter()
        .map(|row| {
            let mut v = vec![0u64; s];
            (0..points)
                .map(|idx| {
                    let mut rest = idx as u64;
                    for c in v.iter_mut().rev() {
                        *c = rest % p;
                        rest /= p;
                    }
                    let t = row.iter().zip(&v).map(|(&a, &b)| a * b % p).sum::<u64>() % p;
                    ((t * t + q % p * t) % p) as u32
                })
                .collect()
        })
        .collect();
    let roots = RootTable::new(p);
    let lam: Vec<u32> = lambdas.iter().map(|&l| l.rem_euclid(p as i64) as u32).collect();
    let mut out = Vec::new();
    let mut choice = Vec::with_capacity(rows.len());
    let mut levels = vec![vec![0u32; points]; rows.len() + 1];
    expand(&exps, &lam, p as u32, &roots, 0, &mut choice, &mut levels, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn expand(
    exps: &[Vec<u32>],
    lam: &[u32],
    p: u32,
    roots: &RootTable,
    depth: usize,
    choice: &mut Vec<usize>,
    levels: &mut [Vec<u32>],
    out: &mut Vec<LambdaTerm>,
) {
    if depth == exps.len() {
        let acc = &levels[depth];
        let trivial = acc.iter().all(|&e| e == 0);
        let sum = if trivial {
            Complex64::new(1.0, 0.0)
        } else {
            let total: ComplexSum = acc.iter().map(|&e| roots.get(e as usize)).collect();
            total.value() / acc.len() as f64
        };
        out.push(LambdaTerm {
            atoms: choice.clone(),
            sum,
            trivial,
        });
        return;
    }
    for (a, &l) in lam.iter().enumerate() {
        let (lo, hi) = levels.split_at_mut(depth + 1);
        let prev = &lo[depth];
        for ((next, &e), &x) in hi[0].iter_mut().zip(prev).zip(&exps[depth]) {
            *next = ((e as u64 + l as u64 * x as u64) % p as u64) as u32;
        }
        choice.push(a);
        expand(exps, lam, p, roots, depth + 1, choice, levels, out);
        choice.pop();
    }
}

/// `Re Σ_λ (∏ weights) · sum_λ^n`.
pub fn muting_average(terms: &[LambdaTerm], atoms: &[PhaseAtom], n: usize) -> f64 {
    terms
        .iter()
        .map(|t| {
            let w: f64 = t.atoms.iter().map(|&a| atoms[a].weight).product();
            let z = if t.trivial { Complex64::new(1.0, 0.0) } else { t.sum.powu(n as u32) };
            w * z.re
        })
        .collect::<Neumaier>()
        .value()
}

/// `E_{v ∈ F_p^s} ∏_i table(N_i v)` for rows mod `p`.
pub fn product_average(rows: &[Vec<u64>], p: u64, table: &[f64]) -> f64 {
    let coords = span_coordinates(rows, p);
    let s = coords[0].len();
    let points = (p as usize).pow(s as u32);
    let mut acc = Neumaier::new();
    let mut v = vec![0u64; s];
    let mut vals = vec![0u64; coords.len()];
    for _ in 0..points {
        for (val, row) in vals.iter_mut().zip(&coords) {
            *val = row.iter().zip(&v).map(|(&a, &b)| a * b).sum::<u64>() % p;
        }
        acc.add(vals.iter().map(|&x| table[x as usize]).product());
        for c in v.iter_mut().rev() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    acc.value() / points as f64
}

/// Contribution of one subset `I` of forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub subset: Vec<usize>,
    /// Dimension of the span of the forms in `I` mod `p`.
    pub rank: usize,
    /// `E_{u ∈ F_p^r} ∏_{i∈I} f₁(φ_i(u))`; in cyclic mode the full average of `∏ f₁f₂`.
    pub directional: f64,
    /// `E ∏_{i∈I} f₂(φ_i(·))` over the muting coordinates; 1 in cyclic mode.
    pub muting: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuredValue {
    /// `t(f) + t(1 - f)` with subsets larger than `subset_cap` dropped.
    pub value: f64,
    /// Bound on the dropped subsets; 0 when nothing was dropped.
    pub truncation_bound: f64,
    pub threshold: f64,
    pub subset_cap: usize,
    pub terms: Vec<ExpansionTerm>,
}

impl StructuredValue {
    pub fn margin(&self) -> f64 {
        self.threshold - self.value
    }
}

#[derive(Debug, Clone)]
struct SubsetData {
    subset: Vec<usize>,
    rank: usize,
    directional: f64,
    lambda_terms: Vec<LambdaTerm>,
}

/// The `α`- and `n`-independent parts of the expansion for one system.
#[derive(Debug, Clone)]
pub struct Expansion {
    mode: Mode,
    d: usize,
    subset_cap: usize,
    subsets: Vec<SubsetData>,
}

fn even_subsets(d: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << d))
        .filter(|m| m.count_ones() % 2 == 0 && m.count_ones() as usize <= cap)
        .map(|m| (0..d).filter(|&i| m & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn subset_rows(rows: &[Vec<u64>], subset: &[usize]) -> Vec<Vec<u64>> {
    subset.iter().map(|&i| rows[i].clone()).collect()
}

fn check_cost(subsets: &[(Vec<usize>, usize)], p: u64, branching: usize, cap: u64) -> Result<()> {
    let mut total: u128 = 0;
    for (subset, rank) in subsets {
        let points = (p as u128).saturating_pow(*rank as u32);
        let leaves = (branching as u128).saturating_pow(subset.len() as u32);
        total = total.saturating_add(points.saturating_mul(leaves.max(1) * subset.len() as u128));
    }
    if total > cap as u128 {
        return Err(Error::EnumerationCap { needed: total, cap });
    }
    Ok(())
}

fn ranks(rows: &[Vec<u64>], p: u64, subsets: Vec<Vec<usize>>) -> Vec<(Vec<usize>, usize)> {
    subsets
        .into_iter()
        .map(|s| {
            let signed: Vec<Vec<i64>> = s.iter().map(|&i| rows[i].iter().map(|&v| v as i64).collect()).collect();
            let rank = crate::arith::rank_mod_p(&signed, p);
            (s, rank)
        })
        .collect()
}

impl Expansion {
    /// Vector-mode expansion: directional factors from `directional` on `Z_p`,
    /// muting factors for atoms with the given `λ`s (weights are supplied at
    /// evaluation time).
    pub fn vector(system: &FormSystem, directional: &[f64], lambdas: &[i64], subset_cap: usize) -> Result<Self> {
        let (p, _) = system
            .group()
            .vector_params()
            .ok_or_else(|| Error::NotVectorMode(format!("moduli {:?}", system.group().moduli())))?;
        let rows = reduce_rows(system.matrix(), p);
        let subsets = ranks(&rows, p, even_subsets(system.d(), subset_cap));
        check_cost(&subsets, p, lambdas.len(), system.group().enumeration_cap())?;
        let subsets = subsets
            .into_iter()
            .map(|(subset, rank)| {
                let sub = subset_rows(&rows, &subset);
                SubsetData {
                    directional: product_average(&sub, p, directional),
                    lambda_terms: phase_lambda_terms(&sub, p, 1, lambdas),
                    subset,
                    rank,
                }
            })
            .collect();
        Ok(Self {
            mode: Mode::Vector,
            d: system.d(),
            subset_cap,
            subsets,
        })
    }

    /// Cyclic-mode expansion for the product table `F = f₁·f₂` on `Z_p`.
    pub fn cyclic(system: &FormSystem, product_table: &[f64], subset_cap: usize) -> Result<Self> {
        let p = match system.group().moduli() {
            [p] if is_prime(*p) => *p,
            other => return Err(Error::GroupMismatch(format!("cyclic mode needs Z_p, got Z{other:?}"))),
        };
        let rows = reduce_rows(system.matrix(), p);
        let subsets = ranks(&rows, p, even_subsets(system.d(), subset_cap));
        check_cost(&subsets, p, 1, system.group().enumeration_cap())?;
        let subsets = subsets
            .into_iter()
            .map(|(subset, rank)| SubsetData {
                directional: product_average(&subset_rows(&rows, &subset), p, product_table),
                lambda_terms: Vec::new(),
                subset,
                rank,
            })
            .collect();
        Ok(Self {
            mode: Mode::Cyclic,
            d: system.d(),
            subset_cap,
            subsets,
        })
    }

    /// Evaluates the expansion at `α`, atom weights and `n`.
    ///
    /// `max_abs` bounds `|f₁f₂|` and feeds the truncation bound.
    pub fn evaluate(&self, alpha: f64, atoms: &[PhaseAtom], n: usize, max_abs: f64) -> StructuredValue {
        let d = self.d;
        let terms: Vec<ExpansionTerm> = self
            .subsets
            .iter()
            .map(|s| ExpansionTerm {
                subset: s.subset.clone(),
                rank: s.rank,
                directional: s.directional,
                muting: match self.mode {
                    Mode::Vector => muting_average(&s.lambda_terms, atoms, n),
                    Mode::Cyclic => 1.0,
                },
            })
            .collect();
        let mut acc = Neumaier::new();
        acc.add(commonness_threshold(d));
        for t in &terms {
            let k = t.subset.len() as i32;
            acc.add(2f64.powi(k + 1 - d as i32) * alpha.powi(k) * t.directional * t.muting);
        }
        let truncation_bound = (self.subset_cap + 1..=d)
            .map(|k| 2f64.powi(k as i32 + 1 - d as i32) * binomial(d, k) * (alpha * max_abs).powi(k as i32))
            .fold(0.0, |a, b| a + b);
        StructuredValue {
            value: acc.value(),
            truncation_bound,
            threshold: commonness_threshold(d),
            subset_cap: self.subset_cap,
            terms,
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `t(f) + t(1 - f)` for the function described by `recipe`, via the expansion.
pub fn multiplicity_structured(
    system: &FormSystem,
    recipe: &CounterexampleRecipe,
    subset_cap: usize,
) -> Result<StructuredValue> {
    recipe.validate()?;
    let target = recipe.target_group()?;
    if system.group().moduli() != target.moduli() {
        return Err(Error::GroupMismatch(format!(
            "recipe lives on Z{:?}, system on Z{:?}",
            target.moduli(),
            system.group().moduli()
        )));
    }
    let cap = subset_cap.min(system.d());
    match recipe.mode {
        Mode::Vector => {
            let lambdas: Vec<i64> = recipe.atoms.iter().map(|a| a.lambda).collect();
            let exp = Expansion::vector(system, &recipe.directional, &lambdas, cap)?;
            let bound = recipe.max_abs_directional() * recipe.muting_bound();
            Ok(exp.evaluate(recipe.alpha, &recipe.atoms, recipe.n, bound))
        }
        Mode::Cyclic => {
            let table = recipe.cyclic_product_table();
            let exp = Expansion::cyclic(system, &table, cap)?;
            let bound = table.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            Ok(exp.evaluate(recipe.alpha, &recipe.atoms, 1, bound))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_terms_of_single_form() {
        // one form, F_5: E_t ω^{λ(t²+t)} has modulus 5^{-1/2} for λ ≠ 0
        let terms = phase_lambda_terms(&[vec![1, 0]], 5, 1, &[1, -1, 3, -3]);
        assert_eq!(terms.len(), 4);
        for t in &terms {
            assert!(!t.trivial);
            assert!((t.sum.norm() - 5f64.powf(-0.5)).abs() < 1e-14);
        }
    }

    #[test]
    fn four_ap_has_trivial_pair() {
        let rows = reduce_rows(&[vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]], 7);
        let terms = phase_lambda_terms(&rows, 7, 1, &[1, -1, 3, -3]);
        let trivial: Vec<&Vec<usize>> = terms.iter().filter(|t| t.trivial).map(|t| &t.atoms).collect();
        // λ = ±(1, -3, 3, -1)
        assert_eq!(trivial, vec![&vec![0, 3, 2, 1], &vec![1, 2, 3, 0]]);
    }

    #[test]
    fn subsets_are_even_and_ordered() {
        let s = even_subsets(4, 4);
        assert_eq!(s.len(), 7);
        assert_eq!(s[0], vec![0, 1]);
        assert_eq!(s[6], vec![0, 1, 2, 3]);
        assert_eq!(even_subsets(4, 2).len(), 6);
        assert_eq!(binomial(7, 3), 35.0);
    }
}
