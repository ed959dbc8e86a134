//! Systems of linear forms induced by integer matrices.

use serde::Serialize;

use crate::arith::{
    adjugate, det, independent_subset, least_abs_residue, mat_inv_mod_p, mat_mul_mod_p, mod_inv,
    rank_mod_p, reduce, reduce_rows, reduce_wide, EchelonBasis,
};
use crate::error::{Error, Result};
use crate::fraction::c_fraction_bound;
use crate::group::{GroupElement, GroupSpec};

/// `d` linear forms in `r` variables over a group, given by a `d × r` integer matrix.
///
/// Form `i` maps `w ∈ G^r` to `Σ_k M[i][k]·w_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormSystem {
    matrix: Vec<Vec<i64>>,
    #[serde(skip)]
    group: GroupSpec,
    distinct: bool,
    injective: bool,
}

/// A pair of forms with `φ_j = c·φ_i` mod `p`, `c ∉ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProportionalPair {
    pub i: usize,
    pub j: usize,
    pub c: u64,
    /// First pair (in the same scan order) with `c ≡ -1`, if any.
    pub negation: Option<(usize, usize)>,
}

pub fn induce_system(matrix: Vec<Vec<i64>>, group: GroupSpec) -> Result<FormSystem> {
    FormSystem::new(matrix, group)
}

impl FormSystem {
    pub fn new(matrix: Vec<Vec<i64>>, group: GroupSpec) -> Result<Self> {
        let r = matrix.first().map_or(0, Vec::len);
        if matrix.is_empty() || r == 0 {
            return Err(Error::Matrix("matrix must have at least one row and one column".into()));
        }
        if let Some(i) = matrix.iter().position(|row| row.len() != r) {
            return Err(Error::Matrix(format!(
                "row {} has {} entries, expected {r}",
                i + 1,
                matrix[i].len()
            )));
        }
        let distinct = pairwise_distinct(&matrix, group.moduli());
        let injective = is_injective(&matrix, group.moduli());
        Ok(Self {
            matrix,
            group,
            distinct,
            injective,
        })
    }

    /// The same matrix over another group.
    pub fn over(&self, group: GroupSpec) -> Result<Self> {
        Self::new(self.matrix.clone(), group)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Number of forms.
    pub fn d(&self) -> usize {
        self.matrix.len()
    }

    /// Number of variables.
    pub fn r(&self) -> usize {
        self.matrix[0].len()
    }

    /// Whether the forms are pairwise distinct as maps `G^r → G`.
    pub fn is_distinct(&self) -> bool {
        self.distinct
    }

    /// Whether `w ↦ (φ_1(w), …, φ_d(w))` is injective on `G^r`.
    pub fn is_injective(&self) -> bool {
        self.injective
    }

    /// `max |M_ik| + 1`, the smallest `C` with every entry a `C`-fraction over `Z`.
    pub fn entry_bound(&self) -> u64 {
        self.matrix.iter().flatten().map(|v| v.unsigned_abs()).max().unwrap_or(0) + 1
    }

    fn require_vector(&self) -> Result<u64> {
        self.group
            .vector_params()
            .map(|(p, _)| p)
            .ok_or_else(|| Error::NotVectorMode(format!("moduli {:?}", self.group.moduli())))
    }

    /// Matrix rows reduced mod `p` (vector mode only).
    pub fn rows_mod_p(&self) -> Result<Vec<Vec<u64>>> {
        let p = self.require_vector()?;
        Ok(reduce_rows(&self.matrix, p))
    }

    pub fn evaluate(&self, w: &[GroupElement]) -> Result<Vec<GroupElement>> {
        if w.len() != self.r() {
            return Err(Error::GroupMismatch(format!("expected {} variables, got {}", self.r(), w.len())));
        }
        let moduli = self.group.moduli();
        if let Some(bad) = w.iter().find(|e| e.coords.len() != moduli.len()) {
            return Err(Error::GroupMismatch(format!("{:?} has the wrong number of coordinates", bad.coords)));
        }
        self.matrix
            .iter()
            .map(|row| {
                let coords: Vec<i64> = moduli
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| {
                        let s: i128 = row
                            .iter()
                            .zip(w)
                            .map(|(&c, e)| c as i128 * e.coords[j] as i128)
                            .sum();
                        reduce_wide(s, m) as i64
                    })
                    .collect();
                self.group.element_from_coords(&coords)
            })
            .collect()
    }

    /// Instance at the parameter tuple `w` given by element indices.
    pub fn evaluate_indices(&self, w: &[usize]) -> Vec<usize> {
        let elems: Vec<GroupElement> = w.iter().map(|&i| self.group.element(i)).collect();
        self.evaluate(&elems)
            .expect("indices come from the same group")
            .into_iter()
            .map(|e| e.index)
            .collect()
    }

    /// First 4-subset of forms (lexicographic) that can be ordered as an
    /// arithmetic progression with nonzero common difference, returned as
    /// 0-based indices `(i1, i2, i3, i4)`.
    ///
    /// Over small fields one subset may admit several orderings (mod 5 a
    /// progression with difference `δ` is also one with difference `2δ`);
    /// the ordering whose difference has the smallest least-absolute entries
    /// is chosen, then the lexicographically first.
    pub fn detect_four_ap(&self) -> Result<Option<[usize; 4]>> {
        let p = self.require_vector()?;
        let rows = reduce_rows(&self.matrix, p);
        let d = rows.len();
        let diff = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect() };
        let height = |v: &[u64]| v.iter().map(|&x| least_abs_residue(x as i64, p).unsigned_abs()).max().unwrap_or(0);
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    for e in c + 1..d {
                        let mut best: Option<(u64, [usize; 4])> = None;
                        for order in permutations([a, b, c, e]) {
                            let d1 = diff(&rows[order[1]], &rows[order[0]]);
                            if d1.iter().all(|&v| v == 0) {
                                continue;
                            }
                            if d1 == diff(&rows[order[2]], &rows[order[1]])
                                && d1 == diff(&rows[order[3]], &rows[order[2]])
                            {
                                let h = height(&d1);
                                if best.map_or(true, |(bh, _)| h < bh) {
                                    best = Some((h, order));
                                }
                            }
                        }
                        if let Some((_, order)) = best {
                            return Ok(Some(order));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn detect_proportional_pair(&self) -> Result<Option<ProportionalPair>> {
        let p = self.require_vector()?;
        let rows = reduce_rows(&self.matrix, p);
        let mut first: Option<(usize, usize, u64)> = None;
        let mut negation = None;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let Some(c) = proportionality(&rows[i], &rows[j], p) else {
                    continue;
                };
                if c == 0 || c == 1 {
                    continue;
                }
                first.get_or_insert((i, j, c));
                if c == p - 1 && negation.is_none() {
                    negation = Some((i, j));
                }
            }
        }
        Ok(first.map(|(i, j, c)| ProportionalPair { i, j, c, negation }))
    }
}

fn pairwise_distinct(matrix: &[Vec<i64>], moduli: &[u64]) -> bool {
    let mut ms = moduli.to_vec();
    ms.sort_unstable();
    ms.dedup();
    for i in 0..matrix.len() {
        for j in i + 1..matrix.len() {
            let same = ms.iter().all(|&m| {
                matrix[i]
                    .iter()
                    .zip(&matrix[j])
                    .all(|(&a, &b)| reduce(a, m) == reduce(b, m))
            });
            if same {
                return false;
            }
        }
    }
    true
}

// Injective on Z_m^r iff the matrix has full column rank mod every prime dividing m.
fn is_injective(matrix: &[Vec<i64>], moduli: &[u64]) -> bool {
    let r = matrix[0].len();
    let mut primes: Vec<u64> = Vec::new();
    for &m in moduli {
        let mut rest = m;
        let mut q = 2;
        while q * q <= rest {
            if rest % q == 0 {
                primes.push(q);
                while rest % q == 0 {
                    rest /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes.iter().all(|&q| rank_mod_p(matrix, q) == r)
}

/// `c` with `b = c·a` mod `p`, for a nonzero row `a`.
fn proportionality(a: &[u64], b: &[u64], p: u64) -> Option<u64> {
    let k = a.iter().position(|&v| v != 0)?;
    if b.iter().all(|&v| v == 0) {
        return None;
    }
    let c = b[k] * mod_inv(a[k], p)? % p;
    a.iter().zip(b).all(|(&x, &y)| x * c % p == y).then_some(c)
}

/// All orderings of four items, in lexicographic order of positions.
fn permutations(items: [usize; 4]) -> impl Iterator<Item = [usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([items[a], items[b], items[c], items[d]]);
                    }
                }
            }
        }
    }
    out.into_iter()
}

/// Output of [`reparametrize`].
#[derive(Debug, Clone, Serialize)]
pub struct Reparametrization {
    /// `Φ′`, with matrix entries stored as least-absolute residues mod `p`.
    pub system: FormSystem,
    /// `N = m·M·A` exactly, where `A` is the adjugate of the completed pivot matrix.
    pub integer_matrix: Vec<Vec<i128>>,
    /// `m·A`: `Φ′(v) = Φ(m·A·v)`.
    pub change_of_variables: Vec<Vec<i128>>,
    pub determinant: i128,
    /// `m ≡ det⁻¹ (mod p)`, least-absolute representative.
    pub unit: i64,
    pub pivots: Vec<usize>,
    /// `C₁ = max |M_ik| + 1`.
    pub c1: u64,
    /// `C₂ = r·C₁·(C₁√r)^r`.
    pub c2: f64,
    /// Largest minimal fraction bound among the coefficients of `Φ′` mod `p`.
    pub max_fraction_bound: u64,
}

impl Reparametrization {
    /// Whether every coefficient of `Φ′` is a `C₂`-fraction.
    pub fn within_c2(&self) -> bool {
        (self.max_fraction_bound as f64) <= self.c2
    }
}

/// Change of variables making the pivot forms coordinate projections.
///
/// The pivot rows are extended to a basis by unit vectors to give a matrix
/// `B`; with `A = adj(B)` and `m ≡ det(B)⁻¹`, the system `N = m·M·A`
/// satisfies `φ′_{i_j}(v) = v_j` mod `p` and has the same image as `Φ`.
pub fn reparametrize(system: &FormSystem, pivots: &[usize]) -> Result<Reparametrization> {
    let p = system.require_vector()?;
    let r = system.r();
    if pivots.is_empty() || pivots.len() > r || pivots.iter().any(|&i| i >= system.d()) {
        return Err(Error::InvalidParameter(format!("invalid pivot list {pivots:?}")));
    }
    let mut basis = EchelonBasis::new(p);
    let mut b: Vec<Vec<i128>> = Vec::with_capacity(r);
    for &i in pivots {
        let row = &system.matrix[i];
        if !basis.insert(&row.iter().map(|&v| reduce(v, p)).collect::<Vec<_>>()) {
            return Err(Error::DependentPivots { p });
        }
        b.push(row.iter().map(|&v| v as i128).collect());
    }
    for k in 0..r {
        let unit: Vec<u64> = (0..r).map(|j| u64::from(j == k)).collect();
        if basis.insert(&unit) {
            b.push(unit.iter().map(|&v| v as i128).collect());
        }
    }
    let determinant = det(&b);
    let det_mod = reduce_wide(determinant, p);
    let inv = mod_inv(det_mod, p).ok_or_else(|| Error::Matrix(format!("pivot determinant vanishes mod {p}")))?;
    let unit = least_abs_residue(inv as i64, p);
    let adj = adjugate(&b);
    let change: Vec<Vec<i128>> = adj
        .iter()
        .map(|row| row.iter().map(|&v| v * unit as i128).collect())
        .collect();
    let integer_matrix: Vec<Vec<i128>> = system
        .matrix
        .iter()
        .map(|row| {
            (0..r)
                .map(|j| (0..r).map(|k| row[k] as i128 * change[k][j]).sum())
                .collect()
        })
        .collect();
    let residues: Vec<Vec<i64>> = integer_matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| least_abs_residue(reduce_wide(v, p) as i64, p))
                .collect()
        })
        .collect();
    let c1 = system.entry_bound();
    let c2 = r as f64 * c1 as f64 * (c1 as f64 * (r as f64).sqrt()).powi(r as i32);
    let cap = if c2 >= p as f64 { p + 1 } else { c2.ceil() as u64 };
    let max_fraction_bound = residues
        .iter()
        .flatten()
        .map(|&v| c_fraction_bound(reduce(v, p), p, cap.max(2)).map_or(u64::MAX, |w| w.bound))
        .max()
        .unwrap_or(0);
    Ok(Reparametrization {
        system: FormSystem::new(residues, system.group.clone())?,
        integer_matrix,
        change_of_variables: change,
        determinant,
        unit,
        pivots: pivots.to_vec(),
        c1,
        c2,
        max_fraction_bound,
    })
}

/// Coordinates of a set of forms (rows mod a prime `p`) relative to a
/// basis of their span.
///
/// Returns rows `N_i ∈ F_p^s` such that `u ↦ (row_i·u)_i` on `F_p^r` and
/// `v ↦ (N_i·v)_i` on `F_p^s` push the uniform measure to the same
/// distribution.
pub(crate) fn span_coordinates(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let r = rows[0].len();
    let signed: Vec<Vec<i64>> = rows.iter().map(|row| row.iter().map(|&v| v as i64).collect()).collect();
    let pivots = independent_subset(&signed, p);
    let s = pivots.len();
    let mut basis = EchelonBasis::new(p);
    let mut b: Vec<Vec<u64>> = Vec::with_capacity(r);
    for &i in &pivots {
        basis.insert(&rows[i]);
        b.push(rows[i].clone());
    }
    for k in 0..r {
        let unit: Vec<u64> = (0..r).map(|j| u64::from(j == k)).collect();
        if basis.insert(&unit) {
            b.push(unit);
        }
    }
    let inv = mat_inv_mod_p(&b, p).expect("completed basis is invertible");
    mat_mul_mod_p(rows, &inv, p)
        .into_iter()
        .map(|row| row[..s].to_vec())
        .collect()
}
