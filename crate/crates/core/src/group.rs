//! Finite abelian groups `Z_{m_1} × … × Z_{m_k}`, real-valued tables on them,
//! characters, the discrete Fourier transform and quadratic phase averages.
//!
//! Elements are addressed by a mixed-radix index in which the first
//! coordinate is the most significant digit. Characters are indexed by
//! group elements through the canonical isomorphism `ξ ↦ γ_ξ` with
//! `γ_ξ(x) = ∏_j exp(2πi ξ_j x_j / m_j)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{is_prime, lcm, reduce};
use crate::error::{Error, Result};
use crate::numeric::{ComplexSum, Neumaier, RootTable};

/// Default ceiling on the number of tuples any enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000;

/// Slack allowed when checking a table against its declared range.
pub const RANGE_TOLERANCE: f64 = 1e-12;

/// Tables up to this order get a precomputed addition table.
const ADD_TABLE_LIMIT: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    enumeration_cap: u64,
    #[serde(skip)]
    order: u128,
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidParameter("a group needs at least one cyclic factor".into()));
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidModulus(m));
        }
        let order = moduli
            .iter()
            .try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
            .unwrap_or(u128::MAX);
        Ok(Self {
            moduli,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            order,
        })
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    /// `F_p^n`.
    pub fn vector(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        Self::new(vec![p; n])
    }

    pub fn with_enumeration_cap(mut self, cap: u64) -> Self {
        self.enumeration_cap = cap;
        self
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn enumeration_cap(&self) -> u64 {
        self.enumeration_cap
    }

    /// `|G|`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    /// `Some((p, n))` when every modulus equals the same prime `p`.
    pub fn vector_params(&self) -> Option<(u64, usize)> {
        let p = self.moduli[0];
        (is_prime(p) && self.moduli.iter().all(|&m| m == p)).then_some((p, self.moduli.len()))
    }

    pub fn is_vector(&self) -> bool {
        self.vector_params().is_some()
    }

    /// Whether `|G|` itself is within the enumeration cap.
    pub fn is_enumerable(&self) -> bool {
        self.order <= self.enumeration_cap as u128
    }

    /// Checks that `|G|^power` tuples may be enumerated and returns the count.
    pub fn check_enumeration(&self, power: usize) -> Result<usize> {
        let needed = (0..power).try_fold(1u128, |acc, _| acc.checked_mul(self.order)).unwrap_or(u128::MAX);
        if needed > self.enumeration_cap as u128 {
            return Err(Error::EnumerationCap {
                needed,
                cap: self.enumeration_cap,
            });
        }
        Ok(needed as usize)
    }

    /// Order as a `usize`, refusing groups beyond the enumeration cap.
    pub fn size(&self) -> Result<usize> {
        self.check_enumeration(1)
    }

    pub fn element(&self, index: usize) -> GroupElement {
        let mut coords = vec![0u64; self.moduli.len()];
        let mut rest = index as u64;
        for (c, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = rest % m;
            rest /= m;
        }
        GroupElement { coords, index }
    }

    pub fn element_from_coords(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.moduli.len() {
            return Err(Error::GroupMismatch(format!(
                "expected {} coordinates, got {}",
                self.moduli.len(),
                coords.len()
            )));
        }
        let coords: Vec<u64> = coords.iter().zip(&self.moduli).map(|(&c, &m)| reduce(c, m)).collect();
        let index = self.index_of(&coords);
        Ok(GroupElement { coords, index })
    }

    fn index_of(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&c, &m)| acc * m + c) as usize
    }

    pub fn coords(&self, index: usize) -> Vec<u64> {
        self.element(index).coords
    }

    /// Index of `a + b`.
    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.moduli.len() == 1 {
            let m = self.moduli[0] as usize;
            let s = a + b;
            return if s >= m { s - m } else { s };
        }
        let (mut ra, mut rb) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for &m in self.moduli.iter().rev() {
            let s = (ra % m + rb % m) % m;
            out += s * place;
            place *= m;
            ra /= m;
            rb /= m;
        }
        out as usize
    }

    /// Index of `k·a` for a signed integer `k`.
    pub fn scale(&self, a: usize, k: i64) -> usize {
        let coords: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| ((c as u128 * reduce(k, m) as u128) % m as u128) as u64)
            .collect();
        self.index_of(&coords)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.scale(a, -1)
    }

    fn check_member(&self, e: &GroupElement) -> Result<()> {
        let ok = e.coords.len() == self.moduli.len()
            && e.coords.iter().zip(&self.moduli).all(|(&c, &m)| c < m)
            && self.index_of(&e.coords) == e.index;
        if ok {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{:?} is not an element of Z{:?}", e.coords, self.moduli)))
        }
    }

    /// Exponent `k` (mod the group exponent `L`) with `γ_ξ(x) = exp(2πi k / L)`.
    fn pairing(&self, exponent: u64, freq: &[u64], point: &[u64]) -> u64 {
        let mut k = 0u128;
        for ((&f, &x), &m) in freq.iter().zip(point).zip(&self.moduli) {
            let fx = (f as u128 * x as u128) % m as u128;
            k += fx * (exponent / m) as u128;
        }
        (k % exponent as u128) as u64
    }
}

/// A group element with its coordinates and mixed-radix index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
    pub index: usize,
}

/// Addition on element indices, through a lookup table when the group is small.
#[derive(Debug, Clone)]
pub(crate) struct Adder {
    group: GroupSpec,
    order: usize,
    table: Option<Vec<u32>>,
}

impl Adder {
    pub(crate) fn new(group: &GroupSpec) -> Result<Self> {
        let order = group.size()?;
        let table = (order <= ADD_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    t.push(group.add(a, b) as u32);
                }
            }
            t
        });
        Ok(Self {
            group: group.clone(),
            order,
            table,
        })
    }

    #[inline]
    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.group.add(a, b),
        }
    }
}

/// A real-valued function on a group with a declared range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityTable {
    #[serde(skip)]
    group: GroupSpec,
    values: Vec<f64>,
    lo: f64,
    hi: f64,
}

impl DensityTable {
    pub fn new(group: GroupSpec, values: Vec<f64>, lo: f64, hi: f64) -> Result<Self> {
        let order = group.size()?;
        if values.len() != order {
            return Err(Error::GroupMismatch(format!(
                "table has {} values but |G| = {order}",
                values.len()
            )));
        }
        if lo > hi {
            return Err(Error::InvalidParameter(format!("empty range [{lo}, {hi}]")));
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| !v.is_finite() || v < lo - RANGE_TOLERANCE || v > hi + RANGE_TOLERANCE)
        {
            return Err(Error::RangeViolation { index, value, lo, hi });
        }
        Ok(Self { group, values, lo, hi })
    }

    /// A `[0, 1]`-valued table.
    pub fn unit(group: GroupSpec, values: Vec<f64>) -> Result<Self> {
        Self::new(group, values, 0.0, 1.0)
    }

    pub fn constant(group: GroupSpec, value: f64) -> Result<Self> {
        let n = group.size()?;
        let (lo, hi) = (value.min(0.0), value.max(1.0));
        Self::new(group, vec![value; n], lo, hi)
    }

    pub fn indicator(group: GroupSpec, members: &[usize]) -> Result<Self> {
        let n = group.size()?;
        let mut values = vec![0.0; n];
        for &m in members {
            if m >= n {
                return Err(Error::GroupMismatch(format!("index {m} out of range for |G| = {n}")));
            }
            values[m] = 1.0;
        }
        Self::unit(group, values)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().copied().collect::<Neumaier>().value() / self.values.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Whether the stored values lie in `[0, 1]`.
    pub fn is_unit_valued(&self) -> bool {
        self.values
            .iter()
            .all(|&v| (-RANGE_TOLERANCE..=1.0 + RANGE_TOLERANCE).contains(&v))
    }

    /// `1 - f`.
    pub fn complement(&self) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| 1.0 - v).collect(),
            lo: 1.0 - self.hi,
            hi: 1.0 - self.lo,
        }
    }

    /// Pointwise image under `op`, with a freshly declared range.
    pub fn map(&self, lo: f64, hi: f64, op: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.group.clone(), self.values.iter().map(|&v| op(v)).collect(), lo, hi)
    }

    /// `x ↦ f(x + c)`.
    pub fn translate(&self, c: usize) -> Self {
        let values = (0..self.values.len()).map(|x| self.values[self.group.add(x, c)]).collect();
        Self {
            group: self.group.clone(),
            values,
            lo: self.lo,
            hi: self.hi,
        }
    }

    /// Elements where the table equals 1 (within the range tolerance).
    pub fn support_of_one(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| (self.values[i] - 1.0).abs() <= RANGE_TOLERANCE)
            .collect()
    }
}

/// `γ_freq(point)`.
pub fn character_value(group: &GroupSpec, freq: &GroupElement, point: &GroupElement) -> Result<Complex64> {
    group.check_member(freq)?;
    group.check_member(point)?;
    let l = group.exponent();
    let k = group.pairing(l, &freq.coords, &point.coords);
    Ok(RootTable::new(l).get(k as usize))
}

/// Sum of `γ(x)` over all characters `γ`.
pub fn character_sum(group: &GroupSpec, point: &GroupElement) -> Result<Complex64> {
    let n = group.size()?;
    let l = group.exponent();
    let roots = RootTable::new(l);
    group.check_member(point)?;
    Ok((0..n)
        .map(|xi| roots.get(group.pairing(l, &group.coords(xi), &point.coords) as usize))
        .collect::<ComplexSum>()
        .value())
}

/// `f̂(γ_ξ) = E_x γ_ξ(x) f(x)` for every frequency index `ξ`.
///
/// Direct `O(|G|^2)` evaluation.
pub fn fourier_transform(f: &DensityTable) -> Result<Vec<Complex64>> {
    let group = f.group();
    group.check_enumeration(2)?;
    let n = f.len();
    let l = group.exponent();
    let roots = RootTable::new(l);
    let coords: Vec<Vec<u64>> = (0..n).map(|i| group.coords(i)).collect();
    Ok((0..n)
        .map(|xi| {
            let acc: ComplexSum = (0..n)
                .map(|x| roots.get(group.pairing(l, &coords[xi], &coords[x]) as usize) * f.get(x))
                .collect();
            acc.value() / n as f64
        })
        .collect())
}

fn require_vector(group: &GroupSpec) -> Result<(u64, usize)> {
    group
        .vector_params()
        .ok_or_else(|| Error::NotVectorMode(format!("moduli {:?}", group.moduli())))
}

/// `E_{t ∈ F_p} ω^{a t² + b t}`.
pub fn scalar_phase_average(p: u64, a: u64, b: u64) -> Complex64 {
    let roots = RootTable::new(p);
    scalar_phase_average_with(&roots, a, b)
}

pub(crate) fn scalar_phase_average_with(roots: &RootTable, a: u64, b: u64) -> Complex64 {
    let p = roots.modulus();
    let (a, b) = (a % p, b % p);
    let acc: ComplexSum = (0..p)
        .map(|t| {
            let e = (a * ((t * t) % p) + b * t) % p;
            roots.get(e as usize)
        })
        .collect();
    acc.value() / p as f64
}

/// `E_{x ∈ F_p^n} ω^{a xᵀx + b0·1ᵀx + c}`, factorized coordinatewise.
pub fn phase_average(group: &GroupSpec, a: u64, b0: u64, c: u64) -> Result<Complex64> {
    let (p, n) = require_vector(group)?;
    let roots = RootTable::new(p);
    let s = scalar_phase_average_with(&roots, a, b0);
    Ok(s.powu(n as u32) * roots.get((c % p) as usize))
}

/// `E_{x ∈ F_p^n} ω^{a xᵀx + bᵀx + c}` for a general linear coefficient vector `b`.
pub fn phase_average_vec(group: &GroupSpec, a: u64, b: &[u64], c: u64) -> Result<Complex64> {
    let (p, n) = require_vector(group)?;
    if b.len() != n {
        return Err(Error::GroupMismatch(format!("linear coefficient has {} entries, n = {n}", b.len())));
    }
    let roots = RootTable::new(p);
    let prod = b
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &bj| acc * scalar_phase_average_with(&roots, a, bj));
    Ok(prod * roots.get((c % p) as usize))
}

/// Brute-force counterpart of [`phase_average`], enumerating all of `F_p^n`.
pub fn phase_average_direct(group: &GroupSpec, a: u64, b0: u64, c: u64) -> Result<Complex64> {
    let (p, _) = require_vector(group)?;
    let n = group.size()?;
    let roots = RootTable::new(p);
    let acc: ComplexSum = (0..n)
        .map(|i| {
            let x = group.coords(i);
            let sq: u64 = x.iter().map(|&t| t * t % p).sum::<u64>() % p;
            let lin: u64 = x.iter().sum::<u64>() % p;
            roots.get(((a % p * sq + b0 % p * lin + c) % p) as usize)
        })
        .collect();
    Ok(acc.value() / n as f64)
}

/// `E_y |E_x ω^{a xᵀx + d yᵀx + b0·1ᵀx + c}|` over `x, y ∈ F_p^n`, factorized.
///
/// For fixed `y` the inner average is `ω^c ∏_j S(d y_j + b0)` with
/// `S(b) = E_t ω^{a t² + b t}`, so the outer average is `(E_s |S(d s + b0)|)^n`.
pub fn mixed_phase_average(group: &GroupSpec, a: u64, b0: u64, c: u64, d: u64) -> Result<f64> {
    let (p, n) = require_vector(group)?;
    let _ = c;
    let roots = RootTable::new(p);
    let per_coord: Neumaier = (0..p)
        .map(|s| scalar_phase_average_with(&roots, a, (d % p * s + b0) % p).norm())
        .collect();
    Ok((per_coord.value() / p as f64).powi(n as i32))
}

/// Brute-force double enumeration for [`mixed_phase_average`].
pub fn mixed_phase_average_direct(group: &GroupSpec, a: u64, b0: u64, c: u64, d: u64) -> Result<f64> {
    let (p, _) = require_vector(group)?;
    group.check_enumeration(2)?;
    let n = group.size()?;
    let roots = RootTable::new(p);
    let (a, b0, c, d) = (a % p, b0 % p, c % p, d % p);
    let dim = group.moduli().len();
    let flat: Vec<u64> = (0..n).flat_map(|i| group.coords(i)).collect();
    // exponent of x without the y-dependent part
    let fixed: Vec<u64> = flat
        .chunks_exact(dim)
        .map(|x| (c + x.iter().map(|&t| a * (t * t % p) + b0 * t).sum::<u64>()) % p)
        .collect();
    let mut counts = vec![0u64; p as usize];
    let mut dy = vec![0u64; dim];
    let outer: Neumaier = flat
        .chunks_exact(dim)
        .map(|y| {
            counts.fill(0);
            for (t, &yj) in dy.iter_mut().zip(y) {
                *t = d * yj % p;
            }
            for (x, &e) in flat.chunks_exact(dim).zip(&fixed) {
                let v = e + x.iter().zip(&dy).map(|(&xj, &yj)| xj * yj).sum::<u64>();
                counts[(v % p) as usize] += 1;
            }
            let inner: ComplexSum = counts.iter().enumerate().map(|(k, &m)| roots.get(k) * m as f64).collect();
            (inner.value() / n as f64).norm()
        })
        .collect();
    Ok(outer.value() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn make_group_examples() {
        let z5 = GroupSpec::new(vec![5]).unwrap();
        assert_eq!(z5.order(), 5);
        assert_eq!(z5.vector_params(), Some((5, 1)));

        let f53 = GroupSpec::new(vec![5, 5, 5]).unwrap();
        assert_eq!(f53.order(), 125);
        assert_eq!(f53.vector_params(), Some((5, 3)));

        let z2z3 = GroupSpec::new(vec![2, 3]).unwrap();
        assert_eq!(z2z3.order(), 6);
        assert_eq!(z2z3.exponent(), 6);
        assert!(!z2z3.is_vector());

        assert_eq!(GroupSpec::new(vec![5, 1]), Err(Error::InvalidModulus(1)));
        // composite moduli are fine but never vector mode
        assert!(!GroupSpec::new(vec![4, 4]).unwrap().is_vector());
    }

    #[test]
    fn oversized_group_is_flagged_not_rejected() {
        let g = GroupSpec::vector(5, 31).unwrap();
        assert!(!g.is_enumerable());
        assert!(matches!(g.size(), Err(Error::EnumerationCap { .. })));
        let capped = GroupSpec::cyclic(101).unwrap().with_enumeration_cap(1000);
        assert!(capped.check_enumeration(1).is_ok());
        assert!(capped.check_enumeration(2).is_err());
    }

    #[test]
    fn index_roundtrip_and_arithmetic() {
        let g = GroupSpec::new(vec![2, 3, 4]).unwrap();
        for i in 0..24 {
            let e = g.element(i);
            let back = g
                .element_from_coords(&e.coords.iter().map(|&c| c as i64).collect::<Vec<_>>())
                .unwrap();
            assert_eq!(back.index, i);
            assert_eq!(g.add(i, g.neg(i)), 0);
            assert_eq!(g.scale(i, 3), g.add(i, g.add(i, i)));
        }
        let adder = Adder::new(&g).unwrap();
        assert_eq!(adder.add(5, 17), g.add(5, 17));
    }

    #[test]
    fn character_examples() {
        let z5 = GroupSpec::cyclic(5).unwrap();
        let zero = z5.element(0);
        for x in 0..5 {
            let v = character_value(&z5, &zero, &z5.element(x)).unwrap();
            assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
        }
        let v = character_value(&z5, &z5.element(1), &z5.element(1)).unwrap();
        let expected = Complex64::from_polar(1.0, std::f64::consts::TAU / 5.0);
        assert!((v - expected).norm() < 1e-15);

        let z7 = GroupSpec::cyclic(7).unwrap();
        for x in 0..7 {
            let s = character_sum(&z7, &z7.element(x)).unwrap();
            let want = if x == 0 { 7.0 } else { 0.0 };
            assert!((s - Complex64::new(want, 0.0)).norm() < 1e-12);
        }
        let bad = GroupElement { coords: vec![7], index: 7 };
        assert!(character_value(&z7, &bad, &z7.element(0)).is_err());
    }

    #[test]
    fn fourier_examples() {
        let g = GroupSpec::new(vec![3, 4]).unwrap();
        let ones = DensityTable::constant(g.clone(), 1.0).unwrap();
        let hat = fourier_transform(&ones).unwrap();
        assert!((hat[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(hat[1..].iter().all(|z| z.norm() < 1e-12));

        let zeros = DensityTable::constant(g, 0.0).unwrap();
        assert!(fourier_transform(&zeros).unwrap().iter().all(|z| z.norm() == 0.0));

        let z2 = GroupSpec::cyclic(2).unwrap();
        let f = DensityTable::new(z2, vec![1.0, -1.0], -1.0, 1.0).unwrap();
        let hat = fourier_transform(&f).unwrap();
        assert!(hat[0].norm() < 1e-15);
        assert!((hat[1] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn phase_average_examples() {
        let g = GroupSpec::vector(7, 2).unwrap();
        assert!((phase_average(&g, 0, 0, 0).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(phase_average(&g, 0, 1, 0).unwrap().norm() < 1e-15);
        let z5 = GroupSpec::vector(5, 1).unwrap();
        assert_abs_diff_eq!(phase_average(&z5, 1, 0, 0).unwrap().norm(), 5f64.powf(-0.5), epsilon = 1e-14);
        assert!(matches!(
            phase_average(&GroupSpec::new(vec![4]).unwrap(), 1, 0, 0),
            Err(Error::NotVectorMode(_))
        ));
    }

    #[test]
    fn factorized_phase_matches_enumeration() {
        for (p, n) in [(5, 1), (5, 2), (7, 2), (3, 3)] {
            let g = GroupSpec::vector(p, n).unwrap();
            for a in 0..p {
                for b0 in 0..p {
                    let fast = phase_average(&g, a, b0, 2).unwrap();
                    let slow = phase_average_direct(&g, a, b0, 2).unwrap();
                    assert!((fast - slow).norm() < 1e-12, "p={p} n={n} a={a} b0={b0}");
                    for d in [0, 1, p - 1] {
                        let fm = mixed_phase_average(&g, a, b0, 1, d).unwrap();
                        let sm = mixed_phase_average_direct(&g, a, b0, 1, d).unwrap();
                        assert_abs_diff_eq!(fm, sm, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn range_is_checked() {
        let g = GroupSpec::cyclic(3).unwrap();
        assert!(matches!(
            DensityTable::unit(g.clone(), vec![0.0, 1.5, 0.2]),
            Err(Error::RangeViolation { index: 1, .. })
        ));
        assert!(DensityTable::unit(g, vec![0.0, 1.0]).is_err());
    }
}
