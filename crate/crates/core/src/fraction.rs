//! `C`-fractions mod `p`: residues `x` with `x·z ≡ y` for integers `|y|, |z| < C`, `z > 0`.

use serde::{Deserialize, Serialize};

use crate::arith::{least_abs_residue, mod_inv, reduce};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionWitness {
    pub x: u64,
    pub p: u64,
    pub y: i64,
    pub z: u64,
    /// `C` with `|y| < C` and `z < C`.
    pub bound: u64,
}

impl FractionWitness {
    pub fn new(x: u64, p: u64, y: i64, z: u64, bound: u64) -> Result<Self> {
        let w = Self {
            x: x % p,
            p,
            y,
            z,
            bound,
        };
        if w.is_valid() {
            Ok(w)
        } else {
            Err(Error::InvalidParameter(format!(
                "({y}, {z}) is not a {bound}-fraction witness for {x} mod {p}"
            )))
        }
    }

    /// Checks `x·z ≡ y (mod p)`, `z ≥ 1`, `|y| < C` and `z < C`.
    pub fn is_valid(&self) -> bool {
        self.z >= 1
            && self.y.unsigned_abs() < self.bound
            && self.z < self.bound
            && (self.x as u128 * self.z as u128 % self.p as u128) as u64 == reduce(self.y, self.p)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("moduli {} and {} differ", self.p, other.p)))
        }
    }

    /// Witness for `x₁x₂` with bound `C₁C₂`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let p = self.p;
        Ok(Self {
            x: self.x * other.x % p,
            p,
            y: self.y * other.y,
            z: self.z * other.z,
            bound: self.bound * other.bound,
        })
    }

    /// Witness for `x₁ + x₂` with bound `2C₁C₂`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let p = self.p;
        Ok(Self {
            x: (self.x + other.x) % p,
            p,
            y: self.y * other.z as i64 + other.y * self.z as i64,
            z: self.z * other.z,
            bound: 2 * self.bound * other.bound,
        })
    }

    /// Witness for `-x` with the same bound.
    pub fn neg(&self) -> Self {
        Self {
            x: (self.p - self.x) % self.p,
            y: -self.y,
            ..*self
        }
    }

    /// Witness for `x⁻¹` with the same bound; `None` when `x ≡ 0`.
    pub fn inv(&self) -> Option<Self> {
        if self.y == 0 {
            return None;
        }
        let x = mod_inv(self.x, self.p)?;
        Some(Self {
            x,
            p: self.p,
            y: self.z as i64 * self.y.signum(),
            z: self.y.unsigned_abs(),
            bound: self.bound,
        })
    }
}

/// Witness minimizing `max(|y|, z)` with `C = max(|y|, z) + 1 ≤ cap`.
///
/// Ties are broken towards the smallest `z`.
pub fn c_fraction_bound(x: u64, p: u64, cap: u64) -> Option<FractionWitness> {
    let x = x % p;
    let mut best: Option<(u64, i64, u64)> = None;
    let limit = cap.saturating_sub(1).min(p);
    for z in 1..=limit {
        if best.is_some_and(|(cost, _, _)| z >= cost) {
            break;
        }
        let y = least_abs_residue((x as u128 * z as u128 % p as u128) as i64, p);
        let cost = y.unsigned_abs().max(z);
        if best.map_or(true, |(c, _, _)| cost < c) {
            best = Some((cost, y, z));
        }
    }
    best.filter(|&(cost, _, _)| cost < cap).map(|(cost, y, z)| FractionWitness {
        x,
        p,
        y,
        z,
        bound: cost + 1,
    })
}

/// Number of residues mod `p` that are `C`-fractions.
pub fn fraction_census(p: u64, c: u64) -> usize {
    (0..p).filter(|&x| c_fraction_bound(x, p, c).is_some()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_examples() {
        let w = c_fraction_bound(0, 13, 5).unwrap();
        assert_eq!((w.y, w.z, w.bound), (0, 1, 2));
        let w = c_fraction_bound(1, 13, 5).unwrap();
        assert_eq!((w.y, w.z, w.bound), (1, 1, 2));
        let w = c_fraction_bound(9, 13, 10).unwrap();
        assert_eq!((w.y, w.z, w.bound), (1, 3, 4));
        assert!(c_fraction_bound(9, 13, 4).is_some());
        assert!(c_fraction_bound(9, 13, 3).is_none());
    }

    #[test]
    fn minimality_against_exhaustive_scan() {
        for p in [5u64, 7, 11, 13, 29] {
            for x in 0..p {
                let w = c_fraction_bound(x, p, p + 1).unwrap();
                assert!(w.is_valid());
                let mut best = u64::MAX;
                for z in 1..p {
                    for y in -(p as i64)..=(p as i64) {
                        if (x * z) % p == reduce(y, p) {
                            best = best.min(y.unsigned_abs().max(z) + 1);
                        }
                    }
                }
                assert_eq!(w.bound, best, "x={x} p={p}");
            }
        }
    }

    #[test]
    fn closure_operations() {
        let p = 101;
        let a = c_fraction_bound(34, p, 20).unwrap();
        let b = c_fraction_bound(51, p, 20).unwrap();
        for w in [a.mul(&b).unwrap(), a.add(&b).unwrap(), a.neg(), a.inv().unwrap()] {
            assert!(w.is_valid(), "{w:?}");
        }
        assert!(c_fraction_bound(0, p, 3).unwrap().inv().is_none());
        assert!(FractionWitness::new(9, 13, 2, 3, 4).is_err());
    }
}
