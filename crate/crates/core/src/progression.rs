//! Arithmetic progressions mod `p` and over the integers, and the splitting of
//! a modular progression with small fractional difference into few integer ones.

use serde::{Deserialize, Serialize};

use crate::arith::reduce;
use crate::error::{Error, Result};
use crate::fraction::FractionWitness;

/// `{start + j·diff : 0 ≤ j < len}`, reduced mod `modulus` when present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct APDescriptor {
    pub start: i64,
    pub diff: i64,
    pub len: u64,
    pub modulus: Option<u64>,
}

impl APDescriptor {
    pub fn modular(start: u64, diff: u64, len: u64, p: u64) -> Result<Self> {
        if len > p {
            return Err(Error::InvalidParameter(format!("length {len} exceeds modulus {p}")));
        }
        Ok(Self {
            start: (start % p) as i64,
            diff: (diff % p) as i64,
            len,
            modulus: Some(p),
        })
    }

    pub fn integer(start: i64, diff: i64, len: u64) -> Self {
        Self {
            start,
            diff,
            len,
            modulus: None,
        }
    }

    /// Elements in progression order, reduced into `[0, p)` for modular progressions.
    pub fn members(&self) -> Vec<i64> {
        (0..self.len as i64)
            .map(|j| {
                let v = self.start + j * self.diff;
                match self.modulus {
                    Some(p) => reduce(v, p) as i64,
                    None => v,
                }
            })
            .collect()
    }

    pub fn last(&self) -> Option<i64> {
        self.members().last().copied()
    }
}

/// Splits a progression mod `p` whose difference `s` satisfies `s·z ≡ y`
/// (`|y|, z < C`) into at most `3C` disjoint integer progressions in
/// `[0, p-1]` that share the difference `|y|`.
///
/// The indices `j` are grouped by their residue mod `z`; each class is a
/// progression with difference `y` mod `p`, which is cut wherever it wraps
/// past a multiple of `p`. Pieces come back sorted by start.
pub fn split_ap(ap: &APDescriptor, witness: &FractionWitness) -> Result<Vec<APDescriptor>> {
    let p = ap
        .modulus
        .ok_or_else(|| Error::InvalidParameter("split_ap needs a modular progression".into()))?;
    let s = reduce(ap.diff, p);
    if s == 0 {
        return Err(Error::InvalidParameter("common difference is 0 mod p".into()));
    }
    if witness.p != p || witness.x != s || !witness.is_valid() {
        return Err(Error::InvalidParameter(format!("{witness:?} is not a witness for {s} mod {p}")));
    }
    if ap.len > p {
        return Err(Error::InvalidParameter(format!("length {} exceeds modulus {p}", ap.len)));
    }
    if ap.len == 0 {
        return Ok(Vec::new());
    }
    // y ≠ 0 since z < p is invertible and s ≠ 0
    let (start, s, y) = if witness.y > 0 {
        (reduce(ap.start, p), s, witness.y as u64)
    } else {
        // walk the progression backwards so the step becomes positive
        let last = reduce(ap.start + (ap.len as i64 - 1) * s as i64, p);
        (last, p - s, witness.y.unsigned_abs())
    };
    let z = witness.z;
    let mut pieces = Vec::new();
    for i in 0..z.min(ap.len) {
        let count = (ap.len - i).div_ceil(z);
        let first = (start + (i as u128 * s as u128 % p as u128) as u64) % p;
        let mut k = 0;
        while k < count {
            let value = first + k * y;
            let block = value / p;
            let base = value - block * p;
            // steps until the next multiple of p is crossed
            let room = ((block + 1) * p - value).div_ceil(y);
            let take = room.min(count - k);
            pieces.push(APDescriptor::integer(base as i64, y as i64, take));
            k += take;
        }
    }
    pieces.sort_by_key(|a| a.start);
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::c_fraction_bound;
    use std::collections::BTreeSet;

    fn residues(ap: &APDescriptor) -> BTreeSet<i64> {
        ap.members().into_iter().collect()
    }

    #[test]
    fn split_example() {
        let ap = APDescriptor::modular(0, 9, 4, 13).unwrap();
        assert_eq!(residues(&ap), BTreeSet::from([0, 9, 5, 1]));
        let w = FractionWitness::new(9, 13, 1, 3, 4).unwrap();
        let pieces = split_ap(&ap, &w).unwrap();
        let sets: Vec<Vec<i64>> = pieces.iter().map(APDescriptor::members).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![5], vec![9]]);
        assert!(pieces.iter().all(|a| a.diff == 1));
    }

    #[test]
    fn unit_difference_wraps_once() {
        let w = c_fraction_bound(1, 11, 3).unwrap();
        let ap = APDescriptor::modular(8, 1, 6, 11).unwrap();
        let pieces = split_ap(&ap, &w).unwrap();
        let sets: Vec<Vec<i64>> = pieces.iter().map(APDescriptor::members).collect();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![8, 9, 10]]);
    }

    #[test]
    fn negative_numerator() {
        // 4·3 ≡ -1 mod 13
        let w = FractionWitness::new(4, 13, -1, 3, 4).unwrap();
        let ap = APDescriptor::modular(2, 4, 7, 13).unwrap();
        let pieces = split_ap(&ap, &w).unwrap();
        let union: BTreeSet<i64> = pieces.iter().flat_map(APDescriptor::members).collect();
        assert_eq!(union, residues(&ap));
        assert!(pieces.iter().all(|a| a.diff == 1 && a.start >= 0 && a.last().unwrap() < 13));
    }

    #[test]
    fn rejects_bad_input() {
        let w = c_fraction_bound(1, 11, 3).unwrap();
        let ap = APDescriptor::modular(0, 0, 3, 11).unwrap();
        assert!(split_ap(&ap, &w).is_err());
        let ap = APDescriptor::modular(0, 2, 3, 11).unwrap();
        assert!(split_ap(&ap, &w).is_err());
    }
}
