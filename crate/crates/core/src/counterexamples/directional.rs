//! Directional functions on `Z_p` with negative 4-AP density.
//!
//! Each has the form `f = a·1_{[0, M]} - b·1_A` for an integer progression
//! `A ⊆ [0, M]`. All parameters have `2a, 2b ∈ Z`, so `2f` is integer-valued
//! and the density is computed exactly.

use num_rational::Rational64;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{DensityTable, GroupSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionalSpec {
    pub p: u64,
    /// Which of the six parameter regimes applies (1..=6).
    pub case: u8,
    pub m: u64,
    pub a: f64,
    pub b: f64,
    pub a_set: Vec<u64>,
}

impl DirectionalSpec {
    pub fn for_prime(p: u64) -> Result<Self> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("directional functions need a prime p >= 5, got {p}")));
        }
        let (case, m, a, b, a_set) = match p {
            5 => (1, 4, 1.0, 2.0, vec![0]),
            7 => (2, 6, 0.5, 1.5, vec![0]),
            11 => (3, 6, 1.0, 2.0, vec![0, 3]),
            13 => (4, 7, 1.0, 2.0, vec![0, 5]),
            17..=199 => (5, 7, 1.0, 2.0, vec![0, 5]),
            _ => {
                let m = (p - 1) / 2;
                (6, m, 1.0, 2.0, (0..=m).step_by(5).collect())
            }
        };
        Ok(Self { p, case, m, a, b, a_set })
    }

    /// `2f` as integers.
    pub fn doubled_table(&self) -> Vec<i64> {
        let (a2, b2) = ((2.0 * self.a) as i64, (2.0 * self.b) as i64);
        let mut t = vec![0i64; self.p as usize];
        for v in t.iter_mut().take(self.m as usize + 1) {
            *v = a2;
        }
        for &x in &self.a_set {
            t[x as usize] -= b2;
        }
        t
    }

    pub fn table(&self) -> Result<DensityTable> {
        let values = self.doubled_table().iter().map(|&v| v as f64 / 2.0).collect();
        DensityTable::new(GroupSpec::cyclic(self.p)?, values, -1.0, 1.0)
    }

    /// `E_{x,y ∈ Z_p} f(x)f(x+y)f(x+2y)f(x+3y)`, exactly.
    pub fn four_ap_density(&self) -> Rational64 {
        four_ap_density_doubled(&self.doubled_table())
    }
}

/// Directional table on `Z_p` and the parameters that produced it.
pub fn directional_function(p: u64) -> Result<(DensityTable, DirectionalSpec)> {
    let spec = DirectionalSpec::for_prime(p)?;
    Ok((spec.table()?, spec))
}

/// Exact 4-AP density of `g / 2` for an integer table `g` on `Z_p`.
pub fn four_ap_density_doubled(g: &[i64]) -> Rational64 {
    let p = g.len();
    let mut total: i64 = 0;
    for x in 0..p {
        let a = g[x];
        if a == 0 {
            continue;
        }
        for y in 0..p {
            let x1 = (x + y) % p;
            let b = g[x1];
            if b == 0 {
                continue;
            }
            let x2 = (x1 + y) % p;
            let c = g[x2];
            if c == 0 {
                continue;
            }
            total += a * b * c * g[(x2 + y) % p];
        }
    }
    Rational64::new(total, 16 * (p * p) as i64)
}

/// `-2/199²`, the uniform upper bound on the directional 4-AP density.
pub fn directional_guarantee() -> Rational64 {
    Rational64::new(-2, 199 * 199)
}

/// `1/(60p) - 1/120`, the sharper bound for `p > 199`.
pub fn large_prime_bound(p: u64) -> Rational64 {
    Rational64::new(1, 60 * p as i64) - Rational64::new(1, 120)
}
