//! Floating-point helpers: compensated accumulation and tables of roots of unity.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// Neumaier compensated accumulator.
///
/// The error of the final sum is essentially independent of the number of
/// terms, which keeps long enumerations reproducible to ~1e-15 relative.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of an iterator of reals.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<Neumaier>().value()
}

/// Compensated accumulator for complex numbers (one [`Neumaier`] per component).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: ComplexSum) {
        self.re.merge(other.re);
        self.im.merge(other.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = ComplexSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// The `m`-th roots of unity `exp(2πik/m)`, tabulated once.
///
/// Exponents are reduced mod `m` before lookup, so arbitrarily large
/// multiples never lose precision.
#[derive(Debug, Clone)]
pub struct RootTable {
    modulus: u64,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "root table needs a positive modulus");
        let roots = (0..modulus)
            .map(|k| {
                let theta = TAU * (k as f64) / (modulus as f64);
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        Self { modulus, roots }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `exp(2πik/m)` for a reduced exponent `k < m`.
    #[inline]
    pub fn get(&self, k: usize) -> Complex64 {
        self.roots[k]
    }

    /// `exp(2πik/m)` for any signed exponent.
    #[inline]
    pub fn pow(&self, k: i64) -> Complex64 {
        self.roots[k.rem_euclid(self.modulus as i64) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let vals = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = vals.iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated_sum(vals), 2.0);
    }

    #[test]
    fn merge_matches_single_pass() {
        let vals: Vec<f64> = (0..1000).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        let whole = compensated_sum(vals.iter().copied());
        let mut a: Neumaier = vals[..500].iter().copied().collect();
        let b: Neumaier = vals[500..].iter().copied().collect();
        a.merge(b);
        assert!((a.value() - whole).abs() < 1e-15);
    }

    #[test]
    fn roots_reduce_large_exponents() {
        let t = RootTable::new(7);
        let z = t.pow(7 * 1_000_003 + 2);
        let w = t.get(2);
        assert!((z - w).norm() < 1e-15);
        assert!((t.pow(-1) - t.get(6)).norm() < 1e-15);
    }
}
