//! Constructions for systems with two proportional forms `φ_j = c·φ_i`.
//!
//! Both perturbations depend on `x` only through `s = 1ᵀx`:
//! with a negated pair `f₁ = iω^s - iω^{-s} = -2 sin(2πs/p)`, otherwise
//! `f₁ = ω^s + ω^{-s} - ω^{cs} - ω^{-cs} = 2cos(2πs/p) - 2cos(2πcs/p)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::FormSystem;
use crate::group::{DensityTable, GroupSpec};
use crate::multiplicity::{monochromatic_pair, PairValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProportionalKind {
    Negation,
    Scaled { c: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProportionalConstruction {
    pub kind: ProportionalKind,
    pub p: u64,
    /// 0-based indices of the proportional pair used.
    pub pair: (usize, usize),
    pub alpha: f64,
}

impl ProportionalConstruction {
    /// Picks the construction for a vector-mode system; the negated pair wins when present.
    pub fn detect(system: &FormSystem, alpha: f64) -> Result<Self> {
        let (p, _) = system
            .group()
            .vector_params()
            .ok_or_else(|| Error::NotVectorMode(format!("moduli {:?}", system.group().moduli())))?;
        if p == 2 {
            return Err(Error::NoConstruction("proportional constructions need p odd".into()));
        }
        let pair = system
            .detect_proportional_pair()?
            .ok_or_else(|| Error::NoConstruction("no two forms are proportional with c ∉ {0, 1}".into()))?;
        let (kind, pair) = match pair.negation {
            Some(neg) => (ProportionalKind::Negation, neg),
            None => (ProportionalKind::Scaled { c: pair.c }, (pair.i, pair.j)),
        };
        let built = Self { kind, p, pair, alpha };
        if !(alpha >= 0.0 && alpha <= built.alpha_cap()) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} outside [0, {}]",
                built.alpha_cap()
            )));
        }
        Ok(built)
    }

    /// `1/4` for the sine construction (`|f₁| ≤ 2`), `1/8` otherwise (`|f₁| ≤ 4`).
    pub fn alpha_cap(&self) -> f64 {
        match self.kind {
            ProportionalKind::Negation => 0.25,
            ProportionalKind::Scaled { .. } => 0.125,
        }
    }

    /// `f₁` as a function of `s ∈ Z_p`.
    pub fn direction(&self) -> Vec<f64> {
        let p = self.p;
        let angle = |k: u64| std::f64::consts::TAU * (k % p) as f64 / p as f64;
        (0..p)
            .map(|s| match self.kind {
                ProportionalKind::Negation => -2.0 * angle(s).sin(),
                ProportionalKind::Scaled { c } => 2.0 * angle(s).cos() - 2.0 * angle(c * s % p).cos(),
            })
            .collect()
    }

    /// `1/2 + α·f₁(1ᵀx)` on `group`.
    pub fn table_on(&self, group: &GroupSpec) -> Result<DensityTable> {
        let dir = self.direction();
        let p = self.p;
        let order = group.size()?;
        let values = (0..order)
            .map(|i| {
                let s = group.coords(i).iter().sum::<u64>() % p;
                0.5 + self.alpha * dir[s as usize]
            })
            .collect();
        DensityTable::unit(group.clone(), values)
    }

    /// `t(f) + t(1 - f)` for any `n`: `f` factors through `x ↦ 1ᵀx`, a
    /// surjective homomorphism onto `Z_p` commuting with the forms, so the
    /// value equals the one over `Z_p`.
    pub fn pair_value(&self, system: &FormSystem) -> Result<PairValue> {
        let zp = GroupSpec::cyclic(self.p)?.with_enumeration_cap(system.group().enumeration_cap());
        let reduced = system.over(zp.clone())?;
        monochromatic_pair(&reduced, &self.table_on(&zp)?)
    }
}

/// `f = 1/2 + α·f₁` on the system's own group.
pub fn proportional_counterexample(system: &FormSystem, alpha: f64) -> Result<DensityTable> {
    ProportionalConstruction::detect(system, alpha)?.table_on(system.group())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::induce_system;

    #[test]
    fn negation_pair_closed_form() {
        for p in [5u64, 7, 11, 13] {
            let sys = induce_system(vec![vec![1], vec![-1]], GroupSpec::cyclic(p).unwrap()).unwrap();
            for alpha in [0.0, 0.1, 0.25] {
                let f = proportional_counterexample(&sys, alpha).unwrap();
                let v = monochromatic_pair(&sys, &f).unwrap();
                assert!((v.sum - (0.5 - 4.0 * alpha * alpha)).abs() < 1e-12, "p={p} alpha={alpha}");
            }
        }
    }

    #[test]
    fn value_does_not_depend_on_n() {
        let sys = induce_system(vec![vec![1, 0], vec![2, 0], vec![1, 1]], GroupSpec::vector(5, 2).unwrap()).unwrap();
        let c = ProportionalConstruction::detect(&sys, 0.1).unwrap();
        assert_eq!(c.kind, ProportionalKind::Scaled { c: 2 });
        let direct = monochromatic_pair(&sys, &c.table_on(sys.group()).unwrap()).unwrap();
        let reduced = c.pair_value(&sys).unwrap();
        assert!((direct.sum - reduced.sum).abs() < 1e-12);
        assert!(reduced.sum < reduced.threshold);
    }

    #[test]
    fn no_pair_no_construction() {
        let sys = induce_system(vec![vec![1, 0], vec![0, 1]], GroupSpec::cyclic(5).unwrap()).unwrap();
        assert!(matches!(
            proportional_counterexample(&sys, 0.1),
            Err(Error::NoConstruction(_))
        ));
    }
}
