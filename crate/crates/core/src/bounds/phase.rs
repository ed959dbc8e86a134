//! Quadratic phases restricted to arithmetic progressions with
//! `C`-fraction differences.
//!
//! Three regimes, each checked on random instances against its bound:
//!
//! 1. `d` coprime to `p`: `E_y |E_x ω^{ax² + bx + c + dxy} 1_{A_y}(x)| ≤ 8C²(ln p + 1)/p`;
//! 2. `d ≡ 0`, `a` coprime: `|E_x ω^{ax² + bx + c} 1_A(x)| ≤ 2(ln p + 1)/√p`;
//! 3. `a ≡ d ≡ 0`, `b = b′q ≢ 0` with `q = ⌊√p⌋`, `b′` a `C`-fraction:
//!    `|E_x ω^{bx + c} 1_A(x)| ≤ 2(C² + 1)/√p`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, isqrt, mod_inv, reduce};
use crate::error::{Error, Result};
use crate::numeric::{Neumaier, RootTable};
use crate::progression::APDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseRegime {
    CoprimeMixing,
    CoprimeQuadratic,
    ScaledLinear,
}

impl PhaseRegime {
    pub const ALL: [PhaseRegime; 3] = [Self::CoprimeMixing, Self::CoprimeQuadratic, Self::ScaledLinear];

    pub fn bound(self, p: u64, c: u64) -> f64 {
        let (pf, cf) = (p as f64, c as f64);
        match self {
            Self::CoprimeMixing => 8.0 * cf * cf * (pf.ln() + 1.0) / pf,
            Self::CoprimeQuadratic => 2.0 * (pf.ln() + 1.0) / pf.sqrt(),
            Self::ScaledLinear => 2.0 * (cf * cf + 1.0) / pf.sqrt(),
        }
    }
}

/// One instance: coefficients and the progressions `A_y`.
///
/// Regimes 2 and 3 only use `progressions[0]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseInstance {
    pub regime: PhaseRegime,
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub progressions: Vec<APDescriptor>,
}

impl PhaseInstance {
    /// Left-hand side by direct summation over the progressions.
    pub fn lhs(&self) -> f64 {
        let roots = RootTable::new(self.p);
        match self.regime {
            PhaseRegime::CoprimeMixing => {
                let mut outer = Neumaier::new();
                for (y, ap) in self.progressions.iter().enumerate() {
                    let lin = (self.b + self.d * y as u64) % self.p;
                    outer.add(progression_phase_sum(&roots, ap, self.a, lin, self.c).norm());
                }
                outer.value() / (self.p * self.p) as f64
            }
            _ => progression_phase_sum(&roots, &self.progressions[0], self.a, self.b, self.c).norm() / self.p as f64,
        }
    }
}

/// `Σ_{x ∈ A} ω^{ax² + bx + c}` with the exponent updated incrementally
/// along the progression.
fn progression_phase_sum(roots: &RootTable, ap: &APDescriptor, a: u64, b: u64, c: u64) -> Complex64 {
    let p = roots.modulus();
    let t = reduce(ap.start, p);
    let s = reduce(ap.diff, p);
    // e_j = a(t + js)² + b(t + js) + c,  e_{j+1} - e_j = δ_j,  δ_{j+1} - δ_j = 2as²
    let mut e = (a * (t * t % p) + b * t + c) % p;
    let mut delta = (a * ((2 * t * s + s * s) % p) + b * s) % p;
    let step = 2 * a % p * (s * s % p) % p;
    let (mut re, mut im) = (0.0, 0.0);
    for _ in 0..ap.len {
        let z = roots.get(e as usize);
        re += z.re;
        im += z.im;
        e += delta;
        if e >= p {
            e -= p;
        }
        delta += step;
        if delta >= p {
            delta -= p;
        }
    }
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeSummary {
    pub regime: PhaseRegime,
    pub trials: usize,
    pub bound: f64,
    pub max_lhs: f64,
    pub max_ratio: f64,
    pub violations: usize,
    /// Instance attaining the largest ratio, for replay.
    pub worst: Option<PhaseInstance>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseBoundReport {
    pub p: u64,
    pub c: u64,
    pub regimes: Vec<RegimeSummary>,
}

impl PhaseBoundReport {
    pub fn violations(&self) -> usize {
        self.regimes.iter().map(|r| r.violations).sum()
    }
}

/// Whether `(p, C)` satisfies `4C⁴ < p`.
pub fn phase_hypothesis_holds(p: u64, c: u64) -> bool {
    (4 * c.pow(4)) < p
}

fn random_fraction(rng: &mut ChaCha8Rng, p: u64, c: u64) -> u64 {
    let bound = c as i64 - 1;
    loop {
        let y = rng.gen_range(-bound..=bound);
        let z = rng.gen_range(1..c);
        if y != 0 {
            return reduce(y, p) * mod_inv(z, p).expect("z < p") % p;
        }
    }
}

fn random_progression(rng: &mut ChaCha8Rng, p: u64, c: u64) -> APDescriptor {
    let s = random_fraction(rng, p, c);
    let t = rng.gen_range(0..p);
    let len = rng.gen_range(0..=p);
    APDescriptor::modular(t, s, len, p).expect("len <= p")
}

/// Random admissible instance number `trial` of `regime`, reproducible from `seed`.
pub fn random_instance(regime: PhaseRegime, p: u64, c: u64, seed: u64, trial: u64) -> PhaseInstance {
    let tag = PhaseRegime::ALL.iter().position(|&r| r == regime).unwrap() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (tag << 56) ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let c0 = rng.gen_range(0..p);
    match regime {
        PhaseRegime::CoprimeMixing => PhaseInstance {
            regime,
            p,
            a: rng.gen_range(0..p),
            b: rng.gen_range(0..p),
            c: c0,
            d: rng.gen_range(1..p),
            progressions: (0..p).map(|_| random_progression(&mut rng, p, c)).collect(),
        },
        PhaseRegime::CoprimeQuadratic => PhaseInstance {
            regime,
            p,
            a: rng.gen_range(1..p),
            b: rng.gen_range(0..p),
            c: c0,
            d: 0,
            progressions: vec![random_progression(&mut rng, p, c)],
        },
        PhaseRegime::ScaledLinear => {
            let b = random_fraction(&mut rng, p, c) * isqrt(p) % p;
            PhaseInstance {
                regime,
                p,
                a: 0,
                b,
                c: c0,
                d: 0,
                progressions: vec![random_progression(&mut rng, p, c)],
            }
        }
    }
}

/// Runs `trials` random instances of every regime at `(p, C)`.
pub fn check_phase_bounds(p: u64, c: u64, trials: usize, seed: u64) -> Result<PhaseBoundReport> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if c < 2 {
        return Err(Error::InvalidParameter("C must be at least 2".into()));
    }
    if !phase_hypothesis_holds(p, c) {
        return Err(Error::Hypothesis(format!("4C^4 = {} is not below p = {p}", 4 * c.pow(4))));
    }
    let regimes = PhaseRegime::ALL
        .iter()
        .map(|&regime| {
            let bound = regime.bound(p, c);
            let results: Vec<(u64, f64)> = (0..trials as u64)
                .into_par_iter()
                .map(|t| (t, random_instance(regime, p, c, seed, t).lhs()))
                .collect();
            let violations = results.iter().filter(|(_, v)| *v > bound + 1e-9).count();
            let worst = results
                .iter()
                .copied()
                .fold(None::<(u64, f64)>, |acc, (t, v)| match acc {
                    Some((_, best)) if best >= v => acc,
                    _ => Some((t, v)),
                });
            RegimeSummary {
                regime,
                trials,
                bound,
                max_lhs: worst.map_or(0.0, |w| w.1),
                max_ratio: worst.map_or(0.0, |w| w.1 / bound),
                violations,
                worst: worst.map(|(t, _)| random_instance(regime, p, c, seed, t)),
            }
        })
        .collect();
    Ok(PhaseBoundReport { p, c, regimes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_interval_gauss_sum() {
        let inst = PhaseInstance {
            regime: PhaseRegime::CoprimeQuadratic,
            p: 101,
            a: 1,
            b: 0,
            c: 0,
            d: 0,
            progressions: vec![APDescriptor::modular(0, 1, 101, 101).unwrap()],
        };
        let lhs = inst.lhs();
        assert!((lhs - 101f64.powf(-0.5)).abs() < 1e-12);
        assert!(lhs <= PhaseRegime::CoprimeQuadratic.bound(101, 2));
    }

    #[test]
    fn empty_progressions_give_zero() {
        let inst = PhaseInstance {
            regime: PhaseRegime::CoprimeMixing,
            p: 101,
            a: 3,
            b: 4,
            c: 5,
            d: 1,
            progressions: vec![APDescriptor::modular(0, 1, 0, 101).unwrap(); 101],
        };
        assert_eq!(inst.lhs(), 0.0);
    }

    #[test]
    fn incremental_phase_matches_direct() {
        let p = 31;
        let roots = RootTable::new(p);
        let ap = APDescriptor::modular(7, 12, 25, p).unwrap();
        let (a, b, c) = (5, 9, 2);
        let direct: Complex64 = ap
            .members()
            .iter()
            .map(|&x| {
                let x = x as u64;
                roots.get(((a * x * x + b * x + c) % p) as usize)
            })
            .sum();
        assert!((progression_phase_sum(&roots, &ap, a, b, c) - direct).norm() < 1e-12);
    }

    #[test]
    fn unit_difference_regime_one() {
        let report = check_phase_bounds(101, 2, 20, 7).unwrap();
        assert_eq!(report.violations(), 0);
        assert!(matches!(check_phase_bounds(101, 3, 1, 0), Err(Error::Hypothesis(_))));
    }
}
