//! Muting parts and assembly of `f = 1/2 + α·f₁·f₂`.

use crate::arith::{is_prime, isqrt};
use crate::counterexamples::directional::{directional_function, DirectionalSpec};
use crate::error::{Error, Result};
use crate::group::DensityTable;
use crate::numeric::RootTable;
use crate::structured::{CounterexampleRecipe, Mode, PhaseAtom};

/// `(λ, weight)` = `(1, β), (-1, β), (3, 1), (-3, 1)`.
///
/// The phase of an atom at a scalar coordinate `t` is `λ(t² + q·t)` with
/// `q = 1` in vector mode and `q = ⌊√p⌋` in cyclic mode (see [`muting_q`]).
pub fn muting_atoms(mode: Mode, p: u64, beta: f64) -> Result<Vec<PhaseAtom>> {
    let _ = mode;
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} must be an odd prime")));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParameter(format!("beta = {beta} outside (0, 1]")));
    }
    Ok(vec![
        PhaseAtom { weight: beta, lambda: 1 },
        PhaseAtom { weight: beta, lambda: -1 },
        PhaseAtom { weight: 1.0, lambda: 3 },
        PhaseAtom { weight: 1.0, lambda: -3 },
    ])
}

pub fn muting_q(mode: Mode, p: u64) -> u64 {
    match mode {
        Mode::Vector => 1,
        Mode::Cyclic => isqrt(p),
    }
}

/// Largest `α` for which the standard recipe stays in `[0, 1]`: `1 / (2·max|f₁|·(2 + 2β))`.
pub fn alpha_cap(max_abs_directional: f64, beta: f64) -> f64 {
    1.0 / (2.0 * max_abs_directional * (2.0 + 2.0 * beta))
}

/// Standard recipe: the directional function for `p` and the four muting atoms.
pub fn muting_recipe(mode: Mode, p: u64, n: usize, beta: f64, alpha: f64) -> Result<(CounterexampleRecipe, DirectionalSpec)> {
    let (table, spec) = directional_function(p)?;
    let recipe = CounterexampleRecipe {
        mode,
        p,
        n: if mode == Mode::Cyclic { 1 } else { n },
        directional: table.values().to_vec(),
        atoms: muting_atoms(mode, p, beta)?,
        alpha,
        beta,
    };
    recipe.validate()?;
    Ok((recipe, spec))
}

/// `f₂` on `F_p^n` (or on `Z_p` with `n = 1` in cyclic mode), as a dense table.
pub fn muting_table(recipe: &CounterexampleRecipe) -> Result<Vec<f64>> {
    let p = recipe.p;
    let n = recipe.n;
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let cap = recipe.target_group()?.enumeration_cap();
    if size > cap as u128 {
        return Err(Error::EnumerationCap { needed: size, cap });
    }
    let roots = RootTable::new(p);
    let mut coords = vec![0u64; n];
    let mut out = Vec::with_capacity(size as usize);
    for _ in 0..size {
        out.push(recipe.muting_value(&roots, &coords));
        for c in coords.iter_mut().rev() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    Ok(out)
}

/// Dense table of `f = 1/2 + α·f₁·f₂` on the recipe's target group.
///
/// In vector mode `f₁` reads the first coordinate of `F_p^{n+1}` and `f₂`
/// the remaining `n`.
pub fn assemble(recipe: &CounterexampleRecipe) -> Result<DensityTable> {
    recipe.validate()?;
    let group = recipe.target_group()?;
    let order = group.size()?;
    let f2 = muting_table(recipe)?;
    let alpha = recipe.alpha;
    let values: Vec<f64> = match recipe.mode {
        Mode::Vector => {
            let block = f2.len();
            (0..order)
                .map(|i| 0.5 + alpha * recipe.directional[i / block] * f2[i % block])
                .collect()
        }
        Mode::Cyclic => (0..order)
            .map(|x| 0.5 + alpha * recipe.directional[x] * f2[x])
            .collect(),
    };
    DensityTable::unit(group, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_values() {
        let (recipe, _) = muting_recipe(Mode::Vector, 5, 1, 1.0, 0.0).unwrap();
        let roots = RootTable::new(5);
        assert!((recipe.muting_value(&roots, &[0]) - 4.0).abs() < 1e-15);
        // 2cos(4π/5) + 2cos(2π/5) = -1
        assert!((recipe.muting_value(&roots, &[1]) + 1.0).abs() < 1e-14);
        assert!(muting_atoms(Mode::Vector, 5, 0.0).is_err());
        assert!(muting_atoms(Mode::Vector, 5, 1.5).is_err());
    }

    #[test]
    fn assemble_examples() {
        let (recipe, _) = muting_recipe(Mode::Vector, 5, 1, 1.0, 0.125).unwrap();
        let f = assemble(&recipe).unwrap();
        assert_eq!(f.len(), 25);
        assert!(f.values().iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert!(f.get(0).abs() < 1e-15);

        let (zero, _) = muting_recipe(Mode::Vector, 5, 2, 0.5, 0.0).unwrap();
        assert!(assemble(&zero).unwrap().values().iter().all(|&v| v == 0.5));

        assert!(muting_recipe(Mode::Vector, 5, 0, 1.0, 0.1).is_err());
        assert!(muting_recipe(Mode::Vector, 5, 1, 1.0, 0.2).is_err());
        assert_eq!(alpha_cap(1.0, 1.0), 0.125);
    }

    #[test]
    fn cyclic_uses_scaled_linear_phase() {
        let (recipe, _) = muting_recipe(Mode::Cyclic, 101, 7, 0.5, 0.01).unwrap();
        assert_eq!(recipe.n, 1);
        assert_eq!(recipe.q(), 10);
        let f = assemble(&recipe).unwrap();
        assert_eq!(f.len(), 101);
    }
}
