use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use multicommon::{CounterexampleRecipe, DensityTable, FormSystem, GroupSpec};

use crate::Failure;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Analyze,
    Counterexample,
    Verify,
    MinColoring,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupConfig {
    /// `F_p^n`; `n` may be left out for `counterexample`, which then searches over `n`.
    Vector { p: u64, n: Option<usize> },
    Cyclic { p: u64 },
    Moduli(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeRef {
    pub recipe: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Table(Vec<f64>),
    /// `"uniform:v"`.
    Named(String),
    Recipe(RecipeRef),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DirectionalSweep,
    Gauss,
    PhaseVanish,
    MutingBounds,
    Cube,
    Splitting,
    Reparam,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub enumeration_cap: Option<u64>,
    pub subset_cap: Option<usize>,
    pub betas: Option<Vec<f64>>,
    pub alpha_steps: Option<usize>,
    pub ns: Option<Vec<usize>>,
    /// Round the constructed function to a set (default: when the group is enumerable).
    pub round: Option<bool>,
    /// Largest `|G|` for which the assembled table is written out.
    pub max_table: Option<u64>,
    pub seed: Option<u64>,
    pub suite: Option<Suite>,
    pub trials: Option<usize>,
    pub prime_range: Option<[u64; 2]>,
    pub primes: Option<Vec<u64>>,
    pub fraction_bounds: Option<Vec<u64>>,
    pub groups: Option<Vec<Vec<u64>>>,
    pub exhaustive_max_order: Option<usize>,
    /// Also evaluate the excluded trivial phase in the Gauss suite.
    pub include_trivial: Option<bool>,
    /// With `false`, included trivial phases are checked like any other point instead of being excluded.
    pub check_hypothesis: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Option<CommandName>,
    pub group: Option<GroupConfig>,
    pub matrix: Option<Vec<Vec<i64>>>,
    pub function: Option<FunctionSpec>,
    #[serde(default)]
    pub options: Options,
}

pub fn config_error(message: impl Into<String>) -> Failure {
    Failure::new(2, message)
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<(Self, serde_json::Value), Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        let raw: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        let config: JobConfig =
            serde_json::from_value(raw.clone()).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        Ok((config, raw))
    }

    pub fn group(&self) -> Result<GroupSpec, Failure> {
        let group = match self.group.as_ref().ok_or_else(|| config_error("missing field `group`"))? {
            GroupConfig::Vector { p, n: Some(n) } => GroupSpec::vector(*p, *n),
            GroupConfig::Vector { n: None, .. } => return Err(config_error("`group.vector.n` is required here")),
            GroupConfig::Cyclic { p } => GroupSpec::cyclic(*p),
            GroupConfig::Moduli(m) => GroupSpec::new(m.clone()),
        }
        .map_err(|e| config_error(e.to_string()))?;
        Ok(match self.options.enumeration_cap {
            Some(cap) => group.with_enumeration_cap(cap),
            None => group,
        })
    }

    pub fn matrix(&self) -> Result<Vec<Vec<i64>>, Failure> {
        self.matrix.clone().ok_or_else(|| config_error("missing field `matrix`"))
    }

    pub fn system(&self, group: GroupSpec) -> Result<FormSystem, Failure> {
        FormSystem::new(self.matrix()?, group).map_err(|e| config_error(e.to_string()))
    }

    pub fn seed(&self, flag: Option<u64>) -> u64 {
        flag.or(self.options.seed).unwrap_or(DEFAULT_SEED)
    }
}

/// Resolves `function` to a table on `group`, or to a recipe.
pub enum Function {
    Table(DensityTable),
    Recipe(Box<CounterexampleRecipe>),
}

pub fn resolve_function(spec: &FunctionSpec, group: Option<&GroupSpec>, base: &Path) -> Result<Function, Failure> {
    let need_group = || group.cloned().ok_or_else(|| config_error("missing field `group`"));
    match spec {
        FunctionSpec::Table(values) => {
            let table = DensityTable::unit(need_group()?, values.clone()).map_err(|e| config_error(e.to_string()))?;
            Ok(Function::Table(table))
        }
        FunctionSpec::Named(name) => {
            let value = name
                .strip_prefix("uniform:")
                .and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| config_error(format!("unknown function `{name}` (expected \"uniform:<v>\")")))?;
            if !(0.0..=1.0).contains(&value) {
                return Err(config_error(format!("uniform value {value} outside [0, 1]")));
            }
            let table = DensityTable::constant(need_group()?, value).map_err(|e| config_error(e.to_string()))?;
            Ok(Function::Table(table))
        }
        FunctionSpec::Recipe(r) => {
            let path = if r.recipe.is_absolute() { r.recipe.clone() } else { base.join(&r.recipe) };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| config_error(format!("cannot read recipe {}: {e}", path.display())))?;
            let recipe: CounterexampleRecipe =
                serde_json::from_str(&text).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
            recipe.validate().map_err(|e| config_error(e.to_string()))?;
            Ok(Function::Recipe(Box::new(recipe)))
        }
    }
}
