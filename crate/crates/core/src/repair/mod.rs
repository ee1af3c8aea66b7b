//! Genetic search for realizable variants of an unrealizable specification.

mod fitness;
mod ga;
mod operators;
mod report;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::BackendConfig;
use crate::automata::Limits;

pub use fitness::{combine, evaluate_fitness, sem_sim, status_score, syn_sim, Fitness, FitnessError, Weights};
pub use ga::{run_ga, run_random_baseline, select_best, Individual, Provenance};
pub use operators::{
    assumption_patterns, combine_sub, crossover, crossover_with, mutate, mutate_formula, replace_sub, seed_population,
    CrossoverChoice, COMBINE_OPS,
};
pub use report::{RepairEntry, RepairReport, RunStats, SpecSummary};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("weights must each lie in [0, 1] and sum to 1 (got {alpha} + {beta} + {gamma} = {})", alpha + beta + gamma)]
    Weights { alpha: f64, beta: f64, gamma: f64 },
    #[error("crossover fraction {0} is outside [0, 1]")]
    CrossoverFraction(f64),
    #[error("population size must be at least 2")]
    Population,
    #[error("max individuals must be positive")]
    MaxIndividuals,
    #[error("counting bound must be positive")]
    Bound,
}

/// Parameters of a repair run. `jobs` and `limits` do not affect results and
/// are left out of serialized reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GaConfig {
    pub population_size: usize,
    pub max_individuals: usize,
    pub budget_seconds: u64,
    pub bound: u32,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub crossover_fraction: f64,
    pub seed: u64,
    pub backend: BackendConfig,
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub limits: Limits,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            max_individuals: 1000,
            budget_seconds: 7200,
            bound: 20,
            alpha: 0.7,
            beta: 0.1,
            gamma: 0.2,
            crossover_fraction: 0.10,
            seed: 0,
            backend: BackendConfig::default(),
            jobs: 0,
            limits: Limits::default(),
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !(in_unit(a) && in_unit(b) && in_unit(g)) || ((a + b + g) - 1.0).abs() > 1e-9 {
            return Err(ConfigError::Weights { alpha: a, beta: b, gamma: g });
        }
        if !in_unit(self.crossover_fraction) {
            return Err(ConfigError::CrossoverFraction(self.crossover_fraction));
        }
        if self.population_size < 2 {
            return Err(ConfigError::Population);
        }
        if self.max_individuals == 0 {
            return Err(ConfigError::MaxIndividuals);
        }
        if self.bound == 0 {
            return Err(ConfigError::Bound);
        }
        Ok(())
    }

    pub fn weights(&self) -> Weights {
        Weights { alpha: self.alpha, beta: self.beta, gamma: self.gamma }
    }
}
