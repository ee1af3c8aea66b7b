//! Fitness of a candidate specification relative to the original.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{check_realizability_with, is_sat_with, BackendConfig, RealizabilityVerdict};
use crate::automata::{AutomataError, Limits};
use crate::counting::{CountCache, CountingError};
use crate::ltl::Spec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitnessError {
    #[error("satisfiability check failed: {0}")]
    Satisfiability(String),
    #[error("model counting failed: {0}")]
    Counting(#[from] CountingError),
    #[error("{0}")]
    Alphabet(String),
}

impl From<AutomataError> for FitnessError {
    fn from(e: AutomataError) -> Self {
        FitnessError::Satisfiability(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weights {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Fitness {
    pub status_score: f64,
    pub syn_sim: f64,
    pub sem_sim: f64,
    pub combined: f64,
}

pub fn combine(w: Weights, status: f64, syn: f64, sem: f64) -> f64 {
    w.alpha * status + w.beta * syn + w.gamma * sem
}

/// Status score with the realizability verdict, if the backend was asked.
///
/// | case                                   | score |
/// |----------------------------------------|-------|
/// | `A` unsatisfiable                      | 0     |
/// | `A` satisfiable, `G` unsatisfiable     | 0.1   |
/// | both satisfiable, `A && G` not         | 0.2   |
/// | `A && G` satisfiable, not realizable   | 0.5   |
/// | `A && G` satisfiable, realizable       | 1     |
///
/// An unknown verdict scores 0.5.
pub fn status_score(
    spec: &Spec,
    backend: &BackendConfig,
    limits: &Limits,
) -> Result<(f64, Option<RealizabilityVerdict>), FitnessError> {
    if !spec.assumptions().is_empty() && !is_sat_with(&spec.assumption(), limits)? {
        return Ok((0.0, None));
    }
    if !is_sat_with(&spec.guarantee(), limits)? {
        return Ok((0.1, None));
    }
    if !spec.assumptions().is_empty() && !is_sat_with(&spec.conjunction(), limits)? {
        return Ok((0.2, None));
    }
    let verdict = check_realizability_with(spec, backend, limits);
    let score = if verdict == RealizabilityVerdict::Realizable { 1.0 } else { 0.5 };
    Ok((score, Some(verdict)))
}

/// Mean of the shares of common sub-formulas in each spec.
pub fn syn_sim(original: &Spec, candidate: &Spec) -> f64 {
    let a = original.subformulas();
    let b = candidate.subformulas();
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let common = a.intersection(&b).count() as f64;
    0.5 * (common / a.len() as f64 + common / b.len() as f64)
}

fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    if den.is_zero() {
        return 0.0;
    }
    // scale both down so the quotient survives the float conversion
    let shift = den.bits().saturating_sub(60);
    let n = (num >> shift).to_f64().unwrap_or(0.0);
    let d = (den >> shift).to_f64().unwrap_or(1.0);
    if d == 0.0 {
        0.0
    } else {
        n / d
    }
}

/// Mean of the shares of common bounded models, counted over the original
/// spec's variables. Zero when any of the three counts is zero.
pub fn sem_sim(original: &Spec, candidate: &Spec, k: u32, cache: &CountCache) -> Result<f64, FitnessError> {
    let alphabet = original.alphabet().map_err(|e| FitnessError::Alphabet(e.to_string()))?;
    let s = original.conjunction();
    let t = candidate.conjunction();
    let both = crate::ltl::Formula::and(s.clone(), t.clone());
    let common = cache.count(&both, &alphabet, k)?;
    if common.is_zero() {
        return Ok(0.0);
    }
    let ns = cache.count(&s, &alphabet, k)?;
    let nt = cache.count(&t, &alphabet, k)?;
    if ns.is_zero() || nt.is_zero() {
        return Ok(0.0);
    }
    Ok((0.5 * (ratio(&common, &ns) + ratio(&common, &nt))).clamp(0.0, 1.0))
}

/// All fitness components of `candidate`; semantic similarity is only
/// computed for a nonzero status score.
pub fn evaluate_fitness(
    original: &Spec,
    candidate: &Spec,
    weights: Weights,
    k: u32,
    backend: &BackendConfig,
    cache: &CountCache,
    limits: &Limits,
) -> Result<(Fitness, Option<RealizabilityVerdict>), FitnessError> {
    let (status, verdict) = status_score(candidate, backend, limits)?;
    let syn = syn_sim(original, candidate);
    let sem = if status > 0.0 { sem_sim(original, candidate, k, cache)? } else { 0.0 };
    let fitness = Fitness { status_score: status, syn_sim: syn, sem_sim: sem, combined: combine(weights, status, syn, sem) };
    Ok((fitness, verdict))
}
