//! Comparison of approximate and exact model-count rankings on random
//! formulas.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::spearman;
use crate::automata::Limits;
use crate::counting::{count_lassos_exact, count_models_approx, ranking_of, CountingError};
use crate::ltl::{random_formula, Alphabet, Formula};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RankingStudyConfig {
    pub sets: usize,
    pub formulas_per_set: usize,
    pub atoms: Vec<String>,
    pub k_min: u32,
    pub k_max: u32,
    /// Operator depth of the generated formulas.
    pub depth: usize,
    pub seed: u64,
}

impl Default for RankingStudyConfig {
    fn default() -> Self {
        RankingStudyConfig {
            sets: 5,
            formulas_per_set: 20,
            atoms: vec!["p".into(), "q".into()],
            k_min: 6,
            k_max: 8,
            depth: 3,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundResult {
    pub k: u32,
    /// Formulas placed at different positions by the two rankings.
    pub discrepancy: usize,
    /// Fewest formulas to move so that the two rankings coincide.
    pub misplaced: usize,
    pub spearman: f64,
    /// Indices of formulas left out because a count failed.
    pub skipped: Vec<usize>,
    pub approx_counts: Vec<String>,
    pub exact_counts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SetResult {
    pub index: usize,
    pub formulas: Vec<String>,
    pub bounds: Vec<BoundResult>,
}

impl SetResult {
    /// Largest discrepancy over all bounds.
    pub fn discrepancy(&self) -> usize {
        self.bounds.iter().map(|b| b.discrepancy).max().unwrap_or(0)
    }

    /// Largest misplaced count over all bounds.
    pub fn misplaced(&self) -> usize {
        self.bounds.iter().map(|b| b.misplaced).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RankingStudyReport {
    pub config: RankingStudyConfig,
    pub sets: Vec<SetResult>,
}

/// Number of items whose position differs between two rankings.
pub fn ranking_discrepancy(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Length of `a` minus the longest common subsequence of two orderings of
/// the same items.
pub fn misplaced_items(a: &[usize], b: &[usize]) -> usize {
    let pos_b = positions(b);
    // longest increasing run of b-positions in a-order, patience style
    let mut tails: Vec<usize> = Vec::new();
    for &item in a {
        let p = pos_b[item];
        match tails.binary_search(&p) {
            Ok(_) => {}
            Err(i) if i == tails.len() => tails.push(p),
            Err(i) => tails[i] = p,
        }
    }
    a.len() - tails.len()
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (rank, &item) in order.iter().enumerate() {
        pos[item] = rank;
    }
    pos
}

/// Rank `formulas` by both counters at bound `k` and compare.
pub fn compare_rankings(formulas: &[Formula], alphabet: &Alphabet, k: u32, limits: &Limits) -> BoundResult {
    let counts: Vec<Result<(BigUint, BigUint), CountingError>> = formulas
        .par_iter()
        .map(|f| Ok((count_models_approx(f, alphabet, k, limits)?, count_lassos_exact(f, alphabet, k as usize)?)))
        .collect();
    let mut skipped = Vec::new();
    let mut approx = Vec::new();
    let mut exact = Vec::new();
    for (i, c) in counts.into_iter().enumerate() {
        match c {
            Ok((a, e)) => {
                approx.push(a);
                exact.push(e);
            }
            Err(_) => skipped.push(i),
        }
    }
    let ra = ranking_of(&approx);
    let re = ranking_of(&exact);
    BoundResult {
        k,
        discrepancy: ranking_discrepancy(&ra, &re),
        misplaced: misplaced_items(&ra, &re),
        spearman: spearman(&positions(&ra), &positions(&re)),
        skipped,
        approx_counts: approx.iter().map(ToString::to_string).collect(),
        exact_counts: exact.iter().map(ToString::to_string).collect(),
    }
}

pub fn run_ranking_study(cfg: &RankingStudyConfig, limits: &Limits) -> Result<RankingStudyReport, CountingError> {
    let alphabet = Alphabet::new(cfg.atoms.iter().cloned())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sets = Vec::with_capacity(cfg.sets);
    for index in 0..cfg.sets {
        let formulas: Vec<Formula> = (0..cfg.formulas_per_set)
            .map(|_| {
                let depth = rng.random_range(1..=cfg.depth.max(1));
                random_formula(&mut rng, &cfg.atoms, depth)
            })
            .collect();
        let bounds = (cfg.k_min..=cfg.k_max).map(|k| compare_rankings(&formulas, &alphabet, k, limits)).collect();
        sets.push(SetResult { index, formulas: formulas.iter().map(ToString::to_string).collect(), bounds });
    }
    Ok(RankingStudyReport { config: cfg.clone(), sets })
}
