//! The evolutionary loop and the mutation-only baseline.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fitness::{evaluate_fitness, Fitness};
use super::operators::{crossover, mutate, seed_population};
use super::report::{RepairEntry, RepairReport, RunStats, SpecSummary};
use super::{ConfigError, GaConfig};
use crate::analysis::{check_realizability_with, is_sat_with, RealizabilityVerdict};
use crate::counting::CountCache;
use crate::ltl::Spec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Provenance {
    Original,
    Seed { pattern: String },
    Crossover { first: usize, second: usize },
    Mutation { parent: usize },
    MutationOfOriginal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    /// Creation index within the run.
    pub id: usize,
    pub spec: Spec,
    pub fitness: Fitness,
    pub verdict: Option<RealizabilityVerdict>,
    pub provenance: Provenance,
    /// Set for quarantined individuals whose evaluation failed.
    pub error: Option<String>,
}

fn by_fitness(a: &Individual, b: &Individual) -> Ordering {
    let (fa, fb) = (&a.fitness, &b.fitness);
    fb.combined
        .total_cmp(&fa.combined)
        .then(fb.sem_sim.total_cmp(&fa.sem_sim))
        .then(fb.syn_sim.total_cmp(&fa.syn_sim))
        .then(a.id.cmp(&b.id))
}

/// Best `size` individuals with distinct formula sets, ordered by combined
/// fitness, then semantic and syntactic similarity, then creation order.
pub fn select_best(mut population: Vec<Individual>, size: usize) -> Vec<Individual> {
    population.sort_by(by_fitness);
    let mut seen = HashSet::new();
    population.retain(|ind| seen.insert(ind.spec.canonical_key()));
    population.truncate(size);
    population
}

#[derive(Clone)]
struct Outcome {
    fitness: Fitness,
    verdict: Option<RealizabilityVerdict>,
    error: Option<String>,
}

struct Evaluator<'a> {
    original: &'a Spec,
    cfg: &'a GaConfig,
    cache: CountCache,
    memo: HashMap<String, Outcome>,
    backend_calls: AtomicUsize,
    deadline: Instant,
    cancel: Option<&'a AtomicBool>,
    pool: rayon::ThreadPool,
}

impl<'a> Evaluator<'a> {
    fn new(original: &'a Spec, cfg: &'a GaConfig, cancel: Option<&'a AtomicBool>, start: Instant) -> Self {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
        Evaluator {
            original,
            cfg,
            cache: CountCache::new(cfg.limits),
            memo: HashMap::new(),
            backend_calls: AtomicUsize::new(0),
            deadline: start + Duration::from_secs(cfg.budget_seconds),
            cancel,
            pool,
        }
    }

    fn stopped(&self) -> bool {
        Instant::now() >= self.deadline || self.cancel.is_some_and(|c| c.load(AtomicOrdering::Relaxed))
    }

    fn evaluate_one(&self, spec: &Spec) -> Option<Outcome> {
        if self.stopped() {
            return None;
        }
        let result = evaluate_fitness(
            self.original,
            spec,
            self.cfg.weights(),
            self.cfg.bound,
            &self.cfg.backend,
            &self.cache,
            &self.cfg.limits,
        );
        Some(match result {
            Ok((fitness, verdict)) => {
                if verdict.is_some() {
                    self.backend_calls.fetch_add(1, AtomicOrdering::Relaxed);
                }
                Outcome { fitness, verdict, error: None }
            }
            Err(e) => Outcome { fitness: Fitness::default(), verdict: None, error: Some(e.to_string()) },
        })
    }

    /// Evaluate a batch in parallel; duplicates of already seen formula sets
    /// reuse the stored outcome. Returns `None` for entries skipped after the
    /// deadline or cancellation.
    fn evaluate(&mut self, specs: &[Spec]) -> Vec<Option<Outcome>> {
        let mut fresh: Vec<(String, &Spec)> = Vec::new();
        let mut queued = HashSet::new();
        for s in specs {
            let key = s.canonical_key();
            if !self.memo.contains_key(&key) && queued.insert(key.clone()) {
                fresh.push((key, s));
            }
        }
        let results: Vec<Option<Outcome>> =
            self.pool.install(|| fresh.par_iter().map(|(_, s)| self.evaluate_one(s)).collect());
        for ((key, _), out) in fresh.into_iter().zip(results) {
            if let Some(out) = out {
                self.memo.insert(key, out);
            }
        }
        specs.iter().map(|s| self.memo.get(&s.canonical_key()).cloned()).collect()
    }
}

struct Run<'a> {
    eval: Evaluator<'a>,
    archive: Vec<Individual>,
    incomplete: bool,
    warnings: Vec<String>,
    start: Instant,
}

impl<'a> Run<'a> {
    fn new(original: &'a Spec, cfg: &'a GaConfig, cancel: Option<&'a AtomicBool>) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let start = Instant::now();
        let mut run = Run { eval: Evaluator::new(original, cfg, cancel, start), archive: Vec::new(), incomplete: false, warnings: Vec::new(), start };
        if let Some(Some(out)) = run.eval.evaluate(std::slice::from_ref(original)).pop() {
            match &out.verdict {
                Some(RealizabilityVerdict::Realizable) => {
                    run.warnings.push("the original specification is already realizable".to_string())
                }
                Some(RealizabilityVerdict::Unknown(reason)) => {
                    run.warnings.push(format!("realizability of the original specification is unknown: {reason}"))
                }
                _ => {}
            }
        }
        Ok(run)
    }

    fn remaining(&self) -> usize {
        self.eval.cfg.max_individuals.saturating_sub(self.archive.len())
    }

    /// Evaluate and archive as many candidates as the budget allows.
    fn admit(&mut self, candidates: Vec<(Spec, Provenance)>) -> Vec<Individual> {
        let take = candidates.len().min(self.remaining());
        let candidates = &candidates[..take];
        let specs: Vec<Spec> = candidates.iter().map(|(s, _)| s.clone()).collect();
        let outcomes = self.eval.evaluate(&specs);
        let mut admitted = Vec::new();
        for ((spec, provenance), out) in candidates.iter().zip(outcomes) {
            let Some(out) = out else {
                self.incomplete = true;
                continue;
            };
            let ind = Individual {
                id: self.archive.len(),
                spec: spec.clone(),
                fitness: out.fitness,
                verdict: out.verdict,
                provenance: provenance.clone(),
                error: out.error,
            };
            self.archive.push(ind.clone());
            admitted.push(ind);
        }
        if self.remaining() > 0 && self.eval.stopped() {
            self.incomplete = true;
        }
        admitted
    }

    fn chain(&self, id: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut current = Some(id);
        while let Some(i) = current {
            let ind = &self.archive[i];
            let (text, next) = match &ind.provenance {
                Provenance::Original => (format!("#{i} copy of original"), None),
                Provenance::Seed { pattern } => (format!("#{i} seed adding {pattern}"), None),
                Provenance::MutationOfOriginal => (format!("#{i} mutation of original"), None),
                Provenance::Mutation { parent } => (format!("#{i} mutation of #{parent}"), Some(*parent)),
                Provenance::Crossover { first, second } => {
                    (format!("#{i} crossover of #{first} and #{second}"), Some(*first))
                }
            };
            out.push(text);
            current = next;
        }
        out
    }

    /// Re-verified, deduplicated repairs ranked by fitness.
    fn finish(mut self) -> RepairReport {
        let cfg = self.eval.cfg;
        let mut candidates: Vec<&Individual> = self
            .archive
            .iter()
            .filter(|ind| ind.fitness.status_score == 1.0 && ind.verdict == Some(RealizabilityVerdict::Realizable))
            .collect();
        candidates.sort_by(|a, b| by_fitness(a, b));
        let mut seen = HashSet::new();
        candidates.retain(|ind| seen.insert(ind.spec.canonical_key()));

        let verified: Vec<bool> = self.eval.pool.install(|| {
            candidates
                .par_iter()
                .map(|ind| {
                    let sat = is_sat_with(&ind.spec.conjunction(), &cfg.limits).unwrap_or(false);
                    if !sat {
                        return false;
                    }
                    self.eval.backend_calls.fetch_add(1, AtomicOrdering::Relaxed);
                    check_realizability_with(&ind.spec, &cfg.backend, &cfg.limits) == RealizabilityVerdict::Realizable
                })
                .collect()
        });
        let mut repairs = Vec::new();
        for (ind, ok) in candidates.iter().zip(verified) {
            if !ok {
                self.warnings.push(format!("#{} failed re-verification and was dropped", ind.id));
                continue;
            }
            repairs.push(RepairEntry {
                rank: repairs.len() + 1,
                assumptions: ind.spec.assumptions().iter().map(ToString::to_string).collect(),
                guarantees: ind.spec.guarantees().iter().map(ToString::to_string).collect(),
                status_score: ind.fitness.status_score,
                syn_sim: ind.fitness.syn_sim,
                sem_sim: ind.fitness.sem_sim,
                combined: ind.fitness.combined,
                provenance_chain: self.chain(ind.id),
            });
        }

        let unknown = self.archive.iter().filter(|i| matches!(i.verdict, Some(RealizabilityVerdict::Unknown(_)))).count();
        if unknown > 0 {
            self.warnings.push(format!("{unknown} individuals had an unknown realizability verdict"));
        }
        let quarantined = self.archive.iter().filter(|i| i.error.is_some()).count();
        if quarantined > 0 {
            self.warnings.push(format!("{quarantined} individuals could not be evaluated"));
        }
        if self.incomplete {
            self.warnings.push("run stopped before the individual budget was used".to_string());
        }
        RepairReport {
            config: cfg.clone(),
            original_spec: SpecSummary::from(self.eval.original),
            repairs,
            stats: RunStats {
                individuals_evaluated: self.archive.len(),
                wall_clock_seconds: self.start.elapsed().as_secs_f64(),
                backend_calls: self.eval.backend_calls.load(AtomicOrdering::Relaxed),
            },
            incomplete: self.incomplete,
            warnings: self.warnings,
        }
    }
}

/// Search for realizable variants of `original`. Every evaluated candidate
/// counts towards `max_individuals`, seeds included.
pub fn run_ga(original: &Spec, cfg: &GaConfig, cancel: Option<&AtomicBool>) -> Result<RepairReport, ConfigError> {
    let mut run = Run::new(original, cfg, cancel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let seeds = seed_population(original, cfg.population_size, &cfg.limits)
        .into_iter()
        .map(|(s, pattern)| {
            let provenance = match pattern {
                Some(p) => Provenance::Seed { pattern: p.to_string() },
                None => Provenance::Original,
            };
            (s, provenance)
        })
        .collect();
    let mut population = select_best(run.admit(seeds), cfg.population_size);

    let crossovers = (cfg.crossover_fraction * cfg.population_size as f64).round() as usize;
    while run.remaining() > 0 && !run.incomplete && !population.is_empty() {
        let mut offspring = Vec::with_capacity(population.len() + crossovers);
        for _ in 0..crossovers {
            let a = population.choose(&mut rng).expect("nonempty");
            let b = population.choose(&mut rng).expect("nonempty");
            offspring.push((crossover(&a.spec, &b.spec, &mut rng), Provenance::Crossover { first: a.id, second: b.id }));
        }
        for parent in &population {
            offspring.push((mutate(&parent.spec, &mut rng), Provenance::Mutation { parent: parent.id }));
        }
        let children = run.admit(offspring);
        population.extend(children);
        population = select_best(population, cfg.population_size);
    }
    Ok(run.finish())
}

/// Mutation-only baseline: `max_individuals` independent mutants of the
/// original, verified and reported like a GA run.
pub fn run_random_baseline(original: &Spec, cfg: &GaConfig, cancel: Option<&AtomicBool>) -> Result<RepairReport, ConfigError> {
    let mut run = Run::new(original, cfg, cancel)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    while run.remaining() > 0 && !run.incomplete {
        let n = cfg.population_size.min(run.remaining());
        let mutants = (0..n).map(|_| (mutate(original, &mut rng), Provenance::MutationOfOriginal)).collect();
        run.admit(mutants);
    }
    Ok(run.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn arbiter() -> Spec {
        let g = ["G (r1 -> F g1)", "G (r2 -> F g2)", "G (!a -> (!g1 && !g2))"];
        Spec::new(
            vec!["r1".into(), "r2".into(), "a".into()],
            vec!["g1".into(), "g2".into()],
            vec![],
            g.iter().map(|s| parse_formula(s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn individual(id: usize, combined: f64, sem: f64, syn: f64, guarantee: &str) -> Individual {
        let spec = Spec::new(vec!["p".into()], vec![], vec![], vec![parse_formula(guarantee).unwrap()]).unwrap();
        Individual {
            id,
            spec,
            fitness: Fitness { status_score: 0.5, syn_sim: syn, sem_sim: sem, combined },
            verdict: None,
            provenance: Provenance::Original,
            error: None,
        }
    }

    #[test]
    fn selection_order_and_ties() {
        let pop = vec![
            individual(0, 0.5, 0.1, 0.1, "p"),
            individual(1, 0.9, 0.1, 0.1, "G p"),
            individual(2, 0.5, 0.2, 0.1, "F p"),
            individual(3, 0.5, 0.2, 0.3, "X p"),
            individual(4, 0.5, 0.2, 0.3, "X X p"),
            individual(5, 0.9, 0.1, 0.1, "G p"),
        ];
        let ids: Vec<usize> = select_best(pop, 4).iter().map(|i| i.id).collect();
        assert_eq!(ids, vec![1, 3, 4, 2]);
    }

    #[test]
    fn equal_fitness_keeps_creation_order() {
        let pop: Vec<Individual> =
            ["p", "X p", "X X p", "X X X p"].iter().enumerate().map(|(i, g)| individual(i, 0.5, 0.5, 0.5, g)).collect();
        let ids: Vec<usize> = select_best(pop, 2).iter().map(|i| i.id).collect();
        assert_eq!(ids, vec![0, 1]);
    }

    fn small() -> GaConfig {
        GaConfig { population_size: 10, max_individuals: 40, jobs: 1, ..GaConfig::default() }
    }

    #[test]
    fn small_run_finds_verified_repairs() {
        let report = run_ga(&arbiter(), &small(), None).unwrap();
        assert!(!report.incomplete);
        assert_eq!(report.stats.individuals_evaluated, 40);
        assert!(!report.repairs.is_empty());
        assert!(report.repairs.iter().all(|r| r.status_score == 1.0));
        assert!(report.repairs.windows(2).all(|w| w[0].combined >= w[1].combined));
        assert_eq!(report.repairs[0].assumptions, vec!["G (F (a))".to_string()]);
    }

    #[test]
    fn budget_equal_to_population_is_one_generation() {
        let cfg = GaConfig { max_individuals: 10, ..small() };
        let report = run_ga(&arbiter(), &cfg, None).unwrap();
        assert_eq!(report.stats.individuals_evaluated, 10);
        assert!(report.repairs.iter().all(|r| r.provenance_chain.len() == 1));
    }

    #[test]
    fn same_seed_same_report() {
        let mut a = run_ga(&arbiter(), &small(), None).unwrap();
        let mut b = run_ga(&arbiter(), &small(), None).unwrap();
        a.stats.wall_clock_seconds = 0.0;
        b.stats.wall_clock_seconds = 0.0;
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn cancelled_run_is_incomplete() {
        let flag = AtomicBool::new(true);
        let report = run_ga(&arbiter(), &small(), Some(&flag)).unwrap();
        assert!(report.incomplete);
        assert_eq!(report.stats.individuals_evaluated, 0);
    }

    #[test]
    fn baseline_respects_budget() {
        let report = run_random_baseline(&arbiter(), &small(), None).unwrap();
        assert!(report.stats.individuals_evaluated <= 40);
        assert!(report.repairs.iter().all(|r| r.provenance_chain == [r.provenance_chain[0].clone()]));
    }

    #[test]
    fn realizable_original_warns() {
        let s = Spec::new(vec!["x".into()], vec!["y".into()], vec![], vec![parse_formula("G (y <-> x)").unwrap()]).unwrap();
        let cfg = GaConfig { max_individuals: 10, ..small() };
        let report = run_ga(&s, &cfg, None).unwrap();
        assert!(report.warnings.iter().any(|w| w.contains("already realizable")));
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = GaConfig { alpha: 0.9, ..small() };
        assert!(run_ga(&arbiter(), &cfg, None).is_err());
    }
}
