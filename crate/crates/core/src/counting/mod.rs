//! Model counting: transfer-matrix prefix counts over the minimized DFA of a
//! formula, and exact lasso enumeration used as a reference.

mod matrix;

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::automata::{determinize, finitize, ltl_to_buchi, minimize, AutomataError, DetAutomaton, Limits};
use crate::ltl::{atom_masks, Alphabet, LassoProgram, Formula, LtlError, Valuation, MAX_LASSO_LENGTH};

pub use matrix::{build_transfer_matrix, count_prefixes, identity, matrix_power, multiply, Matrix, TransferMatrix};

/// Exact lasso counting enumerates `2^(|AP|·k)` bases; beyond this many bits
/// it is refused.
pub const MAX_EXACT_BITS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountingError {
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Ltl(#[from] LtlError),
    #[error("exact counting needs |AP|*k <= {MAX_EXACT_BITS} and k <= {MAX_LASSO_LENGTH}, got |AP|={atoms}, k={k}")]
    Infeasible { atoms: usize, k: usize },
    #[error("bound must be at least 1")]
    ZeroBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Approx,
    Exact,
}

/// Minimized DFA whose accepted words are the finite prefixes counted for `f`.
pub fn approx_automaton(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<DetAutomaton, CountingError> {
    let core = f.normalize_to_core();
    let buchi = ltl_to_buchi(&core, alphabet, limits)?;
    let finite = finitize(&buchi)?;
    let det = determinize(&finite, limits)?;
    Ok(minimize(&det))
}

/// Number of length-`k` words over `alphabet` that label a path of the
/// formula's automaton ending in an accepting state.
pub fn count_models_approx(f: &Formula, alphabet: &Alphabet, k: u32, limits: &Limits) -> Result<BigUint, CountingError> {
    if k == 0 {
        return Err(CountingError::ZeroBound);
    }
    let dfa = approx_automaton(f, alphabet, limits)?;
    Ok(count_prefixes(&build_transfer_matrix(&dfa), k))
}

/// Number of pairs `(base, loop index)` with `|base| = k` whose lasso word
/// satisfies `f`.
pub fn count_lassos_exact(f: &Formula, alphabet: &Alphabet, k: usize) -> Result<BigUint, CountingError> {
    if k == 0 {
        return Err(CountingError::ZeroBound);
    }
    let atoms = alphabet.len();
    if atoms * k > MAX_EXACT_BITS || k > MAX_LASSO_LENGTH {
        return Err(CountingError::Infeasible { atoms, k });
    }
    let program = LassoProgram::compile(f, alphabet)?;
    let letter_mask = (1u64 << atoms) - 1;
    let total: u64 = (0..1u64 << (atoms * k))
        .into_par_iter()
        .map_init(
            || (Vec::with_capacity(k), Vec::new()),
            |(base, scratch): &mut (Vec<Valuation>, Vec<u64>), code| {
                base.clear();
                base.extend((0..k).map(|i| Valuation(code >> (i * atoms) & letter_mask)));
                let masks = atom_masks(atoms, base);
                (0..k).filter(|&l| program.eval(&masks, k, l, scratch)).count() as u64
            },
        )
        .sum();
    Ok(BigUint::from(total))
}

/// Indices of `formulas` in ascending count order; equal counts keep input
/// order.
pub fn rank_by_count(
    formulas: &[Formula],
    alphabet: &Alphabet,
    k: u32,
    mode: CountMode,
    limits: &Limits,
) -> Result<Vec<usize>, CountingError> {
    let counts = formulas
        .iter()
        .map(|f| match mode {
            CountMode::Approx => count_models_approx(f, alphabet, k, limits),
            CountMode::Exact => count_lassos_exact(f, alphabet, k as usize),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ranking_of(&counts))
}

/// Stable ascending argsort.
pub fn ranking_of<T: Ord>(values: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]));
    order
}

/// Thread-safe memo of approximate counts keyed by printed formula, alphabet
/// and bound. Failures are cached as well.
#[derive(Debug)]
pub struct CountCache {
    limits: Limits,
    table: Mutex<HashMap<(String, String, u32), Result<BigUint, CountingError>>>,
}

impl CountCache {
    pub fn new(limits: Limits) -> Self {
        CountCache { limits, table: Mutex::new(HashMap::new()) }
    }

    pub fn count(&self, f: &Formula, alphabet: &Alphabet, k: u32) -> Result<BigUint, CountingError> {
        let key = (f.to_string(), alphabet.to_string(), k);
        if let Some(hit) = self.table.lock().expect("count cache poisoned").get(&key) {
            return hit.clone();
        }
        let value = count_models_approx(f, alphabet, k, &self.limits);
        self.table.lock().expect("count cache poisoned").entry(key).or_insert(value).clone()
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("count cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for CountCache {
    fn default() -> Self {
        Self::new(Limits::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn ab(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    fn approx(text: &str, names: &[&str], k: u32) -> BigUint {
        count_models_approx(&parse_formula(text).unwrap(), &ab(names), k, &Limits::default()).unwrap()
    }

    fn exact(text: &str, names: &[&str], k: usize) -> BigUint {
        count_lassos_exact(&parse_formula(text).unwrap(), &ab(names), k).unwrap()
    }

    #[test]
    fn response_formula_counts() {
        assert_eq!(approx("G (p -> X q)", &["p", "q"], 4), BigUint::from(108u32));
        assert_eq!(exact("G (p -> X q)", &["p", "q"], 4), BigUint::from(351u32));
    }

    #[test]
    fn constants() {
        assert_eq!(approx("false", &["p"], 4), BigUint::from(0u32));
        assert_eq!(approx("true", &["p"], 3), BigUint::from(8u32));
        assert_eq!(exact("true", &["p"], 2), BigUint::from(8u32));
        assert_eq!(exact("false", &["p"], 3), BigUint::from(0u32));
    }

    #[test]
    fn infeasible_exact_is_refused() {
        let f = parse_formula("p").unwrap();
        assert!(matches!(count_lassos_exact(&f, &ab(&["p", "q"]), 13), Err(CountingError::Infeasible { .. })));
    }

    #[test]
    fn stable_ranking() {
        let fs: Vec<Formula> = ["true", "false", "p", "true"].iter().map(|s| parse_formula(s).unwrap()).collect();
        let r = rank_by_count(&fs, &ab(&["p"]), 3, CountMode::Approx, &Limits::default()).unwrap();
        assert_eq!(r, vec![1, 2, 0, 3]);
    }

    #[test]
    fn cache_returns_same_value() {
        let cache = CountCache::default();
        let f = parse_formula("G (p -> X q)").unwrap();
        let a = cache.count(&f, &ab(&["p", "q"]), 4).unwrap();
        let b = cache.count(&f, &ab(&["p", "q"]), 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(cache.len(), 1);
    }
}
