mod common;

use common::{brute_dfa_count, brute_lasso_count, f, formula_strategy, words};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specrepair::automata::{determinize, finitize, ltl_to_buchi, minimize};
use specrepair::counting::{
    build_transfer_matrix, count_lassos_exact, count_models_approx, count_prefixes, matrix_power, rank_by_count,
    CountMode, CountingError,
};
use specrepair::{Alphabet, DetAutomaton, Limits, Valuation};

const ATOMS: &[&str] = &["p", "q"];

fn pq() -> Alphabet {
    Alphabet::new(ATOMS.iter().copied()).unwrap()
}

#[test]
fn worked_example_counts() {
    let phi = f("G (p -> X q)");
    assert_eq!(count_models_approx(&phi, &pq(), 4, &Limits::default()).unwrap(), BigUint::from(108u32));
    assert_eq!(count_lassos_exact(&phi, &pq(), 4).unwrap(), BigUint::from(351u32));
    assert_eq!(brute_lasso_count(&phi, ATOMS, 4), 351);
}

#[test]
fn trivial_formulas() {
    let one = Alphabet::new(["p"]).unwrap();
    let l = Limits::default();
    assert_eq!(count_models_approx(&f("false"), &one, 4, &l).unwrap(), BigUint::from(0u32));
    assert_eq!(count_models_approx(&f("true"), &one, 4, &l).unwrap(), BigUint::from(16u32));
    assert_eq!(count_models_approx(&f("G p"), &one, 3, &l).unwrap(), BigUint::from(1u32));
    assert_eq!(count_models_approx(&f("p"), &one, 0, &l), Err(CountingError::ZeroBound));
}

#[test]
fn exact_counting_refuses_large_instances() {
    let five = Alphabet::new(["a", "b", "c", "d", "e"]).unwrap();
    assert!(matches!(count_lassos_exact(&f("a"), &five, 6), Err(CountingError::Infeasible { .. })));
}

#[test]
fn random_dfas_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let atoms = rng.random_range(1..=2usize);
        let alphabet = Alphabet::new(["p", "q"].iter().take(atoms).copied()).unwrap();
        let n = rng.random_range(1..=5usize);
        let letters = 1usize << atoms;
        let table: Vec<Vec<usize>> = (0..n).map(|_| (0..letters).map(|_| rng.random_range(0..n)).collect()).collect();
        let finals: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let dfa = DetAutomaton::from_table(alphabet, table.clone(), 0, finals.clone()).unwrap();
        let min = minimize(&dfa);
        assert!(min.state_count() <= n);
        for k in 1..=6u32 {
            let expected = brute_dfa_count(&table, 0, &finals, atoms, k as usize);
            assert_eq!(count_prefixes(&build_transfer_matrix(&min), k), BigUint::from(expected));
        }
    }
}

#[test]
fn matrix_power_agrees_with_propagation() {
    let dfa = minimize(&determinize(&finitize(&ltl_to_buchi(&f("G (p -> X q)"), &pq(), &Limits::default()).unwrap()).unwrap(), &Limits::default()).unwrap());
    let t = build_transfer_matrix(&dfa);
    for k in 1..=6u32 {
        let m = matrix_power(&t, k);
        let mut sum = BigUint::from(0u32);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if t.initial()[i] && t.finals()[j] {
                    sum += v;
                }
            }
        }
        assert_eq!(sum, count_prefixes(&t, k));
    }
}

#[test]
fn ranking_is_stable_on_ties() {
    let fs = vec![f("G p"), f("true"), f("G p"), f("false")];
    let order = rank_by_count(&fs, &pq(), 4, CountMode::Approx, &Limits::default()).unwrap();
    assert_eq!(order, vec![3, 0, 2, 1]);
    let order = rank_by_count(&fs, &pq(), 4, CountMode::Exact, &Limits::default()).unwrap();
    assert_eq!(order, vec![3, 0, 2, 1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn determinization_and_minimization_keep_language(phi in formula_strategy(ATOMS, 3)) {
        let l = Limits::default();
        let finite = finitize(&ltl_to_buchi(&phi.normalize_to_core(), &pq(), &l).unwrap()).unwrap();
        let det = determinize(&finite, &l).unwrap();
        let min = minimize(&det);
        prop_assert!(min.is_minimal());
        prop_assert!(min.state_count() <= det.state_count());
        prop_assert!(minimize(&min).is_isomorphic(&min));
        for k in 0..=4 {
            for w in words(2, k) {
                let word: Vec<Valuation> = w.iter().map(|&v| Valuation(v)).collect();
                let expected = finite.accepts_finite(&word);
                prop_assert_eq!(det.accepts(&word), expected);
                prop_assert_eq!(min.accepts(&word), expected);
            }
        }
    }

    #[test]
    fn approximate_count_matches_prefix_enumeration(phi in formula_strategy(ATOMS, 3), k in 1..=4u32) {
        let l = Limits::default();
        let finite = finitize(&ltl_to_buchi(&phi.normalize_to_core(), &pq(), &l).unwrap()).unwrap();
        let expected = words(2, k as usize)
            .filter(|w| finite.accepts_finite(&w.iter().map(|&v| Valuation(v)).collect::<Vec<_>>()))
            .count();
        prop_assert_eq!(count_models_approx(&phi, &pq(), k, &l).unwrap(), BigUint::from(expected));
    }

    #[test]
    fn exact_count_matches_oracle(phi in formula_strategy(ATOMS, 3), k in 1..=4usize) {
        prop_assert_eq!(count_lassos_exact(&phi, &pq(), k).unwrap(), BigUint::from(brute_lasso_count(&phi, ATOMS, k)));
    }

    #[test]
    fn counts_are_bounded_by_word_count(phi in formula_strategy(ATOMS, 3), k in 1..=5u32) {
        let c = count_models_approx(&phi, &pq(), k, &Limits::default()).unwrap();
        prop_assert!(c <= BigUint::from(4u32).pow(k));
    }
}
