//! Reference implementations used as test oracles. They follow the textbook
//! definitions directly and share no code with the library algorithms.
#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use specrepair::harness::load_spec_file;
use specrepair::ltl::{parse_formula, BinaryOp, Formula, Spec, UnaryOp};
use specrepair::{DetAutomaton, Valuation};

pub fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

pub fn arbiter() -> Spec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs/arbiter.spec");
    load_spec_file(&path).unwrap().spec
}

pub fn spec(ins: &[&str], outs: &[&str], assumptions: &[&str], guarantees: &[&str]) -> Spec {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
    let fs = |v: &[&str]| v.iter().map(|s| f(s)).collect();
    Spec::new(names(ins), names(outs), fs(assumptions), fs(guarantees)).unwrap()
}

/// Truth of `f` at position `i` of the lasso `base[..l] base[l..]^ω`, by
/// walking the successor positions until one repeats.
pub fn holds(f: &Formula, atoms: &[&str], base: &[u64], l: usize, i: usize) -> bool {
    let k = base.len();
    let succ = |j: usize| if j + 1 < k { j + 1 } else { l };
    // positions i, succ(i), ... each reached once
    let path = |start: usize| {
        let mut out = vec![start];
        let mut seen = vec![false; k];
        seen[start] = true;
        let mut j = start;
        loop {
            j = succ(j);
            if seen[j] {
                break;
            }
            seen[j] = true;
            out.push(j);
        }
        out
    };
    match f {
        Formula::Const(b) => *b,
        Formula::Atom(name) => {
            let idx = atoms.iter().position(|a| a == name).expect("atom in alphabet");
            base[i] >> idx & 1 == 1
        }
        Formula::Unary(op, g) => match op {
            UnaryOp::Not => !holds(g, atoms, base, l, i),
            UnaryOp::Next => holds(g, atoms, base, l, succ(i)),
            UnaryOp::Finally => path(i).into_iter().any(|j| holds(g, atoms, base, l, j)),
            UnaryOp::Globally => path(i).into_iter().all(|j| holds(g, atoms, base, l, j)),
        },
        Formula::Binary(op, a, b) => {
            let va = |j| holds(a, atoms, base, l, j);
            let vb = |j| holds(b, atoms, base, l, j);
            let until = |strong: bool| {
                for j in path(i) {
                    if vb(j) {
                        return true;
                    }
                    if !va(j) {
                        return false;
                    }
                }
                // a held along the whole cycle without b
                !strong
            };
            match op {
                BinaryOp::And => va(i) && vb(i),
                BinaryOp::Or => va(i) || vb(i),
                BinaryOp::Implies => !va(i) || vb(i),
                BinaryOp::Iff => va(i) == vb(i),
                BinaryOp::Until => until(true),
                BinaryOp::WeakUntil => until(false),
                BinaryOp::Release => {
                    // b holds up to and including the first position where a holds
                    for j in path(i) {
                        if !vb(j) {
                            return false;
                        }
                        if va(j) {
                            return true;
                        }
                    }
                    true
                }
            }
        }
    }
}

/// All words of length `k` over `atoms` propositions, as letter codes.
pub fn words(atoms: usize, k: usize) -> impl Iterator<Item = Vec<u64>> {
    let letters = 1u64 << atoms;
    let total = letters.pow(k as u32);
    (0..total).map(move |mut code| {
        let mut w = Vec::with_capacity(k);
        for _ in 0..k {
            w.push(code % letters);
            code /= letters;
        }
        w
    })
}

/// Number of `(base, loop)` pairs with `|base| = k` satisfying `f`.
pub fn brute_lasso_count(f: &Formula, atoms: &[&str], k: usize) -> u64 {
    words(atoms.len(), k).map(|w| (0..k).filter(|&l| holds(f, atoms, &w, l, 0)).count() as u64).sum()
}

/// Number of length-`k` words accepted by a complete DFA given as a table.
pub fn brute_dfa_count(table: &[Vec<usize>], initial: usize, finals: &[bool], atoms: usize, k: usize) -> u64 {
    words(atoms, k)
        .filter(|w| {
            let q = w.iter().fold(initial, |q, &a| table[q][a as usize]);
            finals[q]
        })
        .count() as u64
}

pub fn dfa_accepts(d: &DetAutomaton, w: &[u64]) -> bool {
    let word: Vec<Valuation> = w.iter().map(|&v| Valuation(v)).collect();
    d.accepts(&word)
}

/// Whether some lasso whose base extends `prefix` by at most `extra`
/// letters satisfies `f`.
pub fn extendable(f: &Formula, atoms: &[&str], prefix: &[u64], extra: usize) -> bool {
    (0..=extra).any(|m| {
        words(atoms.len(), m).any(|tail| {
            let mut base = prefix.to_vec();
            base.extend(tail);
            !base.is_empty() && (0..base.len()).any(|l| holds(f, atoms, &base, l, 0))
        })
    })
}

/// Outcome of the depth-bounded strategy-tree game on bad prefixes: each
/// round the environment picks inputs, then the system picks outputs; a
/// prefix is bad once no short lasso extends it to a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeVerdict {
    /// the environment forces a bad prefix within the depth
    EnvironmentWins,
    /// the system avoids bad prefixes for the whole depth
    SystemSurvives,
}

pub fn strategy_tree(f: &Formula, inputs: &[&str], outputs: &[&str], depth: usize, extra: usize) -> TreeVerdict {
    let atoms: Vec<&str> = inputs.iter().chain(outputs).copied().collect();
    fn system_survives(
        f: &Formula,
        atoms: &[&str],
        ins: usize,
        outs: usize,
        prefix: &mut Vec<u64>,
        depth: usize,
        extra: usize,
    ) -> bool {
        if !extendable(f, atoms, prefix, extra) {
            return false;
        }
        if depth == 0 {
            return true;
        }
        (0..1u64 << ins).all(|x| {
            (0..1u64 << outs).any(|y| {
                prefix.push(x | y << ins);
                let ok = system_survives(f, atoms, ins, outs, prefix, depth - 1, extra);
                prefix.pop();
                ok
            })
        })
    }
    if system_survives(f, &atoms, inputs.len(), outputs.len(), &mut Vec::new(), depth, extra) {
        TreeVerdict::SystemSurvives
    } else {
        TreeVerdict::EnvironmentWins
    }
}

/// Random formulas over the given atoms, all operators included.
pub fn formula_strategy(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => proptest::sample::select(atoms).prop_map(Formula::atom),
        1 => any::<bool>().prop_map(Formula::Const),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        let unary = prop_oneof![
            Just(UnaryOp::Not),
            Just(UnaryOp::Next),
            Just(UnaryOp::Finally),
            Just(UnaryOp::Globally)
        ];
        let binary = prop_oneof![
            Just(BinaryOp::And),
            Just(BinaryOp::Or),
            Just(BinaryOp::Implies),
            Just(BinaryOp::Iff),
            Just(BinaryOp::Until),
            Just(BinaryOp::WeakUntil),
            Just(BinaryOp::Release)
        ];
        prop_oneof![
            (unary, inner.clone()).prop_map(|(op, g)| Formula::unary(op, g)),
            (binary, inner.clone(), inner).prop_map(|(op, a, b)| Formula::binary(op, a, b)),
        ]
    })
}

/// Random lasso over `atoms` propositions with base length in `1..=max_len`.
pub fn lasso_strategy(atoms: usize, max_len: usize) -> impl Strategy<Value = (Vec<u64>, usize)> {
    (1..=max_len).prop_flat_map(move |k| {
        (proptest::collection::vec(0..1u64 << atoms, k), 0..k)
    })
}
