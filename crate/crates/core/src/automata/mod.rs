//! Explicit-state automata over the valuation alphabet `2^AP`.
//!
//! The counting pipeline is `ltl_to_buchi -> finitize -> determinize ->
//! minimize`; the realizability games and the satisfiability check consume
//! the Büchi automaton directly.

mod finite;
mod hoa;
mod nnf;
mod scc;
mod tableau;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::ltl::{Alphabet, LtlError, Valuation};

pub use finite::{determinize, finitize, minimize, trim};
pub(crate) use finite::LetterGraph;
pub use hoa::{det_to_hoa, to_hoa};
pub use scc::{is_empty, live_states};
pub use tableau::ltl_to_buchi;

/// Largest alphabet that may be expanded into concrete letters.
pub const MAX_CONCRETE_PROPOSITIONS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("{stage} exceeded the state limit of {limit}")]
    StateLimit { stage: &'static str, limit: usize },
    #[error("{0} propositions are too many to enumerate letters (max {MAX_CONCRETE_PROPOSITIONS})")]
    TooManyLetters(usize),
    #[error("expected a {expected} automaton")]
    WrongKind { expected: &'static str },
    #[error(transparent)]
    Ltl(#[from] LtlError),
}

/// Resource caps for automaton construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 100_000 }
    }
}

/// A conjunction of literals: atoms in `pos` must hold, atoms in `neg` must not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Guard {
    pub pos: u64,
    pub neg: u64,
}

impl Guard {
    pub const TRUE: Guard = Guard { pos: 0, neg: 0 };

    pub fn matches(self, v: Valuation) -> bool {
        v.0 & self.pos == self.pos && v.0 & self.neg == 0
    }

    pub fn is_consistent(self) -> bool {
        self.pos & self.neg == 0
    }

    /// `self` admits every letter `other` admits.
    pub fn weaker_than(self, other: Guard) -> bool {
        self.pos & other.pos == self.pos && self.neg & other.neg == self.neg
    }

    /// Number of valuations over `atom_count` atoms satisfying the guard.
    pub fn letter_count(self, atom_count: usize) -> u64 {
        let fixed = (self.pos | self.neg).count_ones() as usize;
        1u64 << (atom_count - fixed)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        GuardDisplay { guard: *self, alphabet }
    }
}

struct GuardDisplay<'a> {
    guard: Guard,
    alphabet: &'a Alphabet,
}

impl fmt::Display for GuardDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, name) in self.alphabet.names().iter().enumerate() {
            if self.guard.pos >> i & 1 == 1 {
                parts.push(name.clone());
            } else if self.guard.neg >> i & 1 == 1 {
                parts.push(format!("!{name}"));
            }
        }
        if parts.is_empty() {
            f.write_str("true")
        } else {
            f.write_str(&parts.join(" && "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutomatonKind {
    /// Accepting states must be visited infinitely often.
    Buchi,
    /// Accepting states are final states of a finite-word automaton.
    Finite,
}

/// Nondeterministic automaton with symbolic (guard-labelled) edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondetAutomaton {
    alphabet: Alphabet,
    kind: AutomatonKind,
    edges: Vec<BTreeMap<Guard, BTreeSet<usize>>>,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
}

impl NondetAutomaton {
    pub fn new(alphabet: Alphabet, kind: AutomatonKind, state_count: usize) -> Self {
        NondetAutomaton {
            alphabet,
            kind,
            edges: vec![BTreeMap::new(); state_count],
            initial: BTreeSet::new(),
            accepting: BTreeSet::new(),
        }
    }

    pub fn add_state(&mut self) -> usize {
        self.edges.push(BTreeMap::new());
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, guard: Guard, to: usize) {
        assert!(to < self.edges.len(), "edge target {to} out of range");
        if guard.is_consistent() {
            self.edges[from].entry(guard).or_default().insert(to);
        }
    }

    pub fn set_initial(&mut self, state: usize) {
        self.initial.insert(state);
    }

    pub fn set_accepting(&mut self, state: usize) {
        self.accepting.insert(state);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> AutomatonKind {
        self.kind
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting.contains(&state)
    }

    pub fn edges(&self, state: usize) -> &BTreeMap<Guard, BTreeSet<usize>> {
        &self.edges[state]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|m| m.values().map(BTreeSet::len).sum::<usize>()).sum()
    }

    /// Graph successors regardless of labels.
    pub fn graph_successors(&self, state: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges[state].values().flatten().copied()
    }

    pub fn successors(&self, state: usize, letter: Valuation) -> impl Iterator<Item = usize> + '_ {
        self.edges[state]
            .iter()
            .filter(move |(g, _)| g.matches(letter))
            .flat_map(|(_, targets)| targets.iter().copied())
    }

    /// Whether the finite word has a run ending in an accepting state.
    pub fn accepts_finite(&self, word: &[Valuation]) -> bool {
        let mut current: BTreeSet<usize> = self.initial.clone();
        for &letter in word {
            current = current.iter().flat_map(|&q| self.successors(q, letter)).collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|q| self.accepting.contains(q))
    }

    /// Büchi membership of the lasso `base[..l] (base[l..])^ω`, decided on
    /// the product of the automaton with the lasso's position cycle.
    pub fn accepts_lasso(&self, base: &[Valuation], loop_start: usize) -> bool {
        let k = base.len();
        assert!(loop_start < k);
        let n = self.state_count();
        // product node = state * k + position
        let node = |q: usize, i: usize| q * k + i;
        let succ_pos = |i: usize| if i + 1 < k { i + 1 } else { loop_start };
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n * k];
        for q in 0..n {
            for i in 0..k {
                for t in self.successors(q, base[i]) {
                    adj[node(q, i)].push(node(t, succ_pos(i)));
                }
            }
        }
        let starts: Vec<usize> = self.initial.iter().map(|&q| node(q, 0)).collect();
        let accepting: Vec<bool> =
            (0..n * k).map(|x| self.accepting.contains(&(x / k))).collect();
        scc::has_accepting_cycle(&adj, &starts, &accepting)
    }

    /// Keep only `keep` states (renumbered in ascending order).
    pub(crate) fn restrict(&self, keep: &[bool], kind: AutomatonKind) -> NondetAutomaton {
        let mut index = vec![usize::MAX; self.state_count()];
        let mut next = 0;
        for (q, &k) in keep.iter().enumerate() {
            if k {
                index[q] = next;
                next += 1;
            }
        }
        let mut out = NondetAutomaton::new(self.alphabet.clone(), kind, next);
        for q in 0..self.state_count() {
            if !keep[q] {
                continue;
            }
            for (guard, targets) in &self.edges[q] {
                for &t in targets {
                    if keep[t] {
                        out.add_edge(index[q], *guard, index[t]);
                    }
                }
            }
        }
        out.initial = self.initial.iter().filter(|&&q| keep[q]).map(|&q| index[q]).collect();
        out.accepting = self.accepting.iter().filter(|&&q| keep[q]).map(|&q| index[q]).collect();
        out
    }
}

/// Deterministic, total automaton over concrete letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetAutomaton {
    alphabet: Alphabet,
    letters: usize,
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
    minimal: bool,
}

impl DetAutomaton {
    /// Build from a complete transition table `table[state][letter]`.
    pub fn from_table(
        alphabet: Alphabet,
        table: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self, AutomataError> {
        if alphabet.len() > MAX_CONCRETE_PROPOSITIONS {
            return Err(AutomataError::TooManyLetters(alphabet.len()));
        }
        let letters = alphabet.letter_count() as usize;
        let n = table.len();
        assert!(initial < n, "initial state out of range");
        assert_eq!(finals.len(), n, "one final flag per state");
        let mut delta = Vec::with_capacity(n * letters);
        for row in &table {
            assert_eq!(row.len(), letters, "transition rows must be total");
            assert!(row.iter().all(|&t| t < n), "transition target out of range");
            delta.extend_from_slice(row);
        }
        Ok(DetAutomaton { alphabet, letters, delta, initial, finals, minimal: false })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn letter_count(&self) -> usize {
        self.letters
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn next(&self, state: usize, letter: Valuation) -> usize {
        self.delta[state * self.letters + letter.0 as usize]
    }

    pub(crate) fn row(&self, state: usize) -> &[usize] {
        &self.delta[state * self.letters..(state + 1) * self.letters]
    }

    pub fn run(&self, word: &[Valuation]) -> usize {
        word.iter().fold(self.initial, |q, &v| self.next(q, v))
    }

    pub fn accepts(&self, word: &[Valuation]) -> bool {
        self.finals[self.run(word)]
    }

    /// States from which no final state is reachable.
    pub fn dead_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for &t in self.row(q) {
                preds[t].push(q);
            }
        }
        let mut alive = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| alive[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !alive[p] {
                    alive[p] = true;
                    stack.push(p);
                }
            }
        }
        alive.into_iter().map(|a| !a).collect()
    }

    /// States numbered in breadth-first order from the initial state,
    /// exploring letters in ascending order; unreachable states dropped.
    pub fn canonical(&self) -> (Vec<Vec<usize>>, Vec<bool>) {
        let mut order = vec![usize::MAX; self.state_count()];
        let mut queue = std::collections::VecDeque::from([self.initial]);
        let mut visited = vec![self.initial];
        order[self.initial] = 0;
        while let Some(q) = queue.pop_front() {
            for &t in self.row(q) {
                if order[t] == usize::MAX {
                    order[t] = visited.len();
                    visited.push(t);
                    queue.push_back(t);
                }
            }
        }
        let table = visited.iter().map(|&q| self.row(q).iter().map(|&t| order[t]).collect()).collect();
        let finals = visited.iter().map(|&q| self.finals[q]).collect();
        (table, finals)
    }

    /// Isomorphism on the reachable parts.
    pub fn is_isomorphic(&self, other: &DetAutomaton) -> bool {
        self.letters == other.letters && self.canonical() == other.canonical()
    }
}
