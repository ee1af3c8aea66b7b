//! Tableau translation from LTL to a state-based Büchi automaton.
//!
//! A tableau state is a set of NNF obligations. Expanding it yields branches
//! `(guard, next obligations, postponed untils)`; a branch is good for an
//! until when it does not postpone it. The generalized condition (one set per
//! until) is then degeneralized with a level counter.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use super::nnf::{Id, Nnf, Node, TRUE};
use super::{AutomataError, AutomatonKind, Guard, Limits, NondetAutomaton};
use crate::ltl::{Alphabet, Formula};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Branch {
    guard: Guard,
    next: Vec<Id>,
    postponed: Vec<usize>,
}

fn is_subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

fn union<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Branch {
    fn unit(guard: Guard, next: Vec<Id>, postponed: Vec<usize>) -> Self {
        Branch { guard, next, postponed }
    }

    /// `self` accepts at least the words `other` accepts, on at least its letters.
    fn subsumes(&self, other: &Branch) -> bool {
        self.guard.weaker_than(other.guard)
            && is_subset(&self.next, &other.next)
            && is_subset(&self.postponed, &other.postponed)
    }

    fn meet(&self, other: &Branch) -> Option<Branch> {
        let guard = Guard { pos: self.guard.pos | other.guard.pos, neg: self.guard.neg | other.guard.neg };
        guard.is_consistent().then(|| Branch {
            guard,
            next: union(&self.next, &other.next),
            postponed: union(&self.postponed, &other.postponed),
        })
    }
}

/// Sorted, deduplicated branches without the subsumed ones.
fn prune(mut out: Vec<Branch>) -> Vec<Branch> {
    out.sort();
    out.dedup();
    let keep: Vec<bool> =
        (0..out.len()).map(|i| !(0..out.len()).any(|j| j != i && out[j].subsumes(&out[i]))).collect();
    out.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect()
}

struct Tableau<'a> {
    nnf: &'a Nnf,
    until_index: HashMap<Id, usize>,
    cap: usize,
    memo: RefCell<HashMap<Id, Rc<Vec<Branch>>>>,
}

impl Tableau<'_> {
    fn product(&self, a: &[Branch], b: &[Branch]) -> Result<Vec<Branch>, AutomataError> {
        if a.len().saturating_mul(b.len()) > self.cap {
            return Err(AutomataError::StateLimit { stage: "tableau expansion", limit: self.cap });
        }
        Ok(prune(a.iter().flat_map(|x| b.iter().filter_map(move |y| x.meet(y))).collect()))
    }

    /// Minimal one-step branches of a single obligation.
    fn branches(&self, id: Id) -> Result<Rc<Vec<Branch>>, AutomataError> {
        if let Some(b) = self.memo.borrow().get(&id) {
            return Ok(b.clone());
        }
        let out = match self.nnf.node(id) {
            Node::True => vec![Branch::unit(Guard::TRUE, vec![], vec![])],
            Node::False => vec![],
            Node::Lit { atom, positive } => {
                let bit = 1u64 << atom;
                let guard = if positive { Guard { pos: bit, neg: 0 } } else { Guard { pos: 0, neg: bit } };
                vec![Branch::unit(guard, vec![], vec![])]
            }
            Node::And(a, b) => self.product(&self.branches(a)?, &self.branches(b)?)?,
            Node::Or(a, b) => {
                let mut v = self.branches(a)?.to_vec();
                v.extend(self.branches(b)?.iter().cloned());
                prune(v)
            }
            Node::Next(a) => {
                let next = if a == TRUE { vec![] } else { vec![a] };
                vec![Branch::unit(Guard::TRUE, next, vec![])]
            }
            Node::Until(a, b) => {
                let wait = Branch::unit(Guard::TRUE, vec![id], vec![self.until_index[&id]]);
                let mut v = self.branches(b)?.to_vec();
                v.extend(self.product(&self.branches(a)?, &[wait])?);
                prune(v)
            }
            Node::Release(a, b) => {
                let bs = self.branches(b)?;
                let mut v = self.product(&self.branches(a)?, &bs)?;
                v.extend(self.product(&bs, &[Branch::unit(Guard::TRUE, vec![id], vec![])])?);
                prune(v)
            }
        };
        let out = Rc::new(out);
        self.memo.borrow_mut().insert(id, out.clone());
        Ok(out)
    }

    /// Branches of the conjunction of `state`, as products of the
    /// per-obligation branches.
    fn expand(&self, state: &[Id]) -> Result<Vec<Branch>, AutomataError> {
        let mut out = vec![Branch::unit(Guard::TRUE, vec![], vec![])];
        for &id in state {
            out = self.product(&out, &self.branches(id)?)?;
        }
        Ok(out)
    }
}

/// Büchi automaton over `alphabet` accepting exactly the models of `f`.
pub fn ltl_to_buchi(f: &Formula, alphabet: &Alphabet, limits: &Limits) -> Result<NondetAutomaton, AutomataError> {
    let mut nnf = Nnf::new();
    let root = nnf.from_formula(f, alphabet, false)?;
    let untils = nnf.untils_below(&[root]);
    let n = untils.len();
    let tableau = Tableau {
        nnf: &nnf,
        until_index: untils.iter().enumerate().map(|(i, &u)| (u, i)).collect(),
        cap: limits.max_states,
        memo: RefCell::new(HashMap::new()),
    };

    let mut states: Vec<Vec<Id>> = Vec::new();
    let mut state_index: HashMap<Vec<Id>, usize> = HashMap::new();
    let mut expansions: Vec<Option<Vec<Branch>>> = Vec::new();
    let mut intern = |set: Vec<Id>, states: &mut Vec<Vec<Id>>, expansions: &mut Vec<Option<Vec<Branch>>>| -> usize {
        *state_index.entry(set.clone()).or_insert_with(|| {
            states.push(set);
            expansions.push(None);
            states.len() - 1
        })
    };
    let start = if root == TRUE { Vec::new() } else { vec![root] };
    let s0 = intern(start, &mut states, &mut expansions);

    let mut automaton = NondetAutomaton::new(alphabet.clone(), AutomatonKind::Buchi, 0);
    let mut product: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let first = automaton.add_state();
    product.insert((s0, 0), first);
    automaton.set_initial(first);
    queue.push_back((s0, 0));

    while let Some((s, level)) = queue.pop_front() {
        let from = product[&(s, level)];
        if level == n {
            automaton.set_accepting(from);
        }
        if expansions[s].is_none() {
            expansions[s] = Some(tableau.expand(&states[s])?);
        }
        let branches = expansions[s].clone().unwrap_or_default();
        let base = if level == n { 0 } else { level };
        for branch in branches {
            let mut j = base;
            while j < n && branch.postponed.binary_search(&j).is_err() {
                j += 1;
            }
            let t = intern(branch.next.clone(), &mut states, &mut expansions);
            let to = match product.get(&(t, j)) {
                Some(&q) => q,
                None => {
                    if automaton.state_count() >= limits.max_states {
                        return Err(AutomataError::StateLimit { stage: "ltl_to_buchi", limit: limits.max_states });
                    }
                    let q = automaton.add_state();
                    product.insert((t, j), q);
                    queue.push_back((t, j));
                    q
                }
            };
            automaton.add_edge(from, branch.guard, to);
        }
    }
    Ok(automaton)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{parse_formula, Valuation};

    fn buchi(text: &str, atoms: &[&str]) -> NondetAutomaton {
        let ab = Alphabet::new(atoms.iter().copied()).unwrap();
        ltl_to_buchi(&parse_formula(text).unwrap(), &ab, &Limits::default()).unwrap()
    }

    #[test]
    fn true_is_one_accepting_loop() {
        let a = buchi("true", &["p"]);
        assert_eq!(a.state_count(), 1);
        assert!(a.is_accepting(0));
        assert_eq!(a.edges(0).len(), 1);
    }

    #[test]
    fn false_has_no_edges() {
        let a = buchi("p && !p", &["p"]);
        assert_eq!(a.edge_count(), 0);
    }

    #[test]
    fn eventually_accepts_lassos() {
        let a = buchi("F p", &["p"]);
        assert!(a.accepts_lasso(&[Valuation(0), Valuation(1)], 1));
        assert!(!a.accepts_lasso(&[Valuation(0)], 0));
        let gf = buchi("G F p", &["p"]);
        assert!(gf.accepts_lasso(&[Valuation(1), Valuation(0)], 0));
        assert!(!gf.accepts_lasso(&[Valuation(1), Valuation(0)], 1));
    }
}
