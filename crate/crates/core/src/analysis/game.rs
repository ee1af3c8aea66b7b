//! Bounded realizability through safety games over counter abstractions of
//! universal co-Büchi automata.
//!
//! A player wins the bounded game for bound `b` if it can keep every run of
//! the opponent's automaton from visiting accepting states more than `b`
//! times. For the system, the automaton recognises the violations of
//! `A -> G`; for the environment, it recognises `A -> G` itself. Each round
//! the environment picks the inputs first, then the system picks the outputs.

use std::collections::HashMap;

use super::{RealizabilityVerdict, UnknownReason};
use crate::automata::{ltl_to_buchi, trim, AutomataError, LetterGraph, Limits};
use crate::ltl::{Formula, Spec};

const BAD: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Protagonist {
    /// wins iff for every input there is an output staying safe
    System,
    /// wins iff some input makes every output stay safe
    Environment,
}

struct CounterGame<'a> {
    nba: &'a LetterGraph,
    accepting: Vec<u8>,
    letters: usize,
    input_bits: usize,
    bound: u8,
}

type Counters = Vec<(u32, u8)>;

impl<'a> CounterGame<'a> {
    fn new(nba: &'a LetterGraph, spec: &Spec, bound: u32) -> Self {
        CounterGame {
            nba,
            accepting: nba.accepting.iter().map(|&a| a as u8).collect(),
            letters: 1usize << (spec.inputs().len() + spec.outputs().len()),
            input_bits: spec.inputs().len(),
            bound: bound.min(250) as u8,
        }
    }

    fn initial(&self) -> Counters {
        let mut init: Counters = self.nba.initial.iter().map(|&q| (q as u32, self.accepting[q])).collect();
        init.sort_unstable();
        init
    }

    /// Successor counters, or `None` once some run exceeds the bound.
    fn step(&self, g: &Counters, letter: usize, scratch: &mut [i16], touched: &mut Vec<u32>) -> Option<Counters> {
        touched.clear();
        let mut overflow = false;
        'outer: for &(q, c) in g {
            for &t in self.nba.successors(q as usize, letter) {
                let nc = c + self.accepting[t];
                if nc > self.bound {
                    overflow = true;
                    break 'outer;
                }
                if scratch[t] < 0 {
                    touched.push(t as u32);
                }
                scratch[t] = scratch[t].max(nc as i16);
            }
        }
        let out = if overflow {
            None
        } else {
            touched.sort_unstable();
            Some(touched.iter().map(|&t| (t, scratch[t as usize] as u8)).collect())
        };
        for &t in touched.iter() {
            scratch[t as usize] = -1;
        }
        out
    }

    /// Explore the game graph and decide whether the protagonist wins from
    /// the initial position.
    fn solve(&self, who: Protagonist, max_states: usize) -> Result<bool, ()> {
        let mut index: HashMap<Counters, u32> = HashMap::new();
        let mut states: Vec<Counters> = vec![self.initial()];
        index.insert(states[0].clone(), 0);
        let mut edges: Vec<u32> = Vec::new();
        let mut scratch = vec![-1i16; self.nba.state_count()];
        let mut touched = Vec::new();
        let mut i = 0;
        while i < states.len() {
            for v in 0..self.letters {
                let target = match self.step(&states[i], v, &mut scratch, &mut touched) {
                    None => BAD,
                    Some(next) => match index.get(&next) {
                        Some(&id) => id,
                        None => {
                            if states.len() >= max_states {
                                return Err(());
                            }
                            let id = states.len() as u32;
                            index.insert(next.clone(), id);
                            states.push(next);
                            id
                        }
                    },
                };
                edges.push(target);
            }
            i += 1;
        }
        Ok(self.attractor(states.len(), &edges, who))
    }

    fn attractor(&self, n: usize, edges: &[u32], who: Protagonist) -> bool {
        let inputs = 1usize << self.input_bits;
        let outputs = self.letters / inputs;
        // letter = x | y << input_bits, so edge index = g*L + y*inputs + x
        let edge = |g: usize, x: usize, y: usize| edges[g * self.letters + y * inputs + x];
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (e, &t) in edges.iter().enumerate() {
            if t != BAD {
                preds[t as usize].push(e as u32);
            }
        }
        // per (g, x): outputs still leading to safe positions (system), or
        // outputs leading to losing positions (environment)
        let mut count = vec![0u32; n * inputs];
        let mut good_inputs = vec![0u32; n];
        let mut losing = vec![false; n];
        let mut queue = Vec::new();
        for g in 0..n {
            for x in 0..inputs {
                let safe = (0..outputs).filter(|&y| edge(g, x, y) != BAD).count() as u32;
                match who {
                    Protagonist::System => {
                        count[g * inputs + x] = safe;
                        if safe == 0 && !losing[g] {
                            losing[g] = true;
                            queue.push(g);
                        }
                    }
                    Protagonist::Environment => {
                        count[g * inputs + x] = outputs as u32 - safe;
                        if safe as usize == outputs {
                            good_inputs[g] += 1;
                        }
                    }
                }
            }
            if who == Protagonist::Environment && good_inputs[g] == 0 {
                losing[g] = true;
                queue.push(g);
            }
        }
        while let Some(t) = queue.pop() {
            for &e in &preds[t] {
                let e = e as usize;
                let g = e / self.letters;
                if losing[g] {
                    continue;
                }
                let x = (e % self.letters) % inputs;
                let slot = &mut count[g * inputs + x];
                match who {
                    Protagonist::System => {
                        *slot -= 1;
                        if *slot == 0 {
                            losing[g] = true;
                            queue.push(g);
                        }
                    }
                    Protagonist::Environment => {
                        *slot += 1;
                        if *slot == 1 {
                            good_inputs[g] -= 1;
                            if good_inputs[g] == 0 {
                                losing[g] = true;
                                queue.push(g);
                            }
                        }
                    }
                }
            }
        }
        !losing[0]
    }
}

fn trimmed_buchi(f: &Formula, spec: &Spec, limits: &Limits) -> Result<LetterGraph, AutomataError> {
    let alphabet = spec.alphabet().map_err(|e| AutomataError::Ltl(crate::ltl::LtlError::InvalidAlphabet(e.to_string())))?;
    LetterGraph::reduced(&trim(&ltl_to_buchi(f, &alphabet, limits)?)?)
}

/// Two-sided bounded check for bounds `1..=max_bound`. Definite answers are
/// sound; `Unknown` is returned when neither side wins within the bound or
/// a resource limit is hit on both sides.
pub fn builtin_bounded_realizability(spec: &Spec, max_bound: u32, limits: &Limits) -> RealizabilityVerdict {
    let phi = spec.implication();
    let violations = match trimmed_buchi(&Formula::not(phi.clone()), spec, limits) {
        Ok(a) => a,
        Err(e) => return RealizabilityVerdict::Unknown(UnknownReason::Resource(e.to_string())),
    };
    if violations.initial.is_empty() {
        return RealizabilityVerdict::Realizable;
    }
    let models = match trimmed_buchi(&phi, spec, limits) {
        Ok(a) => a,
        Err(e) => return RealizabilityVerdict::Unknown(UnknownReason::Resource(e.to_string())),
    };
    if models.initial.is_empty() {
        return RealizabilityVerdict::Unrealizable;
    }
    let game = |nba, bound| CounterGame::new(nba, spec, bound);
    let mut system_live = true;
    let mut environment_live = true;
    for bound in 1..=max_bound {
        if system_live {
            match game(&violations, bound).solve(Protagonist::System, limits.max_states) {
                Ok(true) => return RealizabilityVerdict::Realizable,
                Ok(false) => {}
                Err(()) => system_live = false,
            }
        }
        if environment_live {
            match game(&models, bound).solve(Protagonist::Environment, limits.max_states) {
                Ok(true) => return RealizabilityVerdict::Unrealizable,
                Ok(false) => {}
                Err(()) => environment_live = false,
            }
        }
        if !system_live && !environment_live {
            return RealizabilityVerdict::Unknown(UnknownReason::Resource(format!(
                "game exceeded {} positions",
                limits.max_states
            )));
        }
    }
    RealizabilityVerdict::Unknown(UnknownReason::BoundExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn spec(ins: &[&str], outs: &[&str], assumptions: &[&str], guarantees: &[&str]) -> Spec {
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        let fs = |v: &[&str]| v.iter().map(|s| parse_formula(s).unwrap()).collect();
        Spec::new(names(ins), names(outs), fs(assumptions), fs(guarantees)).unwrap()
    }

    fn verdict(s: &Spec) -> RealizabilityVerdict {
        builtin_bounded_realizability(s, 6, &Limits::default())
    }

    #[test]
    fn copy_and_predict() {
        assert_eq!(verdict(&spec(&["x"], &["y"], &[], &["G (y <-> x)"])), RealizabilityVerdict::Realizable);
        assert_eq!(verdict(&spec(&["x"], &["y"], &[], &["G (y <-> X x)"])), RealizabilityVerdict::Unrealizable);
        assert_eq!(verdict(&spec(&["x"], &["y"], &[], &["false"])), RealizabilityVerdict::Unrealizable);
        assert_eq!(verdict(&spec(&["x"], &["y"], &[], &["true"])), RealizabilityVerdict::Realizable);
    }

    #[test]
    fn arbiter() {
        let g = ["G (r1 -> F g1)", "G (r2 -> F g2)", "G (!a -> (!g1 && !g2))"];
        let ins = ["r1", "r2", "a"];
        let outs = ["g1", "g2"];
        assert_eq!(verdict(&spec(&ins, &outs, &[], &g)), RealizabilityVerdict::Unrealizable);
        assert_eq!(verdict(&spec(&ins, &outs, &["G F a"], &g)), RealizabilityVerdict::Realizable);
        let mutex = ["G (r1 -> F g1)", "G (r2 -> F g2)", "G (!(g1 && g2))"];
        assert_eq!(verdict(&spec(&ins, &outs, &[], &mutex)), RealizabilityVerdict::Realizable);
    }
}
