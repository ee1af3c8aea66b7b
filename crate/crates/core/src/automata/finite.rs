use std::collections::{HashMap, VecDeque};

use super::scc::live_states;
use super::{AutomataError, AutomatonKind, DetAutomaton, Limits, NondetAutomaton, MAX_CONCRETE_PROPOSITIONS};
use crate::ltl::Valuation;

/// Reinterpret Büchi acceptance as finite-word acceptance, dropping states
/// that are unreachable or whose Büchi language is empty.
pub fn finitize(b: &NondetAutomaton) -> Result<NondetAutomaton, AutomataError> {
    if b.kind() != AutomatonKind::Buchi {
        return Err(AutomataError::WrongKind { expected: "Büchi" });
    }
    Ok(trim_states(b, AutomatonKind::Finite))
}

/// Büchi automaton restricted to reachable states with nonempty language.
pub fn trim(b: &NondetAutomaton) -> Result<NondetAutomaton, AutomataError> {
    if b.kind() != AutomatonKind::Buchi {
        return Err(AutomataError::WrongKind { expected: "Büchi" });
    }
    Ok(trim_states(b, AutomatonKind::Buchi))
}

fn trim_states(b: &NondetAutomaton, kind: AutomatonKind) -> NondetAutomaton {
    let alive = live_states(b);
    let mut keep = vec![false; b.state_count()];
    let mut stack: Vec<usize> = b.initial().iter().copied().filter(|&q| alive[q]).collect();
    for &q in &stack {
        keep[q] = true;
    }
    while let Some(q) = stack.pop() {
        for t in b.graph_successors(q) {
            if alive[t] && !keep[t] {
                keep[t] = true;
                stack.push(t);
            }
        }
    }
    b.restrict(&keep, kind)
}

/// Successor lists per state and concrete letter, indexed `q * letters + v`.
fn letter_successors(n: &NondetAutomaton, letters: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n.state_count() * letters];
    for q in 0..n.state_count() {
        for (guard, targets) in n.edges(q) {
            for v in 0..letters as u64 {
                if guard.matches(Valuation(v)) {
                    out[q * letters + v as usize].extend(targets.iter().copied());
                }
            }
        }
        for list in &mut out[q * letters..(q + 1) * letters] {
            list.sort_unstable();
            list.dedup();
        }
    }
    out
}

/// Block of each state under the coarsest forward bisimulation that
/// respects acceptance, with the block count.
fn bisimulation_blocks(n: &NondetAutomaton, succ: &[Vec<usize>], letters: usize) -> (Vec<usize>, usize) {
    let states = n.state_count();
    let mut block: Vec<usize> = (0..states).map(|q| usize::from(n.is_accepting(q))).collect();
    let mut count = 0;
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(states);
        for q in 0..states {
            // block, then per letter the sorted successor blocks, separated
            let mut sig = vec![block[q]];
            for v in 0..letters {
                let start = sig.len();
                sig.extend(succ[q * letters + v].iter().map(|&t| block[t]));
                sig[start..].sort_unstable();
                let mut w = start;
                for r in start..sig.len() {
                    if r == start || sig[r] != sig[w - 1] {
                        sig[w] = sig[r];
                        w += 1;
                    }
                }
                sig.truncate(w);
                sig.push(usize::MAX);
            }
            let fresh = ids.len();
            next.push(*ids.entry(sig).or_insert(fresh));
        }
        let refined = ids.len();
        block = next;
        if refined == count {
            return (block, count);
        }
        count = refined;
    }
}

/// Per-letter transition table of the bisimulation quotient of an
/// automaton. Language and acceptance marks along runs are preserved.
pub(crate) struct LetterGraph {
    pub letters: usize,
    /// successor blocks, indexed `q * letters + v`
    pub succ: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
    pub initial: Vec<usize>,
}

impl LetterGraph {
    pub(crate) fn reduced(n: &NondetAutomaton) -> Result<Self, AutomataError> {
        let atoms = n.alphabet().len();
        if atoms > MAX_CONCRETE_PROPOSITIONS {
            return Err(AutomataError::TooManyLetters(atoms));
        }
        let letters = 1usize << atoms;
        let full = letter_successors(n, letters);
        let (block, blocks) = bisimulation_blocks(n, &full, letters);
        let mut succ = vec![Vec::new(); blocks * letters];
        let mut done = vec![false; blocks];
        let mut accepting = vec![false; blocks];
        for q in 0..n.state_count() {
            let b = block[q];
            accepting[b] = n.is_accepting(q);
            if done[b] {
                continue;
            }
            done[b] = true;
            for v in 0..letters {
                let mut list: Vec<usize> = full[q * letters + v].iter().map(|&t| block[t]).collect();
                list.sort_unstable();
                list.dedup();
                succ[b * letters + v] = list;
            }
        }
        let mut initial: Vec<usize> = n.initial().iter().map(|&q| block[q]).collect();
        initial.sort_unstable();
        initial.dedup();
        Ok(LetterGraph { letters, succ, accepting, initial })
    }

    pub(crate) fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub(crate) fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.succ[q * self.letters + letter]
    }
}

/// Subset construction over concrete letters, completed with a non-final
/// sink for the empty subset. Bisimilar states are merged first.
pub fn determinize(n: &NondetAutomaton, limits: &Limits) -> Result<DetAutomaton, AutomataError> {
    if n.kind() != AutomatonKind::Finite {
        return Err(AutomataError::WrongKind { expected: "finite" });
    }
    let graph = LetterGraph::reduced(n)?;
    let letters = graph.letters;
    let blocks = graph.state_count();

    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut table: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();

    let initial = graph.initial.clone();
    index.insert(initial.clone(), 0);
    subsets.push(initial);
    queue.push_back(0);
    let mut targets = vec![false; blocks];
    while let Some(s) = queue.pop_front() {
        let mut row = Vec::with_capacity(letters);
        for v in 0..letters {
            let mut touched = Vec::new();
            for &q in &subsets[s] {
                for &t in graph.successors(q, v) {
                    if !targets[t] {
                        targets[t] = true;
                        touched.push(t);
                    }
                }
            }
            for &t in &touched {
                targets[t] = false;
            }
            touched.sort_unstable();
            let id = match index.get(&touched) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= limits.max_states {
                        return Err(AutomataError::StateLimit { stage: "determinize", limit: limits.max_states });
                    }
                    let id = subsets.len();
                    index.insert(touched.clone(), id);
                    subsets.push(touched);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        table.push(row);
    }
    let finals = subsets.iter().map(|s| s.iter().any(|&q| graph.accepting[q])).collect();
    DetAutomaton::from_table(n.alphabet().clone(), table, 0, finals)
}

/// Hopcroft partition refinement on the reachable part. The result is
/// numbered in breadth-first order from the initial state.
pub fn minimize(d: &DetAutomaton) -> DetAutomaton {
    let (table, finals) = d.canonical();
    let n = table.len();
    let letters = d.letter_count();

    let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; letters];
    for (q, row) in table.iter().enumerate() {
        for (c, &t) in row.iter().enumerate() {
            inverse[c][t].push(q);
        }
    }

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0usize; n];
    let accepting: Vec<usize> = (0..n).filter(|&q| finals[q]).collect();
    let rejecting: Vec<usize> = (0..n).filter(|&q| !finals[q]).collect();
    for part in [accepting, rejecting] {
        if !part.is_empty() {
            for &q in &part {
                block_of[q] = blocks.len();
            }
            blocks.push(part);
        }
    }
    let mut work: VecDeque<usize> = (0..blocks.len()).collect();
    let mut marked = vec![false; n];
    while let Some(a) = work.pop_front() {
        let splitter = blocks[a].clone();
        for inv in &inverse {
            let mut hit: Vec<usize> = Vec::new();
            let mut preds = Vec::new();
            for &q in &splitter {
                for &p in &inv[q] {
                    if !marked[p] {
                        marked[p] = true;
                        preds.push(p);
                        hit.push(block_of[p]);
                    }
                }
            }
            hit.sort_unstable();
            hit.dedup();
            for y in hit {
                let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[y].iter().partition(|&&q| marked[q]);
                if outside.is_empty() {
                    continue;
                }
                let new_id = blocks.len();
                let (moved, stay) = if inside.len() <= outside.len() { (inside, outside) } else { (outside, inside) };
                for &q in &moved {
                    block_of[q] = new_id;
                }
                blocks[y] = stay;
                blocks.push(moved);
                // if y is still queued both halves are now queued; otherwise
                // the smaller half suffices as a splitter
                work.push_back(new_id);
            }
            for p in preds {
                marked[p] = false;
            }
        }
    }

    let quotient: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| table[b[0]].iter().map(|&t| block_of[t]).collect())
        .collect();
    let quotient_finals = blocks.iter().map(|b| finals[b[0]]).collect();
    let raw = DetAutomaton::from_table(d.alphabet().clone(), quotient, block_of[0], quotient_finals)
        .expect("alphabet already validated");
    let (table, finals) = raw.canonical();
    let mut out = DetAutomaton::from_table(d.alphabet().clone(), table, 0, finals).expect("alphabet already validated");
    out.minimal = true;
    out
}
