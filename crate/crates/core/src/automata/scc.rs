//! Büchi emptiness through strongly connected components.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{AutomatonKind, NondetAutomaton};

/// States lying on a cycle through an accepting state.
fn cycling_accepting(adj: &[Vec<usize>], accepting: &[bool]) -> Vec<bool> {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(adj.len(), 0);
    for _ in 0..adj.len() {
        graph.add_node(());
    }
    for (from, targets) in adj.iter().enumerate() {
        for &to in targets {
            graph.add_edge(NodeIndex::new(from), NodeIndex::new(to), ());
        }
    }
    let mut good = vec![false; adj.len()];
    for component in tarjan_scc(&graph) {
        let nontrivial = component.len() > 1 || {
            let q = component[0].index();
            adj[q].contains(&q)
        };
        if nontrivial {
            for q in component {
                good[q.index()] = accepting[q.index()];
            }
        }
    }
    good
}

/// States from which some accepting cycle is reachable.
pub(crate) fn live(adj: &[Vec<usize>], accepting: &[bool]) -> Vec<bool> {
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); adj.len()];
    for (from, targets) in adj.iter().enumerate() {
        for &to in targets {
            preds[to].push(from);
        }
    }
    let mut alive = cycling_accepting(adj, accepting);
    let mut stack: Vec<usize> = (0..adj.len()).filter(|&q| alive[q]).collect();
    while let Some(q) = stack.pop() {
        for &p in &preds[q] {
            if !alive[p] {
                alive[p] = true;
                stack.push(p);
            }
        }
    }
    alive
}

pub(crate) fn has_accepting_cycle(adj: &[Vec<usize>], starts: &[usize], accepting: &[bool]) -> bool {
    let alive = live(adj, accepting);
    starts.iter().any(|&s| alive[s])
}

fn adjacency(a: &NondetAutomaton) -> Vec<Vec<usize>> {
    (0..a.state_count())
        .map(|q| {
            let mut t: Vec<usize> = a.graph_successors(q).collect();
            t.sort_unstable();
            t.dedup();
            t
        })
        .collect()
}

/// States whose Büchi language is nonempty.
pub fn live_states(a: &NondetAutomaton) -> Vec<bool> {
    debug_assert_eq!(a.kind(), AutomatonKind::Buchi);
    let accepting: Vec<bool> = (0..a.state_count()).map(|q| a.is_accepting(q)).collect();
    live(&adjacency(a), &accepting)
}

/// Whether the Büchi automaton accepts no infinite word.
pub fn is_empty(a: &NondetAutomaton) -> bool {
    let alive = live_states(a);
    !a.initial().iter().any(|&q| alive[q])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Guard;
    use crate::ltl::Alphabet;

    #[test]
    fn accepting_state_needs_a_cycle() {
        let ab = Alphabet::new(["p"]).unwrap();
        let mut a = NondetAutomaton::new(ab, AutomatonKind::Buchi, 2);
        a.set_initial(0);
        a.set_accepting(1);
        a.add_edge(0, Guard::TRUE, 1);
        assert!(is_empty(&a));
        a.add_edge(1, Guard::TRUE, 0);
        assert!(!is_empty(&a));
        assert_eq!(live_states(&a), vec![true, true]);
    }
}
