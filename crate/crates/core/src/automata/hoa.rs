//! Hanoi Omega-Automata text output, for inspection with external tools.

use std::fmt::Write;

use super::{AutomatonKind, DetAutomaton, Guard, NondetAutomaton};
use crate::ltl::Alphabet;

fn header(out: &mut String, states: usize, alphabet: &Alphabet) {
    out.push_str("HOA: v1\n");
    let _ = writeln!(out, "States: {states}");
    let names: Vec<String> = alphabet.names().iter().map(|n| format!("\"{n}\"")).collect();
    let _ = writeln!(out, "AP: {} {}", alphabet.len(), names.join(" "));
}

fn label(guard: Guard, atoms: usize) -> String {
    let mut lits = Vec::new();
    for i in 0..atoms {
        if guard.pos >> i & 1 == 1 {
            lits.push(i.to_string());
        } else if guard.neg >> i & 1 == 1 {
            lits.push(format!("!{i}"));
        }
    }
    if lits.is_empty() {
        "t".to_string()
    } else {
        lits.join("&")
    }
}

pub fn to_hoa(a: &NondetAutomaton) -> String {
    let mut out = String::new();
    header(&mut out, a.state_count(), a.alphabet());
    for q in a.initial() {
        let _ = writeln!(out, "Start: {q}");
    }
    match a.kind() {
        AutomatonKind::Buchi => out.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\n"),
        AutomatonKind::Finite => out.push_str("Acceptance: 1 Fin(0)\n"),
    }
    out.push_str("--BODY--\n");
    for q in 0..a.state_count() {
        let mark = if a.is_accepting(q) { " {0}" } else { "" };
        let _ = writeln!(out, "State: {q}{mark}");
        for (guard, targets) in a.edges(q) {
            for t in targets {
                let _ = writeln!(out, "[{}] {t}", label(*guard, a.alphabet().len()));
            }
        }
    }
    out.push_str("--END--\n");
    out
}

/// Finite-word DFA as HOA; final states carry mark 0.
pub fn det_to_hoa(d: &DetAutomaton) -> String {
    let atoms = d.alphabet().len();
    let mut out = String::new();
    header(&mut out, d.state_count(), d.alphabet());
    let _ = writeln!(out, "Start: {}", d.initial());
    out.push_str("Acceptance: 1 Fin(0)\nproperties: deterministic complete\n--BODY--\n");
    let full = (1u64 << atoms) - 1;
    for q in 0..d.state_count() {
        let mark = if d.is_final(q) { " {0}" } else { "" };
        let _ = writeln!(out, "State: {q}{mark}");
        for (v, &t) in d.row(q).iter().enumerate() {
            let guard = Guard { pos: v as u64, neg: !(v as u64) & full };
            let _ = writeln!(out, "[{}] {t}", label(guard, atoms));
        }
    }
    out.push_str("--END--\n");
    out
}
