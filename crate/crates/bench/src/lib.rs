//! Shared fixtures for the benchmarks.

use specrepair::ltl::parse_formula;
use specrepair::{Formula, Spec};

pub fn formula(text: &str) -> Formula {
    parse_formula(text).expect("fixture formula parses")
}

const GUARANTEES: [&str; 3] = ["G (r1 -> F g1)", "G (r2 -> F g2)", "G (!a -> (!g1 && !g2))"];

fn arbiter_with(assumptions: &[&str]) -> Spec {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
    Spec::new(
        names(&["r1", "r2", "a"]),
        names(&["g1", "g2"]),
        assumptions.iter().map(|s| formula(s)).collect(),
        GUARANTEES.iter().map(|s| formula(s)).collect(),
    )
    .expect("fixture spec is well formed")
}

/// Two-client arbiter that must withhold grants while the resource is busy.
pub fn arbiter() -> Spec {
    arbiter_with(&[])
}

pub fn fair_arbiter() -> Spec {
    arbiter_with(&["G F a"])
}
