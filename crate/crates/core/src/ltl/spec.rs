use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::alphabet::is_identifier;
use super::{subformula_set, Alphabet, Formula};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("`{0}` is declared as both input and output")]
    Overlap(String),
    #[error("variable `{0}` declared twice")]
    Duplicate(String),
    #[error("`{0}` is not a valid variable name")]
    BadName(String),
    #[error("atom `{0}` is not a declared input or output")]
    Undeclared(String),
    #[error("a specification needs at least one guarantee")]
    NoGuarantees,
    #[error("{0}")]
    Alphabet(String),
}

/// An assume-guarantee specification `A -> G` over inputs and outputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spec {
    inputs: Vec<String>,
    outputs: Vec<String>,
    assumptions: Vec<Formula>,
    guarantees: Vec<Formula>,
}

impl Spec {
    pub fn new(
        inputs: Vec<String>,
        outputs: Vec<String>,
        assumptions: Vec<Formula>,
        guarantees: Vec<Formula>,
    ) -> Result<Self, SpecError> {
        let mut seen = HashSet::new();
        for name in &inputs {
            if !is_identifier(name) {
                return Err(SpecError::BadName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(SpecError::Duplicate(name.clone()));
            }
        }
        let mut seen_out = HashSet::new();
        for name in &outputs {
            if !is_identifier(name) {
                return Err(SpecError::BadName(name.clone()));
            }
            if seen.contains(name.as_str()) {
                return Err(SpecError::Overlap(name.clone()));
            }
            if !seen_out.insert(name.as_str()) {
                return Err(SpecError::Duplicate(name.clone()));
            }
        }
        if guarantees.is_empty() {
            return Err(SpecError::NoGuarantees);
        }
        let spec = Spec { inputs, outputs, assumptions, guarantees };
        spec.alphabet()?;
        for f in spec.formulas() {
            if let Some(atom) = f.atoms().into_iter().find(|a| !spec.is_variable(a)) {
                return Err(SpecError::Undeclared(atom.to_string()));
            }
        }
        Ok(spec)
    }

    /// Same variables, new formulas. Callers guarantee the atoms stay within
    /// the declared variables and that guarantees are nonempty.
    pub(crate) fn with_formulas(&self, assumptions: Vec<Formula>, guarantees: Vec<Formula>) -> Spec {
        debug_assert!(!guarantees.is_empty());
        Spec {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            assumptions,
            guarantees,
        }
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn assumptions(&self) -> &[Formula] {
        &self.assumptions
    }

    pub fn guarantees(&self) -> &[Formula] {
        &self.guarantees
    }

    pub fn is_input(&self, name: &str) -> bool {
        self.inputs.iter().any(|n| n == name)
    }

    pub fn is_variable(&self, name: &str) -> bool {
        self.is_input(name) || self.outputs.iter().any(|n| n == name)
    }

    /// Inputs followed by outputs.
    pub fn alphabet(&self) -> Result<Alphabet, SpecError> {
        Alphabet::new(self.inputs.iter().chain(&self.outputs).cloned())
            .map_err(|e| SpecError::Alphabet(e.to_string()))
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.assumptions.iter().chain(&self.guarantees)
    }

    pub fn assumption(&self) -> Formula {
        Formula::conjunction(self.assumptions.iter().cloned())
    }

    pub fn guarantee(&self) -> Formula {
        Formula::conjunction(self.guarantees.iter().cloned())
    }

    /// Conjunction of every assumption and guarantee.
    pub fn conjunction(&self) -> Formula {
        Formula::conjunction(self.formulas().cloned())
    }

    /// `(∧A) -> (∧G)`, or just `∧G` without assumptions.
    pub fn implication(&self) -> Formula {
        if self.assumptions.is_empty() {
            self.guarantee()
        } else {
            Formula::implies(self.assumption(), self.guarantee())
        }
    }

    pub fn subformulas(&self) -> HashSet<&Formula> {
        subformula_set(self.formulas())
    }

    /// Order-insensitive text key identifying the formula sets of the spec.
    pub fn canonical_key(&self) -> String {
        let mut a: Vec<String> = self.assumptions.iter().map(ToString::to_string).collect();
        let mut g: Vec<String> = self.guarantees.iter().map(ToString::to_string).collect();
        a.sort();
        a.dedup();
        g.sort();
        g.dedup();
        format!("A[{}] G[{}]", a.join("; "), g.join("; "))
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "INPUTS: {}", self.inputs.join(" "))?;
        writeln!(f, "OUTPUTS: {}", self.outputs.join(" "))?;
        for a in &self.assumptions {
            writeln!(f, "ASSUMPTION: {a}")?;
        }
        for g in &self.guarantees {
            writeln!(f, "GUARANTEE: {g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validates_partition_and_atoms() {
        let g = vec![parse_formula("G (r -> F g)").unwrap()];
        assert!(Spec::new(names(&["r"]), names(&["g"]), vec![], g.clone()).is_ok());
        assert_eq!(
            Spec::new(names(&["r", "g"]), names(&["g"]), vec![], g.clone()),
            Err(SpecError::Overlap("g".into()))
        );
        assert_eq!(
            Spec::new(names(&["r"]), names(&["h"]), vec![], g),
            Err(SpecError::Undeclared("g".into()))
        );
        assert_eq!(
            Spec::new(names(&["r"]), names(&["g"]), vec![], vec![]),
            Err(SpecError::NoGuarantees)
        );
    }

    #[test]
    fn implication_and_key() {
        let a = parse_formula("G F r").unwrap();
        let g1 = parse_formula("G (r -> F g)").unwrap();
        let g2 = parse_formula("G !g").unwrap();
        let s1 = Spec::new(names(&["r"]), names(&["g"]), vec![a.clone()], vec![g1.clone(), g2.clone()]).unwrap();
        let s2 = Spec::new(names(&["r"]), names(&["g"]), vec![a.clone()], vec![g2, g1]).unwrap();
        assert_eq!(s1.canonical_key(), s2.canonical_key());
        assert_eq!(s1.implication().to_string(), "G (F (r)) -> (G (r -> F (g)) && G (!(g)))");
        let bare = Spec::new(names(&["r"]), names(&["g"]), vec![], vec![parse_formula("g").unwrap()]).unwrap();
        assert_eq!(bare.implication(), parse_formula("g").unwrap());
    }
}
