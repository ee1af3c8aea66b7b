//! Satisfiability, semantic relations between formulas, and realizability.

mod external;
mod game;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::{is_empty, ltl_to_buchi, AutomataError, Limits};
use crate::ltl::{Alphabet, Formula, Spec};

pub use external::{external_realizability, render_tlsf};
pub use game::builtin_bounded_realizability;

pub fn is_sat(f: &Formula) -> Result<bool, AutomataError> {
    is_sat_with(f, &Limits::default())
}

/// Nonemptiness of the Büchi automaton of `f` over its own atoms.
pub fn is_sat_with(f: &Formula, limits: &Limits) -> Result<bool, AutomataError> {
    let alphabet = Alphabet::from_formulas([f]);
    let b = ltl_to_buchi(f, &alphabet, limits)?;
    Ok(!is_empty(&b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Relation {
    Equivalent,
    /// `a` implies `b` but not conversely.
    AStrongerThanB,
    /// `b` implies `a` but not conversely.
    AWeakerThanB,
    Incomparable,
}

impl Relation {
    pub fn flipped(self) -> Relation {
        match self {
            Relation::AStrongerThanB => Relation::AWeakerThanB,
            Relation::AWeakerThanB => Relation::AStrongerThanB,
            other => other,
        }
    }
}

pub fn classify_relation(a: &Formula, b: &Formula) -> Result<Relation, AutomataError> {
    classify_relation_with(a, b, &Limits::default())
}

pub fn classify_relation_with(a: &Formula, b: &Formula, limits: &Limits) -> Result<Relation, AutomataError> {
    let a_not_b = is_sat_with(&Formula::and(a.clone(), Formula::not(b.clone())), limits)?;
    let b_not_a = is_sat_with(&Formula::and(b.clone(), Formula::not(a.clone())), limits)?;
    Ok(match (a_not_b, b_not_a) {
        (false, false) => Relation::Equivalent,
        (false, true) => Relation::AStrongerThanB,
        (true, false) => Relation::AWeakerThanB,
        (true, true) => Relation::Incomparable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "reason", content = "detail")]
pub enum UnknownReason {
    Timeout,
    BoundExhausted,
    BackendFailure(String),
    Resource(String),
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownReason::Timeout => f.write_str("timeout"),
            UnknownReason::BoundExhausted => f.write_str("bound exhausted"),
            UnknownReason::BackendFailure(msg) => write!(f, "backend failure: {msg}"),
            UnknownReason::Resource(msg) => write!(f, "resource limit: {msg}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RealizabilityVerdict {
    Realizable,
    Unrealizable,
    Unknown(UnknownReason),
}

impl RealizabilityVerdict {
    pub fn is_definite(&self) -> bool {
        !matches!(self, RealizabilityVerdict::Unknown(_))
    }
}

impl fmt::Display for RealizabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizabilityVerdict::Realizable => f.write_str("realizable"),
            RealizabilityVerdict::Unrealizable => f.write_str("unrealizable"),
            RealizabilityVerdict::Unknown(reason) => write!(f, "unknown ({reason})"),
        }
    }
}

pub const DEFAULT_MAX_BOUND: u32 = 6;
pub const DEFAULT_EXTERNAL_TIMEOUT: Duration = Duration::from_secs(60);

/// Which realizability checker to use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum BackendConfig {
    #[serde(rename_all = "camelCase")]
    BuiltinBounded { max_bound: u32 },
    #[serde(rename_all = "camelCase")]
    External { command: String, timeout_seconds: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BackendConfigError {
    #[error("backend must be `builtin:N` or `external:COMMAND`, got `{0}`")]
    Syntax(String),
    #[error("bound must be a positive integer")]
    Bound,
    #[error("external command needs a `{{formula}}` or `{{file}}` placeholder")]
    Placeholder,
    #[error("timeout must be positive")]
    Timeout,
}

impl BackendConfig {
    pub fn builtin(max_bound: u32) -> Result<Self, BackendConfigError> {
        if max_bound == 0 {
            return Err(BackendConfigError::Bound);
        }
        Ok(BackendConfig::BuiltinBounded { max_bound })
    }

    pub fn external(command: impl Into<String>, timeout: Duration) -> Result<Self, BackendConfigError> {
        let command = command.into();
        if !command.contains("{formula}") && !command.contains("{file}") {
            return Err(BackendConfigError::Placeholder);
        }
        if timeout.as_secs() == 0 {
            return Err(BackendConfigError::Timeout);
        }
        Ok(BackendConfig::External { command, timeout_seconds: timeout.as_secs() })
    }
}

impl Default for BackendConfig {
    fn default() -> Self {
        BackendConfig::BuiltinBounded { max_bound: DEFAULT_MAX_BOUND }
    }
}

impl FromStr for BackendConfig {
    type Err = BackendConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(bound) = s.strip_prefix("builtin:") {
            let b = bound.trim().parse().map_err(|_| BackendConfigError::Bound)?;
            BackendConfig::builtin(b)
        } else if s == "builtin" {
            Ok(BackendConfig::default())
        } else if let Some(cmd) = s.strip_prefix("external:") {
            BackendConfig::external(cmd.trim().trim_matches('"'), DEFAULT_EXTERNAL_TIMEOUT)
        } else {
            Err(BackendConfigError::Syntax(s.to_string()))
        }
    }
}

impl fmt::Display for BackendConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendConfig::BuiltinBounded { max_bound } => write!(f, "builtin:{max_bound}"),
            BackendConfig::External { command, .. } => write!(f, "external:{command}"),
        }
    }
}

/// Dispatch to the configured backend. Failures become `Unknown`.
pub fn check_realizability(spec: &Spec, cfg: &BackendConfig) -> RealizabilityVerdict {
    check_realizability_with(spec, cfg, &Limits::default())
}

pub fn check_realizability_with(spec: &Spec, cfg: &BackendConfig, limits: &Limits) -> RealizabilityVerdict {
    match cfg {
        BackendConfig::BuiltinBounded { max_bound } => builtin_bounded_realizability(spec, *max_bound, limits),
        BackendConfig::External { command, timeout_seconds } => {
            external_realizability(spec, command, Duration::from_secs(*timeout_seconds))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn satisfiability() {
        assert!(!is_sat(&f("p && !p")).unwrap());
        assert!(is_sat(&f("G F p")).unwrap());
        assert!(!is_sat(&f("G p && F !p")).unwrap());
        assert!(is_sat(&f("true")).unwrap());
        assert!(!is_sat(&f("false")).unwrap());
    }

    #[test]
    fn relations() {
        assert_eq!(classify_relation(&f("G p"), &f("G p")).unwrap(), Relation::Equivalent);
        assert_eq!(classify_relation(&f("G p"), &f("F p")).unwrap(), Relation::AStrongerThanB);
        assert_eq!(classify_relation(&f("F p"), &f("G p")).unwrap(), Relation::AWeakerThanB);
        assert_eq!(classify_relation(&f("p"), &f("q")).unwrap(), Relation::Incomparable);
    }

    #[test]
    fn backend_strings() {
        assert_eq!("builtin:6".parse::<BackendConfig>().unwrap(), BackendConfig::default());
        assert!("builtin:0".parse::<BackendConfig>().is_err());
        assert!("external:strix".parse::<BackendConfig>().is_err());
        let ext: BackendConfig = "external:\"strix -f {formula} --ins {ins} --outs {outs}\"".parse().unwrap();
        assert_eq!(ext.to_string(), "external:strix -f {formula} --ins {ins} --outs {outs}");
        assert!("z3".parse::<BackendConfig>().is_err());
    }
}
