//! Repair of unrealisable LTL assume-guarantee specifications.
//!
//! The crate is organised bottom-up:
//!
//! * [`ltl`]: formulas, parsing, lasso semantics and the [`Spec`] type.
//! * [`automata`]: LTL to Büchi translation, finitization, subset
//!   construction and minimisation.
//! * [`counting`]: transfer-matrix prefix counting and the exact lasso
//!   counter.
//! * [`analysis`]: satisfiability, implication classes and realizability
//!   backends.
//! * [`repair`]: the genetic search and its random baseline.
//! * [`harness`]: spec files, repair-set comparison, effect sizes and the
//!   ranking study.

pub mod analysis;
pub mod automata;
pub mod counting;
pub mod harness;
pub mod ltl;
pub mod repair;

pub use analysis::{BackendConfig, Relation, RealizabilityVerdict};
pub use automata::{DetAutomaton, Limits, NondetAutomaton};
pub use counting::TransferMatrix;
pub use ltl::{Alphabet, Formula, LassoWord, Spec, Valuation};
pub use repair::{GaConfig, Individual, RepairReport};
