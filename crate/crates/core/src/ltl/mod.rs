//! LTL syntax, parsing and printing, sub-formula machinery and exact
//! semantics over lasso words.

mod alphabet;
mod formula;
mod lasso;
mod parse;
mod random;
mod spec;

use thiserror::Error;

pub use alphabet::{Alphabet, Valuation, MAX_PROPOSITIONS};
pub use formula::{subformula_set, BinaryOp, Formula, UnaryOp};
pub use lasso::{evaluate_on_lasso, LassoWord, MAX_LASSO_LENGTH};
pub(crate) use lasso::{atom_masks, LassoProgram};
pub use parse::{parse, parse_formula};
pub use random::random_formula;
pub use spec::{Spec, SpecError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtlError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("sub-formula `{0}` does not occur in the formula")]
    TargetNotFound(String),
    #[error("atom `{0}` is not part of the word's alphabet")]
    AlphabetMismatch(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid lasso word: {0}")]
    InvalidLasso(String),
}
