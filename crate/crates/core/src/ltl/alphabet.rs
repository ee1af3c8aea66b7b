use std::fmt;

use super::LtlError;

/// Upper bound on propositions; valuations are packed into a `u64`.
pub const MAX_PROPOSITIONS: usize = 63;

/// An ordered set of atomic proposition names. Position `i` is bit `i` of a
/// [`Valuation`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(name, "true" | "false" | "X" | "F" | "G" | "U" | "W" | "R")
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, LtlError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Vec::new();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(LtlError::InvalidAlphabet(format!("`{name}` is not a valid atom name")));
            }
            if out.contains(&name) {
                return Err(LtlError::InvalidAlphabet(format!("duplicate atom `{name}`")));
            }
            out.push(name);
        }
        if out.len() > MAX_PROPOSITIONS {
            return Err(LtlError::InvalidAlphabet(format!(
                "{} atoms exceed the supported maximum of {MAX_PROPOSITIONS}",
                out.len()
            )));
        }
        Ok(Alphabet { names: out })
    }

    /// Sorted atoms of the given formulas.
    pub fn from_formulas<'a, I>(formulas: I) -> Self
    where
        I: IntoIterator<Item = &'a super::Formula>,
    {
        let mut names = std::collections::BTreeSet::new();
        for f in formulas {
            names.extend(f.atoms());
        }
        Alphabet { names: names.into_iter().map(str::to_string).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of valuations, `2^|AP|`.
    pub fn letter_count(&self) -> u64 {
        1u64 << self.names.len()
    }

    pub fn valuations(&self) -> impl Iterator<Item = Valuation> {
        (0..self.letter_count()).map(Valuation)
    }

    pub fn valuation_of(&self, true_atoms: &[&str]) -> Result<Valuation, LtlError> {
        let mut bits = 0u64;
        for atom in true_atoms {
            let idx = self
                .index_of(atom)
                .ok_or_else(|| LtlError::AlphabetMismatch(atom.to_string()))?;
            bits |= 1 << idx;
        }
        Ok(Valuation(bits))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

/// A total assignment over an [`Alphabet`], bit `i` holding atom `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Valuation(pub u64);

impl Valuation {
    pub fn holds(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}
