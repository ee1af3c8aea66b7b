//! Lasso words and exact LTL evaluation over them.
//!
//! Truth values of a sub-formula over the `k` positions of a lasso are packed
//! into a `u64` (bit `i` = position `i`). Until/release are evaluated as
//! fixed points with two backward passes over the positions, which is enough
//! because every loop position reaches every other one within one lap.

use super::{Alphabet, BinaryOp, Formula, LtlError, UnaryOp, Valuation};

/// Longest supported lasso base.
pub const MAX_LASSO_LENGTH: usize = 64;

/// A finite representation `base[0..l] (base[l..k])^ω` of an infinite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoWord {
    alphabet: Alphabet,
    base: Vec<Valuation>,
    loop_start: usize,
}

impl LassoWord {
    pub fn new(alphabet: Alphabet, base: Vec<Valuation>, loop_start: usize) -> Result<Self, LtlError> {
        let k = base.len();
        if k == 0 || k > MAX_LASSO_LENGTH {
            return Err(LtlError::InvalidLasso(format!(
                "base length {k} outside 1..={MAX_LASSO_LENGTH}"
            )));
        }
        if loop_start >= k {
            return Err(LtlError::InvalidLasso(format!(
                "loop index {loop_start} not below base length {k}"
            )));
        }
        let limit = alphabet.letter_count();
        if let Some(v) = base.iter().find(|v| v.0 >= limit) {
            return Err(LtlError::InvalidLasso(format!(
                "valuation {:#b} has bits outside the alphabet",
                v.0
            )));
        }
        Ok(LassoWord { alphabet, base, loop_start })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn base(&self) -> &[Valuation] {
        &self.base
    }

    pub fn loop_start(&self) -> usize {
        self.loop_start
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Letter at any position of the induced infinite word.
    pub fn letter_at(&self, position: usize) -> Valuation {
        let k = self.base.len();
        if position < k {
            self.base[position]
        } else {
            let l = self.loop_start;
            self.base[l + (position - l) % (k - l)]
        }
    }
}

/// Truth of `f` on the infinite word induced by `word`.
pub fn evaluate_on_lasso(f: &Formula, word: &LassoWord) -> Result<bool, LtlError> {
    let program = LassoProgram::compile(f, word.alphabet())?;
    let atoms = atom_masks(word.alphabet().len(), word.base());
    let mut scratch = Vec::new();
    Ok(program.eval(&atoms, word.len(), word.loop_start(), &mut scratch))
}

/// Per-atom position masks for a base.
pub(crate) fn atom_masks(atom_count: usize, base: &[Valuation]) -> Vec<u64> {
    let mut masks = vec![0u64; atom_count];
    for (pos, v) in base.iter().enumerate() {
        for (a, mask) in masks.iter_mut().enumerate() {
            if v.holds(a) {
                *mask |= 1 << pos;
            }
        }
    }
    masks
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Atom(usize),
    Const(bool),
    Unary(UnaryOp, usize),
    Binary(BinaryOp, usize, usize),
}

/// A formula compiled to post-order over alphabet indices; the last slot is
/// the root.
#[derive(Clone, Debug)]
pub(crate) struct LassoProgram {
    ops: Vec<Op>,
}

impl LassoProgram {
    pub(crate) fn compile(f: &Formula, alphabet: &Alphabet) -> Result<Self, LtlError> {
        let mut ops = Vec::with_capacity(f.size());
        Self::emit(f, alphabet, &mut ops)?;
        Ok(LassoProgram { ops })
    }

    fn emit(f: &Formula, alphabet: &Alphabet, ops: &mut Vec<Op>) -> Result<usize, LtlError> {
        let op = match f {
            Formula::Atom(name) => Op::Atom(
                alphabet
                    .index_of(name)
                    .ok_or_else(|| LtlError::AlphabetMismatch(name.clone()))?,
            ),
            Formula::Const(b) => Op::Const(*b),
            Formula::Unary(op, c) => Op::Unary(*op, Self::emit(c, alphabet, ops)?),
            Formula::Binary(op, l, r) => {
                let l = Self::emit(l, alphabet, ops)?;
                let r = Self::emit(r, alphabet, ops)?;
                Op::Binary(*op, l, r)
            }
        };
        ops.push(op);
        Ok(ops.len() - 1)
    }

    /// Evaluate at position 0 of the lasso `(k, l)` whose atom masks are given.
    pub(crate) fn eval(&self, atoms: &[u64], k: usize, l: usize, values: &mut Vec<u64>) -> bool {
        debug_assert!(l < k && k <= MAX_LASSO_LENGTH);
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        values.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Atom(a) => atoms[a],
                Op::Const(true) => full,
                Op::Const(false) => 0,
                Op::Unary(UnaryOp::Not, c) => !values[c] & full,
                Op::Unary(UnaryOp::Next, c) => next_mask(values[c], k, l),
                Op::Unary(UnaryOp::Finally, c) => least_until(full, values[c], k, l),
                Op::Unary(UnaryOp::Globally, c) => greatest_release(0, values[c], k, l, full),
                Op::Binary(op, a, b) => {
                    let (x, y) = (values[a], values[b]);
                    match op {
                        BinaryOp::And => x & y,
                        BinaryOp::Or => x | y,
                        BinaryOp::Implies => (!x | y) & full,
                        BinaryOp::Iff => !(x ^ y) & full,
                        BinaryOp::Until => least_until(x, y, k, l),
                        BinaryOp::WeakUntil => greatest_weak_until(x, y, k, l, full),
                        BinaryOp::Release => greatest_release(x, y, k, l, full),
                    }
                }
            };
            values.push(v);
        }
        values.last().is_some_and(|v| v & 1 == 1)
    }
}

#[inline]
fn succ(i: usize, k: usize, l: usize) -> usize {
    if i + 1 < k {
        i + 1
    } else {
        l
    }
}

#[inline]
fn next_mask(m: u64, k: usize, l: usize) -> u64 {
    (m >> 1) | ((m >> l & 1) << (k - 1))
}

/// Least fixed point of `v = y | (x & X v)`.
fn least_until(x: u64, y: u64, k: usize, l: usize) -> u64 {
    let mut v = 0u64;
    for _ in 0..2 {
        for i in (0..k).rev() {
            let bit = (y >> i & 1) | (x >> i & 1 & v >> succ(i, k, l));
            v = (v & !(1 << i)) | (bit << i);
        }
    }
    v
}

/// Greatest fixed point of `v = y | (x & X v)`.
fn greatest_weak_until(x: u64, y: u64, k: usize, l: usize, full: u64) -> u64 {
    let mut v = full;
    for _ in 0..2 {
        for i in (0..k).rev() {
            let bit = (y >> i & 1) | (x >> i & 1 & v >> succ(i, k, l));
            v = (v & !(1 << i)) | (bit << i);
        }
    }
    v
}

/// Greatest fixed point of `v = y & (x | X v)`.
fn greatest_release(x: u64, y: u64, k: usize, l: usize, full: u64) -> u64 {
    let mut v = full;
    for _ in 0..2 {
        for i in (0..k).rev() {
            let bit = (y >> i & 1) & ((x >> i & 1) | (v >> succ(i, k, l) & 1));
            v = (v & !(1 << i)) | (bit << i);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn word(names: &[&str], letters: &[&[&str]], l: usize) -> LassoWord {
        let ab = Alphabet::new(names.iter().copied()).unwrap();
        let base = letters.iter().map(|t| ab.valuation_of(t).unwrap()).collect();
        LassoWord::new(ab, base, l).unwrap()
    }

    fn eval(text: &str, w: &LassoWord) -> bool {
        evaluate_on_lasso(&parse_formula(text).unwrap(), w).unwrap()
    }

    #[test]
    fn response_on_alternating_word() {
        let w = word(&["p", "q"], &[&["p"], &["q"], &["p"], &["q"]], 0);
        assert!(eval("G (p -> X q)", &w));
    }

    #[test]
    fn eventually_never_holds() {
        let w = word(&["p"], &[&[], &[], &[]], 0);
        assert!(!eval("F p", &w));
    }

    #[test]
    fn next_on_constant_word() {
        let w = word(&["p"], &[&["p"], &["p"]], 0);
        assert!(eval("X p", &w));
    }

    #[test]
    fn wrap_around_witness() {
        // p only at position 1, loop back to 1: F p holds from every position.
        let w = word(&["p"], &[&[], &["p"], &[]], 1);
        assert!(eval("G F p", &w));
        assert!(!eval("F G p", &w));
        assert!(eval("!p U p", &w));
        // positions: 0:{} 1:{p} 2:{} 3:{p} 4:{} 5:{p}
        assert!(eval("X X X p", &w));
        assert!(!eval("X X X X p", &w));
        assert!(eval("X X X X X p", &w));
        assert_eq!(w.letter_at(5), w.letter_at(1));
    }

    #[test]
    fn rejects_bad_lassos() {
        let ab = Alphabet::new(["p"]).unwrap();
        assert!(LassoWord::new(ab.clone(), vec![], 0).is_err());
        assert!(LassoWord::new(ab.clone(), vec![Valuation(0)], 1).is_err());
        assert!(LassoWord::new(ab, vec![Valuation(2)], 0).is_err());
    }

    #[test]
    fn alphabet_mismatch() {
        let w = word(&["p"], &[&["p"]], 0);
        assert!(matches!(
            evaluate_on_lasso(&parse_formula("q").unwrap(), &w),
            Err(LtlError::AlphabetMismatch(_))
        ));
    }
}
