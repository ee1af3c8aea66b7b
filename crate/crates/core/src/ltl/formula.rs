use std::collections::{BTreeSet, HashSet};
use std::fmt;

use indexmap::IndexSet;

use super::LtlError;

/// Unary connectives and temporal operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    Not,
    Next,
    Finally,
    Globally,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 4] = [UnaryOp::Not, UnaryOp::Next, UnaryOp::Finally, UnaryOp::Globally];

    pub fn symbol(self) -> &'static str {
        match self {
            UnaryOp::Not => "!",
            UnaryOp::Next => "X",
            UnaryOp::Finally => "F",
            UnaryOp::Globally => "G",
        }
    }
}

/// Binary connectives and temporal operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    And,
    Or,
    Implies,
    Iff,
    Until,
    WeakUntil,
    Release,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
            BinaryOp::Implies => "->",
            BinaryOp::Iff => "<->",
            BinaryOp::Until => "U",
            BinaryOp::WeakUntil => "W",
            BinaryOp::Release => "R",
        }
    }
}

/// An LTL formula. Values are immutable trees; structural equality is exact
/// tree equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Const(bool),
    Unary(UnaryOp, Box<Formula>),
    Binary(BinaryOp, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn tt() -> Self {
        Formula::Const(true)
    }

    pub fn ff() -> Self {
        Formula::Const(false)
    }

    pub fn unary(op: UnaryOp, f: Formula) -> Self {
        Formula::Unary(op, Box::new(f))
    }

    pub fn binary(op: BinaryOp, lhs: Formula, rhs: Formula) -> Self {
        Formula::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn not(f: Formula) -> Self {
        Self::unary(UnaryOp::Not, f)
    }

    pub fn next(f: Formula) -> Self {
        Self::unary(UnaryOp::Next, f)
    }

    pub fn finally(f: Formula) -> Self {
        Self::unary(UnaryOp::Finally, f)
    }

    pub fn globally(f: Formula) -> Self {
        Self::unary(UnaryOp::Globally, f)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Self::binary(BinaryOp::And, lhs, rhs)
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Self::binary(BinaryOp::Or, lhs, rhs)
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Self::binary(BinaryOp::Implies, lhs, rhs)
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Self::binary(BinaryOp::Iff, lhs, rhs)
    }

    pub fn until(lhs: Formula, rhs: Formula) -> Self {
        Self::binary(BinaryOp::Until, lhs, rhs)
    }

    pub fn weak_until(lhs: Formula, rhs: Formula) -> Self {
        Self::binary(BinaryOp::WeakUntil, lhs, rhs)
    }

    pub fn release(lhs: Formula, rhs: Formula) -> Self {
        Self::binary(BinaryOp::Release, lhs, rhs)
    }

    /// Left-folded conjunction; the empty conjunction is `true`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Self {
        parts.into_iter().reduce(Formula::and).unwrap_or_else(Formula::tt)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Const(_) => Vec::new(),
            Formula::Unary(_, f) => vec![f],
            Formula::Binary(_, l, r) => vec![l, r],
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Const(_) => 1,
            Formula::Unary(_, f) => 1 + f.size(),
            Formula::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.as_str());
            }
            Formula::Const(_) => {}
            Formula::Unary(_, f) => f.collect_atoms(out),
            Formula::Binary(_, l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Structurally distinct sub-trees in pre-order of first occurrence,
    /// starting with `self`.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut seen = IndexSet::new();
        self.collect_subformulas(&mut seen);
        seen.into_iter().collect()
    }

    fn collect_subformulas<'a>(&'a self, seen: &mut IndexSet<&'a Formula>) {
        seen.insert(self);
        for child in self.children() {
            child.collect_subformulas(seen);
        }
    }

    /// Pre-order node list, duplicates included. Node `i` of this list is
    /// the "gene" addressed by index `i` in the mutation operators.
    pub fn nodes(&self) -> Vec<&Formula> {
        let mut out = Vec::with_capacity(self.size());
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            match f {
                Formula::Atom(_) | Formula::Const(_) => {}
                Formula::Unary(_, c) => stack.push(c),
                Formula::Binary(_, l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    /// `self[target \ replacement]`: every occurrence of `target` is replaced.
    pub fn replace_occurrences(
        &self,
        target: &Formula,
        replacement: &Formula,
    ) -> Result<Formula, LtlError> {
        let mut found = false;
        let out = self.replace_rec(target, replacement, &mut found);
        if found {
            Ok(out)
        } else {
            Err(LtlError::TargetNotFound(target.to_string()))
        }
    }

    fn replace_rec(&self, target: &Formula, replacement: &Formula, found: &mut bool) -> Formula {
        if self == target {
            *found = true;
            return replacement.clone();
        }
        match self {
            Formula::Atom(_) | Formula::Const(_) => self.clone(),
            Formula::Unary(op, f) => Formula::unary(*op, f.replace_rec(target, replacement, found)),
            Formula::Binary(op, l, r) => Formula::binary(
                *op,
                l.replace_rec(target, replacement, found),
                r.replace_rec(target, replacement, found),
            ),
        }
    }

    /// Replace the pre-order node at `index` (see [`Formula::nodes`]).
    pub fn replace_node(&self, index: usize, replacement: Formula) -> Formula {
        let mut counter = 0usize;
        let mut replacement = Some(replacement);
        self.replace_node_rec(index, &mut counter, &mut replacement)
    }

    fn replace_node_rec(
        &self,
        index: usize,
        counter: &mut usize,
        replacement: &mut Option<Formula>,
    ) -> Formula {
        let here = *counter;
        *counter += 1;
        if here == index {
            *counter += self.size() - 1;
            return replacement.take().expect("node replaced twice");
        }
        match self {
            Formula::Atom(_) | Formula::Const(_) => self.clone(),
            Formula::Unary(op, f) => Formula::unary(*op, f.replace_node_rec(index, counter, replacement)),
            Formula::Binary(op, l, r) => {
                let l = l.replace_node_rec(index, counter, replacement);
                let r = r.replace_node_rec(index, counter, replacement);
                Formula::binary(*op, l, r)
            }
        }
    }

    /// Rewrite into the core fragment {atom, literal, !, &&, ||, X, U, R}.
    pub fn normalize_to_core(&self) -> Formula {
        use BinaryOp::*;
        use UnaryOp::*;
        match self {
            Formula::Atom(_) | Formula::Const(_) => self.clone(),
            Formula::Unary(op, f) => {
                let f = f.normalize_to_core();
                match op {
                    Not => Formula::not(f),
                    Next => Formula::next(f),
                    Finally => Formula::until(Formula::tt(), f),
                    Globally => Formula::release(Formula::ff(), f),
                }
            }
            Formula::Binary(op, l, r) => {
                let l = l.normalize_to_core();
                let r = r.normalize_to_core();
                match op {
                    And => Formula::and(l, r),
                    Or => Formula::or(l, r),
                    Until => Formula::until(l, r),
                    Release => Formula::release(l, r),
                    Implies => Formula::or(Formula::not(l), r),
                    Iff => Formula::or(
                        Formula::and(l.clone(), r.clone()),
                        Formula::and(Formula::not(l), Formula::not(r)),
                    ),
                    WeakUntil => Formula::release(r.clone(), Formula::or(l, r)),
                }
            }
        }
    }

    pub fn is_core(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Const(_) => true,
            Formula::Unary(op, f) => matches!(op, UnaryOp::Not | UnaryOp::Next) && f.is_core(),
            Formula::Binary(op, l, r) => {
                matches!(op, BinaryOp::And | BinaryOp::Or | BinaryOp::Until | BinaryOp::Release)
                    && l.is_core()
                    && r.is_core()
            }
        }
    }

    /// True when the formula contains no temporal operator.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Const(_) => true,
            Formula::Unary(op, f) => *op == UnaryOp::Not && f.is_propositional(),
            Formula::Binary(op, l, r) => {
                matches!(op, BinaryOp::And | BinaryOp::Or | BinaryOp::Implies | BinaryOp::Iff)
                    && l.is_propositional()
                    && r.is_propositional()
            }
        }
    }
}

/// Set of structurally distinct sub-formulas of several formulas.
pub fn subformula_set<'a, I>(formulas: I) -> HashSet<&'a Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut out = HashSet::new();
    for f in formulas {
        out.extend(f.subformulas());
    }
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => out.write_str(name),
            Formula::Const(true) => out.write_str("true"),
            Formula::Const(false) => out.write_str("false"),
            Formula::Unary(UnaryOp::Not, f) => write!(out, "!({f})"),
            Formula::Unary(op, f) => write!(out, "{} ({f})", op.symbol()),
            Formula::Binary(op, l, r) => {
                write_operand(out, l)?;
                write!(out, " {} ", op.symbol())?;
                write_operand(out, r)
            }
        }
    }
}

fn write_operand(out: &mut fmt::Formatter<'_>, f: &Formula) -> fmt::Result {
    if matches!(f, Formula::Binary(..)) {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    #[test]
    fn subformulas_of_globally_not() {
        let g = f("G !p");
        let sf: Vec<String> = g.subformulas().iter().map(|s| s.to_string()).collect();
        assert_eq!(sf, vec!["G (!(p))", "!(p)", "p"]);
    }

    #[test]
    fn subformulas_collapse_duplicates() {
        let g = f("p && p");
        assert_eq!(g.subformulas(), vec![&g, &Formula::atom("p")]);
        assert_eq!(Formula::atom("p").subformulas(), vec![&Formula::atom("p")]);
    }

    #[test]
    fn replace_examples() {
        let g = f("G !p");
        assert_eq!(g.replace_occurrences(&f("!p"), &f("r")).unwrap(), f("G r"));
        assert_eq!(g.replace_occurrences(&g, &f("q")).unwrap(), f("q"));
        assert_eq!(f("p || p").replace_occurrences(&f("p"), &f("q")).unwrap(), f("q || q"));
        assert!(matches!(
            g.replace_occurrences(&f("q"), &f("r")),
            Err(LtlError::TargetNotFound(_))
        ));
    }

    #[test]
    fn replace_node_by_preorder_index() {
        let g = f("G (r1 -> F g1)");
        // nodes: G, ->, r1, F, g1
        assert_eq!(g.nodes().len(), 5);
        assert_eq!(g.replace_node(3, f("X g1")), f("G (r1 -> X g1)"));
        assert_eq!(g.replace_node(4, f("g2")), f("G (r1 -> F g2)"));
        assert_eq!(g.replace_node(0, f("true")), f("true"));
    }

    #[test]
    fn sizes() {
        assert_eq!(f("p").size(), 1);
        assert_eq!(f("G (p -> X q)").size(), 5);
        assert_eq!(f("!!p").size(), 3);
    }

    #[test]
    fn core_rewrites() {
        assert_eq!(f("F p").normalize_to_core(), f("true U p"));
        assert_eq!(f("G p").normalize_to_core(), f("false R p"));
        assert_eq!(f("p W q").normalize_to_core(), f("q R (p || q)"));
        assert!(f("G (p -> X q) <-> F r").normalize_to_core().is_core());
    }

    #[test]
    fn printing() {
        assert_eq!(Formula::globally(Formula::atom("p")).to_string(), "G (p)");
        assert_eq!(Formula::ff().to_string(), "false");
        assert_eq!(f("G (p -> X q)").to_string(), "G (p -> X (q))");
    }
}
