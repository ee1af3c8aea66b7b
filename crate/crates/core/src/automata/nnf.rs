//! Hash-consed negation normal form over `true, false, literals, &&, ||, X,
//! U, R`.

use std::collections::HashMap;

use crate::ltl::{Alphabet, BinaryOp, Formula, LtlError, UnaryOp};

pub(crate) type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    True,
    False,
    Lit { atom: u32, positive: bool },
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

pub(crate) const TRUE: Id = 0;
pub(crate) const FALSE: Id = 1;

#[derive(Debug)]
pub(crate) struct Nnf {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
}

impl Nnf {
    pub(crate) fn new() -> Self {
        let mut nnf = Nnf { nodes: Vec::new(), index: HashMap::new() };
        nnf.intern(Node::True);
        nnf.intern(Node::False);
        nnf
    }

    pub(crate) fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    fn intern(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    pub(crate) fn lit(&mut self, atom: u32, positive: bool) -> Id {
        self.intern(Node::Lit { atom, positive })
    }

    pub(crate) fn and(&mut self, a: Id, b: Id) -> Id {
        match (a, b) {
            (FALSE, _) | (_, FALSE) => FALSE,
            (TRUE, x) | (x, TRUE) => x,
            _ if a == b => a,
            _ => self.intern(Node::And(a.min(b), a.max(b))),
        }
    }

    pub(crate) fn or(&mut self, a: Id, b: Id) -> Id {
        match (a, b) {
            (TRUE, _) | (_, TRUE) => TRUE,
            (FALSE, x) | (x, FALSE) => x,
            _ if a == b => a,
            _ => self.intern(Node::Or(a.min(b), a.max(b))),
        }
    }

    pub(crate) fn next(&mut self, a: Id) -> Id {
        match a {
            TRUE | FALSE => a,
            _ => self.intern(Node::Next(a)),
        }
    }

    pub(crate) fn until(&mut self, a: Id, b: Id) -> Id {
        match (a, b) {
            (_, TRUE) | (_, FALSE) | (FALSE, _) => b,
            _ if a == b => b,
            _ => self.intern(Node::Until(a, b)),
        }
    }

    pub(crate) fn release(&mut self, a: Id, b: Id) -> Id {
        match (a, b) {
            (_, TRUE) | (_, FALSE) | (TRUE, _) => b,
            _ if a == b => b,
            _ => self.intern(Node::Release(a, b)),
        }
    }

    /// Translate `f` (negated if `negate`) using indices from `alphabet`.
    pub(crate) fn from_formula(&mut self, f: &Formula, alphabet: &Alphabet, negate: bool) -> Result<Id, LtlError> {
        Ok(match f {
            Formula::Atom(name) => {
                let idx = alphabet
                    .index_of(name)
                    .ok_or_else(|| LtlError::AlphabetMismatch(name.clone()))?;
                self.lit(idx as u32, !negate)
            }
            Formula::Const(b) => {
                if *b != negate {
                    TRUE
                } else {
                    FALSE
                }
            }
            Formula::Unary(op, c) => match op {
                UnaryOp::Not => self.from_formula(c, alphabet, !negate)?,
                UnaryOp::Next => {
                    let c = self.from_formula(c, alphabet, negate)?;
                    self.next(c)
                }
                UnaryOp::Finally => {
                    let c = self.from_formula(c, alphabet, negate)?;
                    if negate {
                        self.release(FALSE, c)
                    } else {
                        self.until(TRUE, c)
                    }
                }
                UnaryOp::Globally => {
                    let c = self.from_formula(c, alphabet, negate)?;
                    if negate {
                        self.until(TRUE, c)
                    } else {
                        self.release(FALSE, c)
                    }
                }
            },
            Formula::Binary(op, l, r) => match op {
                BinaryOp::And | BinaryOp::Or => {
                    let a = self.from_formula(l, alphabet, negate)?;
                    let b = self.from_formula(r, alphabet, negate)?;
                    if (*op == BinaryOp::And) != negate {
                        self.and(a, b)
                    } else {
                        self.or(a, b)
                    }
                }
                BinaryOp::Implies => {
                    let a = self.from_formula(l, alphabet, !negate)?;
                    let b = self.from_formula(r, alphabet, negate)?;
                    if negate {
                        self.and(a, b)
                    } else {
                        self.or(a, b)
                    }
                }
                BinaryOp::Iff => {
                    // a <-> b  ==  (a && b) || (!a && !b); negation swaps b's polarity
                    let pa = self.from_formula(l, alphabet, false)?;
                    let na = self.from_formula(l, alphabet, true)?;
                    let pb = self.from_formula(r, alphabet, negate)?;
                    let nb = self.from_formula(r, alphabet, !negate)?;
                    let both = self.and(pa, pb);
                    let neither = self.and(na, nb);
                    self.or(both, neither)
                }
                BinaryOp::Until | BinaryOp::Release => {
                    let a = self.from_formula(l, alphabet, negate)?;
                    let b = self.from_formula(r, alphabet, negate)?;
                    if (*op == BinaryOp::Until) != negate {
                        self.until(a, b)
                    } else {
                        self.release(a, b)
                    }
                }
                BinaryOp::WeakUntil => {
                    // a W b == b R (a || b); !(a W b) == !b U (!a && !b)
                    let a = self.from_formula(l, alphabet, negate)?;
                    let b = self.from_formula(r, alphabet, negate)?;
                    if negate {
                        let both = self.and(a, b);
                        self.until(b, both)
                    } else {
                        let either = self.or(a, b);
                        self.release(b, either)
                    }
                }
            },
        })
    }

    /// Until nodes reachable from `roots`, in ascending id order.
    pub(crate) fn untils_below(&self, roots: &[Id]) -> Vec<Id> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<Id> = roots.to_vec();
        let mut out = Vec::new();
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id as usize], true) {
                continue;
            }
            match self.node(id) {
                Node::True | Node::False | Node::Lit { .. } => {}
                Node::Next(a) => stack.push(a),
                Node::And(a, b) | Node::Or(a, b) | Node::Release(a, b) => stack.extend([a, b]),
                Node::Until(a, b) => {
                    out.push(id);
                    stack.extend([a, b]);
                }
            }
        }
        out.sort_unstable();
        out
    }
}
