use rand::Rng;

use super::{BinaryOp, Formula, UnaryOp};

const BINARY_OPS: [BinaryOp; 7] = [
    BinaryOp::And,
    BinaryOp::Or,
    BinaryOp::Implies,
    BinaryOp::Iff,
    BinaryOp::Until,
    BinaryOp::WeakUntil,
    BinaryOp::Release,
];

/// Random formula over `atoms` with at most `depth` operator levels.
///
/// Leaves are atoms (or a boolean literal with small probability); inner
/// nodes pick uniformly among every unary and binary operator.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[String], depth: usize) -> Formula {
    let leaf_bias = if depth == 0 { 1.0 } else { 0.25 };
    if rng.random_bool(leaf_bias) {
        if atoms.is_empty() || rng.random_bool(0.1) {
            return Formula::Const(rng.random_bool(0.5));
        }
        return Formula::Atom(atoms[rng.random_range(0..atoms.len())].clone());
    }
    if rng.random_bool(0.45) {
        let op = UnaryOp::ALL[rng.random_range(0..UnaryOp::ALL.len())];
        Formula::unary(op, random_formula(rng, atoms, depth - 1))
    } else {
        let op = BINARY_OPS[rng.random_range(0..BINARY_OPS.len())];
        let l = random_formula(rng, atoms, depth - 1);
        let r = random_formula(rng, atoms, depth - 1);
        Formula::binary(op, l, r)
    }
}
