//! Population seeding, crossover and mutation over specifications.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::analysis::is_sat_with;
use crate::automata::Limits;
use crate::ltl::{BinaryOp, Formula, Spec, UnaryOp};

/// Binary operators used to combine sub-formulas.
pub const COMBINE_OPS: [BinaryOp; 5] =
    [BinaryOp::Or, BinaryOp::And, BinaryOp::Until, BinaryOp::Release, BinaryOp::WeakUntil];

const PREFIX_OPS: [UnaryOp; 4] = [UnaryOp::Globally, UnaryOp::Finally, UnaryOp::Next, UnaryOp::Not];

/// Operators allowed between a fresh atom and a mutated operand.
const ATTACH_OPS: [BinaryOp; 4] = [BinaryOp::Until, BinaryOp::WeakUntil, BinaryOp::And, BinaryOp::Or];

/// Candidate new assumptions over the inputs: `G F x` for each input,
/// `G !(x0 && .. && xn)` and `G F (x0 && .. && xn)`, deduplicated.
pub fn assumption_patterns(spec: &Spec) -> Vec<Formula> {
    let inputs: Vec<Formula> = spec.inputs().iter().map(Formula::atom).collect();
    if inputs.is_empty() {
        return Vec::new();
    }
    let all = Formula::conjunction(inputs.iter().cloned());
    let mut out: Vec<Formula> = inputs.iter().map(|x| Formula::globally(Formula::finally(x.clone()))).collect();
    out.push(Formula::globally(Formula::not(all.clone())));
    out.push(Formula::globally(Formula::finally(all)));
    let mut seen = Vec::new();
    out.retain(|f| {
        if seen.contains(f) {
            false
        } else {
            seen.push(f.clone());
            true
        }
    });
    out
}

/// `size` starting specifications: the original extended with each pattern
/// whose assumption set stays satisfiable, then copies of the original.
/// Each entry carries the added pattern, if any.
pub fn seed_population(original: &Spec, size: usize, limits: &Limits) -> Vec<(Spec, Option<Formula>)> {
    let mut out = Vec::new();
    for pattern in assumption_patterns(original) {
        if out.len() == size {
            break;
        }
        if original.assumptions().contains(&pattern) {
            continue;
        }
        let mut assumptions = original.assumptions().to_vec();
        assumptions.push(pattern.clone());
        if !is_sat_with(&Formula::conjunction(assumptions.iter().cloned()), limits).unwrap_or(false) {
            continue;
        }
        out.push((original.with_formulas(assumptions, original.guarantees().to_vec()), Some(pattern)));
    }
    while out.len() < size {
        out.push((original.clone(), None));
    }
    out
}

/// `f[target \ replacement]`; `f` unchanged when `target` does not occur.
pub fn replace_sub(f: &Formula, target: &Formula, replacement: &Formula) -> Formula {
    f.replace_occurrences(target, replacement).unwrap_or_else(|_| f.clone())
}

/// `f[target \ (target op other)]`.
pub fn combine_sub(f: &Formula, target: &Formula, other: &Formula, op: BinaryOp) -> Formula {
    replace_sub(f, target, &Formula::binary(op, target.clone(), other.clone()))
}

/// How one child formula is produced from a formula of each parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossoverChoice {
    TakeFirst,
    TakeSecond,
    /// Replace sub-formula `target` of the first by sub-formula `source` of
    /// the second (indices into their distinct sub-formula lists).
    Replace { target: usize, source: usize },
    Combine { target: usize, source: usize, op: BinaryOp },
}

fn apply_choice(first: &Formula, second: &Formula, choice: &CrossoverChoice) -> Formula {
    match choice {
        CrossoverChoice::TakeFirst => first.clone(),
        CrossoverChoice::TakeSecond => second.clone(),
        CrossoverChoice::Replace { target, source } => {
            let t = first.subformulas()[*target].clone();
            let s = second.subformulas()[*source].clone();
            replace_sub(first, &t, &s)
        }
        CrossoverChoice::Combine { target, source, op } => {
            let t = first.subformulas()[*target].clone();
            let s = second.subformulas()[*source].clone();
            combine_sub(first, &t, &s, *op)
        }
    }
}

fn random_choice<R: Rng + ?Sized>(first: &Formula, second: &Formula, rng: &mut R) -> CrossoverChoice {
    let target = rng.random_range(0..first.subformulas().len());
    let source = rng.random_range(0..second.subformulas().len());
    match rng.random_range(0..4) {
        0 => CrossoverChoice::TakeFirst,
        1 => CrossoverChoice::TakeSecond,
        2 => CrossoverChoice::Replace { target, source },
        _ => CrossoverChoice::Combine { target, source, op: *COMBINE_OPS.choose(rng).expect("nonempty") },
    }
}

/// One child slot per formula of the first list (or of the second when the
/// first is empty); each slot pairs with a uniformly drawn partner.
fn cross_lists<R: Rng + ?Sized>(
    first: &[Formula],
    second: &[Formula],
    rng: &mut R,
    choose: &mut dyn FnMut(&Formula, &Formula, &mut R) -> CrossoverChoice,
) -> Vec<Formula> {
    let mut out: Vec<Formula> = Vec::new();
    if first.is_empty() || second.is_empty() {
        out.extend(first.iter().chain(second).cloned());
    } else {
        for a in first {
            let b = second.choose(rng).expect("nonempty");
            let choice = choose(a, b, rng);
            out.push(apply_choice(a, b, &choice));
        }
    }
    let mut unique: Vec<Formula> = Vec::with_capacity(out.len());
    for f in out {
        if !unique.contains(&f) {
            unique.push(f);
        }
    }
    unique
}

/// Crossover with caller-supplied choices, for reproducing specific children.
pub fn crossover_with<R: Rng + ?Sized>(
    s1: &Spec,
    s2: &Spec,
    rng: &mut R,
    choose: &mut dyn FnMut(&Formula, &Formula, &mut R) -> CrossoverChoice,
) -> Spec {
    let assumptions = cross_lists(s1.assumptions(), s2.assumptions(), rng, choose);
    let guarantees = cross_lists(s1.guarantees(), s2.guarantees(), rng, choose);
    s1.with_formulas(assumptions, guarantees)
}

pub fn crossover<R: Rng + ?Sized>(s1: &Spec, s2: &Spec, rng: &mut R) -> Spec {
    crossover_with(s1, s2, rng, &mut |a, b, r| random_choice(a, b, r))
}

struct Mutator<'a, R: ?Sized> {
    rng: &'a mut R,
    pool: &'a [String],
    rate: f64,
}

impl<R: Rng + ?Sized> Mutator<'_, R> {
    /// Mutate with probability `rate`, otherwise recurse into the children.
    fn maybe(&mut self, f: &Formula) -> Formula {
        if self.rng.random_bool(self.rate) {
            return self.apply(f);
        }
        match f {
            Formula::Atom(_) | Formula::Const(_) => f.clone(),
            Formula::Unary(op, c) => Formula::unary(*op, self.maybe(c)),
            Formula::Binary(op, l, r) => {
                let l = self.maybe(l);
                Formula::binary(*op, l, self.maybe(r))
            }
        }
    }

    fn prefix(&mut self) -> UnaryOp {
        *PREFIX_OPS.choose(self.rng).expect("nonempty")
    }

    fn fresh_atom(&mut self, avoid: Option<&str>) -> Option<Formula> {
        let candidates: Vec<&String> = self.pool.iter().filter(|p| Some(p.as_str()) != avoid).collect();
        candidates.choose(self.rng).map(|p| Formula::atom(p.as_str()))
    }

    /// Apply one rule of the case grammar at the root of `f`.
    fn apply(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(p) => match self.rng.random_range(0..3) {
                0 => Formula::Const(self.rng.random_bool(0.5)),
                1 => match self.fresh_atom(Some(p)) {
                    Some(q) => q,
                    None => Formula::unary(self.prefix(), f.clone()),
                },
                _ => Formula::unary(self.prefix(), f.clone()),
            },
            Formula::Const(b) => match self.rng.random_range(0..3) {
                0 => Formula::Const(!b),
                1 => self.fresh_atom(None).unwrap_or(Formula::Const(!b)),
                _ => Formula::unary(self.prefix(), f.clone()),
            },
            Formula::Unary(op, c) => match self.rng.random_range(0..4) {
                0 => self.maybe(c),
                1 => {
                    let others: Vec<UnaryOp> = PREFIX_OPS.iter().copied().filter(|o| o != op).collect();
                    let new_op = *others.choose(self.rng).expect("nonempty");
                    Formula::unary(new_op, self.maybe(c))
                }
                2 => {
                    let outer = self.prefix();
                    Formula::unary(outer, Formula::unary(*op, self.maybe(c)))
                }
                _ => {
                    let inner = self.maybe(c);
                    let wrapped = Formula::unary(self.prefix(), inner);
                    match self.fresh_atom(None) {
                        Some(p) => Formula::binary(*ATTACH_OPS.choose(self.rng).expect("nonempty"), p, wrapped),
                        None => wrapped,
                    }
                }
            },
            Formula::Binary(op, l, r) => match self.rng.random_range(0..3) {
                0 => {
                    let child = if self.rng.random_bool(0.5) { l } else { r };
                    self.maybe(child)
                }
                1 => {
                    let others: Vec<BinaryOp> = COMBINE_OPS.iter().copied().filter(|o| o != op).collect();
                    let new_op = *others.choose(self.rng).expect("nonempty");
                    let l = self.maybe(l);
                    Formula::binary(new_op, l, self.maybe(r))
                }
                _ => {
                    let new_op = *COMBINE_OPS.choose(self.rng).expect("nonempty");
                    let l = self.maybe(l);
                    let inner = Formula::binary(new_op, l, self.maybe(r));
                    Formula::unary(self.prefix(), inner)
                }
            },
        }
    }
}

/// Mutate each node with probability `rate`; when no node was picked, one
/// node chosen uniformly is mutated instead. New atoms come from `pool`.
pub fn mutate_formula<R: Rng + ?Sized>(f: &Formula, pool: &[String], rate: f64, rng: &mut R) -> Formula {
    let mut m = Mutator { rng, pool, rate: rate.clamp(0.0, 1.0) };
    let out = m.maybe(f);
    if out != *f {
        return out;
    }
    let size = f.size();
    for _ in 0..32 {
        let index = m.rng.random_range(0..size);
        let node = f.nodes()[index].clone();
        let candidate = f.replace_node(index, m.apply(&node));
        if candidate != *f {
            return candidate;
        }
    }
    out
}

/// Replace one uniformly chosen assumption or guarantee by a mutant, using a
/// per-node rate of `1/size`. Assumptions only gain input atoms.
pub fn mutate<R: Rng + ?Sized>(spec: &Spec, rng: &mut R) -> Spec {
    let a = spec.assumptions().len();
    let index = rng.random_range(0..a + spec.guarantees().len());
    let mut assumptions = spec.assumptions().to_vec();
    let mut guarantees = spec.guarantees().to_vec();
    if index < a {
        let f = &assumptions[index];
        let rate = 1.0 / f.size() as f64;
        assumptions[index] = mutate_formula(f, spec.inputs(), rate, rng);
    } else {
        let pool: Vec<String> = spec.inputs().iter().chain(spec.outputs()).cloned().collect();
        let f = &guarantees[index - a];
        let rate = 1.0 / f.size() as f64;
        guarantees[index - a] = mutate_formula(f, &pool, rate, rng);
    }
    spec.with_formulas(assumptions, guarantees)
}
