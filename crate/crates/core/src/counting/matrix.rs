use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automata::DetAutomaton;

/// Dense square big-integer matrix, row-major.
pub type Matrix = Vec<Vec<BigUint>>;

/// Transition multiplicities of an automaton together with its initial and
/// final indicator vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    entries: Matrix,
    initial: Vec<bool>,
    finals: Vec<bool>,
}

impl TransferMatrix {
    /// Panics unless `entries` is square and the vectors match its dimension.
    pub fn new(entries: Matrix, initial: Vec<bool>, finals: Vec<bool>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n), "transfer matrix must be square");
        assert_eq!(initial.len(), n);
        assert_eq!(finals.len(), n);
        TransferMatrix { entries, initial, finals }
    }

    pub fn from_u64(entries: &[&[u64]], initial: &[u8], finals: &[u8]) -> Self {
        Self::new(
            entries.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect(),
            initial.iter().map(|&x| x != 0).collect(),
            finals.iter().map(|&x| x != 0).collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn initial(&self) -> &[bool] {
        &self.initial
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    /// Drop states that cannot reach a final state. Counts are unchanged.
    pub fn without_dead_states(&self) -> TransferMatrix {
        let n = self.dimension();
        let mut alive = self.finals.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                if !alive[i] && (0..n).any(|j| alive[j] && !self.entries[i][j].is_zero()) {
                    alive[i] = true;
                    changed = true;
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        TransferMatrix {
            entries: keep.iter().map(|&i| keep.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
            initial: keep.iter().map(|&i| self.initial[i]).collect(),
            finals: keep.iter().map(|&i| self.finals[i]).collect(),
        }
    }
}

pub fn build_transfer_matrix(d: &DetAutomaton) -> TransferMatrix {
    let n = d.state_count();
    let mut counts = vec![vec![0u64; n]; n];
    for q in 0..n {
        for &t in d.row(q) {
            counts[q][t] += 1;
        }
    }
    TransferMatrix {
        entries: counts.into_iter().map(|r| r.into_iter().map(BigUint::from).collect()).collect(),
        initial: (0..n).map(|q| q == d.initial()).collect(),
        finals: (0..n).map(|q| d.is_final(q)).collect(),
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect())
        .collect()
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigUint::zero(); m]; n];
    for i in 0..n {
        for (l, a_il) in a[i].iter().enumerate() {
            if a_il.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += a_il * &b[l][j];
                }
            }
        }
    }
    out
}

/// `T^k` by repeated squaring.
pub fn matrix_power(t: &TransferMatrix, k: u32) -> Matrix {
    let mut result = identity(t.dimension());
    let mut base = t.entries.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = multiply(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = multiply(&base, &base);
        }
    }
    result
}

/// `I · T^k · F`, computed by pushing the initial row vector through `k`
/// sparse vector-matrix products.
pub fn count_prefixes(t: &TransferMatrix, k: u32) -> BigUint {
    let n = t.dimension();
    let mut v: Vec<BigUint> = t.initial.iter().map(|&b| if b { BigUint::one() } else { BigUint::zero() }).collect();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); n];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, tij) in t.entries[i].iter().enumerate() {
                if !tij.is_zero() {
                    next[j] += vi * tij;
                }
            }
        }
        v = next;
    }
    v.into_iter().zip(&t.finals).filter(|(_, &f)| f).map(|(x, _)| x).sum()
}
