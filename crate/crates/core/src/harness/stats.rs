//! Effect size and rank correlation.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("both samples must be nonempty")]
    EmptySample,
}

/// Vargha–Delaney Â12: probability that a draw from `a` exceeds a draw from
/// `b`, ties counting one half.
pub fn vargha_delaney_a12(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mut wins = 0.0;
    for x in a {
        for y in b {
            if x > y {
                wins += 1.0;
            } else if x == y {
                wins += 0.5;
            }
        }
    }
    Ok(wins / (a.len() * b.len()) as f64)
}

/// Spearman coefficient between two rankings given as position vectors
/// (`pos[i]` is the rank of item `i`). Rankings of fewer than two items
/// correlate perfectly.
pub fn spearman(pos_a: &[usize], pos_b: &[usize]) -> f64 {
    let n = pos_a.len();
    if n < 2 {
        return 1.0;
    }
    let d2: f64 = pos_a.iter().zip(pos_b).map(|(&x, &y)| (x as f64 - y as f64).powi(2)).sum();
    let n = n as f64;
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a12_examples() {
        assert_eq!(vargha_delaney_a12(&[1.0, 1.0], &[0.0, 0.0]), Ok(1.0));
        assert_eq!(vargha_delaney_a12(&[3.0, 4.0], &[3.0, 4.0]), Ok(0.5));
        let v = vargha_delaney_a12(&[1.0, 2.0, 3.0], &[2.0, 2.0, 2.0]).unwrap();
        assert!((v - 4.5 / 9.0).abs() < 1e-12);
        assert_eq!(vargha_delaney_a12(&[], &[1.0]), Err(StatsError::EmptySample));
    }

    #[test]
    fn spearman_extremes() {
        assert_eq!(spearman(&[0, 1, 2], &[0, 1, 2]), 1.0);
        assert_eq!(spearman(&[0, 1, 2], &[2, 1, 0]), -1.0);
        assert_eq!(spearman(&[0], &[0]), 1.0);
    }
}
