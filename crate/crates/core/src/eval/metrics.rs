//! Accuracy metrics for comparing estimated centralities with exact ones.

use crate::error::{Error, Result};

fn same_length(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::Mismatch(format!("lengths {} and {}", a.len(), b.len())))
    }
}

/// Largest entrywise absolute difference; zero for empty input.
pub fn max_abs_error(estimate: &[f64], oracle: &[f64]) -> Result<f64> {
    same_length(estimate, oracle)?;
    Ok(estimate
        .iter()
        .zip(oracle)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Arithmetic mean of entrywise absolute differences; zero for empty input.
pub fn avg_abs_error(estimate: &[f64], oracle: &[f64]) -> Result<f64> {
    same_length(estimate, oracle)?;
    if estimate.is_empty() {
        return Ok(0.0);
    }
    let sum: f64 = estimate.iter().zip(oracle).map(|(a, b)| (a - b).abs()).sum();
    Ok(sum / estimate.len() as f64)
}

/// Number of pairs within runs of equal values in a sorted slice.
fn tied_pairs<T: PartialEq>(sorted: &[T]) -> u64 {
    let mut total = 0u64;
    let mut run = 1u64;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total
}

/// Sorts `values` and returns the number of inversions removed.
fn merge_count(values: &mut [f64], buffer: &mut Vec<f64>) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_count(&mut values[..mid], buffer) + merge_count(&mut values[mid..], buffer);
    buffer.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if values[j] < values[i] {
            buffer.push(values[j]);
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buffer.push(values[i]);
            i += 1;
        }
    }
    buffer.extend_from_slice(&values[i..mid]);
    buffer.extend_from_slice(&values[j..n]);
    values.copy_from_slice(buffer);
    swaps
}

/// Kendall's tau-b between two score vectors over the same items, in
/// `O(n log n)`.
///
/// Ties are accounted for in both vectors. Fails when the lengths differ or
/// either vector is constant.
pub fn kendall_tau(a: &[f64], b: &[f64]) -> Result<f64> {
    same_length(a, b)?;
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::Domain("scores contain NaN".into()));
    }
    let n = a.len() as u64;
    let mut pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));

    let ties_a = tied_pairs(&pairs.iter().map(|p| p.0).collect::<Vec<_>>());
    let ties_joint = tied_pairs(&pairs);
    let mut second: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let discordant = merge_count(&mut second, &mut Vec::with_capacity(pairs.len()));
    let ties_b = tied_pairs(&second);

    let total = n * n.saturating_sub(1) / 2;
    let denom = ((total - ties_a) as f64 * (total - ties_b) as f64).sqrt();
    if denom == 0.0 {
        return Err(Error::Domain("Kendall tau undefined for constant scores".into()));
    }
    let numer = total as f64 - ties_a as f64 - ties_b as f64 + ties_joint as f64 - 2.0 * discordant as f64;
    Ok((numer / denom).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct tau-b over all pairs.
    fn kendall_brute(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len();
        let (mut concordant, mut discordant, mut ties_a, mut ties_b) = (0i64, 0i64, 0i64, 0i64);
        for i in 0..n {
            for j in i + 1..n {
                let da = (a[i] - a[j]).signum() * (a[i] != a[j]) as i32 as f64;
                let db = (b[i] - b[j]).signum() * (b[i] != b[j]) as i32 as f64;
                if da == 0.0 {
                    ties_a += 1;
                }
                if db == 0.0 {
                    ties_b += 1;
                }
                match da * db {
                    p if p > 0.0 => concordant += 1,
                    p if p < 0.0 => discordant += 1,
                    _ => {}
                }
            }
        }
        let total = (n * (n - 1) / 2) as i64;
        (concordant - discordant) as f64 / (((total - ties_a) * (total - ties_b)) as f64).sqrt()
    }

    #[test]
    fn identical_and_reversed() {
        let a = [0.1, 0.5, 0.3, 0.9, 0.7];
        assert_eq!(kendall_tau(&a, &a).unwrap(), 1.0);
        let rev: Vec<f64> = a.iter().map(|x| -x).collect();
        assert_eq!(kendall_tau(&a, &rev).unwrap(), -1.0);
    }

    #[test]
    fn three_items_one_discordant_pair() {
        let tau = kendall_tau(&[3.0, 1.0, 2.0], &[3.0, 2.0, 1.0]).unwrap();
        assert!((tau - 1.0 / 3.0).abs() < 1e-15);
        assert!((kendall_brute(&[3.0, 1.0, 2.0], &[3.0, 2.0, 1.0]) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ties_match_brute_force() {
        let a = [1.0, 1.0, 2.0, 3.0, 3.0, 3.0, 0.5];
        let b = [2.0, 1.0, 1.0, 3.0, 3.0, 0.0, 0.5];
        assert!((kendall_tau(&a, &b).unwrap() - kendall_brute(&a, &b)).abs() < 1e-12);
    }

    #[test]
    fn infinite_scores_are_ordered() {
        let tau = kendall_tau(&[f64::INFINITY, 1.0, 2.0], &[5.0, 1.0, 2.0]).unwrap();
        assert_eq!(tau, 1.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(kendall_tau(&[1.0], &[1.0, 2.0]), Err(Error::Mismatch(_))));
        assert!(matches!(kendall_tau(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::Domain(_))));
        assert!(max_abs_error(&[1.0], &[]).is_err());
        assert!(avg_abs_error(&[1.0], &[]).is_err());
    }

    #[test]
    fn abs_errors() {
        assert_eq!(max_abs_error(&[0.2, 0.4], &[0.2, 0.4]).unwrap(), 0.0);
        let max = max_abs_error(&[0.5, 0.5], &[0.6, 0.45]).unwrap();
        let avg = avg_abs_error(&[0.5, 0.5], &[0.6, 0.45]).unwrap();
        assert!((max - 0.1).abs() < 1e-12);
        assert!((avg - 0.075).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn merge_count_agrees_with_pairwise_count(
            pairs in prop::collection::vec((0u8..6, 0u8..6), 2..60)
        ) {
            let a: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
            let b: Vec<f64> = pairs.iter().map(|p| p.1 as f64).collect();
            let constant = |v: &[f64]| v.iter().all(|x| *x == v[0]);
            prop_assume!(!constant(&a) && !constant(&b));
            let fast = kendall_tau(&a, &b).unwrap();
            let slow = kendall_brute(&a, &b);
            prop_assert!((fast - slow).abs() < 1e-12, "{} vs {}", fast, slow);
        }
    }
}
