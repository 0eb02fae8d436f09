//! Summary statistics for the reports: 95% confidence intervals and
//! Spearman rank correlation with average-rank tie handling.

use serde::Serialize;

use crate::SimsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CiStat {
    pub mean: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Mean with a normal-approximation 95% interval, `mean ± 1.96 · std / √n`
/// (population standard deviation).
pub fn ci95(samples: &[f64]) -> Result<CiStat, SimsError> {
    if samples.len() < 2 {
        return Err(SimsError::NotEnoughSamples(samples.len()));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let half = 1.96 * var.sqrt() / n.sqrt();
    Ok(CiStat {
        mean,
        lo: mean - half,
        hi: mean + half,
    })
}

/// Spearman's rank correlation. Ties receive their average rank.
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64, SimsError> {
    if a.len() != b.len() {
        return Err(SimsError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(SimsError::NotEnoughSamples(a.len()));
    }
    let ra = average_ranks(a);
    let rb = average_ranks(b);
    let n = ra.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in ra.iter().zip(&rb) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    let denom = (va * vb).sqrt();
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(cov / denom)
}

fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].partial_cmp(&xs[j]).expect("rank inputs finite"));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        // 1-based ranks i+1 ..= j+1 averaged over the tie group
        let avg = (i + j + 2) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ci95_constant_samples_have_zero_width() {
        let s = ci95(&[0.4, 0.4, 0.4]).unwrap();
        assert!((s.mean - 0.4).abs() < 1e-12);
        assert!((s.hi - s.lo).abs() < 1e-12);
    }

    #[test]
    fn ci95_two_point_formula() {
        let s = ci95(&[0.0, 1.0]).unwrap();
        assert!((s.mean - 0.5).abs() < 1e-12);
        let half = 0.6929646455628166;
        assert!((s.hi - s.mean - half).abs() < 1e-12);
        assert!((s.mean - s.lo - half).abs() < 1e-12);
    }

    #[test]
    fn ci95_single_sample_is_an_error() {
        assert!(ci95(&[1.0]).is_err());
    }

    #[test]
    fn spearman_identical_and_reversed() {
        let a = [1.0, 2.0, 3.0, 5.0];
        let up = [2.0, 4.0, 6.0, 9.0];
        let down = [9.0, 6.0, 4.0, 2.0];
        assert!((spearman(&a, &up).unwrap() - 1.0).abs() < 1e-12);
        assert!((spearman(&a, &down).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn spearman_textbook_example() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [1.0, 3.0, 2.0, 4.0];
        assert!((spearman(&a, &b).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn spearman_averages_tied_ranks() {
        let a = [1.0, 1.0, 2.0];
        let ranks = average_ranks(&a);
        assert_eq!(ranks, vec![1.5, 1.5, 3.0]);
    }

    #[test]
    fn spearman_length_mismatch() {
        assert!(spearman(&[1.0, 2.0], &[1.0]).is_err());
    }
}
