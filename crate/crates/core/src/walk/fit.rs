use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::KRow;
use crate::error::{Error, Result};

/// Fit of `P(w_k in Z) ~ c exp(-alpha k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub alpha: f64,
    pub c: f64,
    pub alpha_ci_low: f64,
    pub alpha_ci_high: f64,
    pub confidence: f64,
    pub bootstrap_reps: usize,
    /// Bootstrap replicates that kept fewer than three nonzero cells.
    pub bootstrap_skipped: usize,
    pub used_k: Vec<usize>,
    /// Steps with zero hits, left out of the log-linear fit.
    pub dropped_k: Vec<usize>,
}

impl DecayFit {
    pub fn ci_excludes_zero(&self) -> bool {
        self.alpha_ci_low > 0.0 || self.alpha_ci_high < 0.0
    }
}

/// Ordinary least squares of `ln p` against `k`; returns `(alpha, c)`.
pub fn fit_log_linear(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(_, p)| *p > 0.0).map(|&(k, p)| (k, p.ln())).collect();
    let mut ks: Vec<f64> = pts.iter().map(|p| p.0).collect();
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    if ks.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 distinct steps with nonzero proportion, got {}",
            ks.len()
        )));
    }
    let n = pts.len() as f64;
    let mk = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(k, y)| (k - mk) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(k, _)| (k - mk) * (k - mk)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mk;
    Ok((-slope, intercept.exp()))
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn determinate(row: &KRow) -> u64 {
    row.n - row.indeterminate
}

/// Least-squares decay fit over the nonzero rows, with a 95% parametric
/// bootstrap interval for `alpha` (each replicate redraws every row's hit
/// count from its fitted binomial).
pub fn fit_decay(rows: &[KRow], bootstrap_reps: usize, seed: u64) -> Result<DecayFit> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| determinate(r) > 0)
        .map(|r| (r.k as f64, r.hits as f64 / determinate(r) as f64))
        .collect();
    let (alpha, c) = fit_log_linear(&points)?;
    let used_k = rows.iter().filter(|r| r.hits > 0).map(|r| r.k).collect();
    let dropped_k = rows.iter().filter(|r| r.hits == 0).map(|r| r.k).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Option<Binomial>> = rows
        .iter()
        .map(|r| {
            let n = determinate(r);
            (n > 0).then(|| Binomial::new(n, r.hits as f64 / n as f64).expect("proportion in [0, 1]"))
        })
        .collect();
    let mut alphas = Vec::with_capacity(bootstrap_reps);
    let mut skipped = 0;
    for _ in 0..bootstrap_reps {
        let resampled: Vec<(f64, f64)> = rows
            .iter()
            .zip(&draws)
            .filter_map(|(r, d)| d.as_ref().map(|d| (r.k as f64, d.sample(&mut rng) as f64 / determinate(r) as f64)))
            .collect();
        match fit_log_linear(&resampled) {
            Ok((a, _)) => alphas.push(a),
            Err(_) => skipped += 1,
        }
    }
    if alphas.is_empty() {
        return Err(Error::InsufficientData("every bootstrap replicate was degenerate".into()));
    }
    alphas.sort_by(f64::total_cmp);
    Ok(DecayFit {
        alpha,
        c,
        alpha_ci_low: quantile(&alphas, 0.025),
        alpha_ci_high: quantile(&alphas, 0.975),
        confidence: 0.95,
        bootstrap_reps,
        bootstrap_skipped: skipped,
        used_k,
        dropped_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(k: usize, hits: u64, n: u64) -> KRow {
        KRow::new(k, hits, n, 0)
    }

    #[test]
    fn noiseless_exponential() {
        let n = 1_000_000_000_000u64;
        let rows: Vec<KRow> = (1..=20)
            .map(|i| {
                let k = 5 * i;
                let p = 0.5 * (-0.1 * k as f64).exp();
                row(k, (p * n as f64).round() as u64, n)
            })
            .collect();
        let fit = fit_decay(&rows, 200, 1).unwrap();
        assert!((fit.alpha - 0.1).abs() < 1e-6, "{}", fit.alpha);
        assert!((fit.c - 0.5).abs() < 1e-6, "{}", fit.c);
        assert!(fit.ci_excludes_zero());
    }

    #[test]
    fn constant_proportion() {
        let rows: Vec<KRow> = (1..=20).map(|i| row(5 * i, 3000, 10_000)).collect();
        let fit = fit_decay(&rows, 1000, 2).unwrap();
        assert!(fit.alpha.abs() < 1e-12);
        assert!(fit.alpha_ci_low < 0.0 && 0.0 < fit.alpha_ci_high);
    }

    #[test]
    fn zero_cells_are_dropped() {
        let rows = vec![row(5, 50, 100), row(10, 20, 100), row(15, 8, 100), row(20, 0, 100)];
        let fit = fit_decay(&rows, 100, 3).unwrap();
        assert_eq!(fit.dropped_k, vec![20]);
        assert_eq!(fit.used_k, vec![5, 10, 15]);
    }

    #[test]
    fn too_few_cells() {
        let rows = vec![row(5, 50, 100), row(10, 20, 100), row(15, 0, 100)];
        assert!(matches!(fit_decay(&rows, 100, 3), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn bootstrap_is_seeded() {
        let rows = vec![row(5, 50, 100), row(10, 20, 100), row(15, 8, 100), row(20, 3, 100)];
        assert_eq!(fit_decay(&rows, 300, 9).unwrap(), fit_decay(&rows, 300, 9).unwrap());
    }
}
