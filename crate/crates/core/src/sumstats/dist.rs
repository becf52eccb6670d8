use num_traits::{ToPrimitive, Zero};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::StatsError;

use super::{moments, ratio, CountTable};

/// Standardized summand-count distribution of one table row.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionReport {
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    /// `(k − μ_n) / σ_n` for every `k` with `p_{n,k} > 0`, increasing.
    pub points: Vec<f64>,
    pub probabilities: Vec<f64>,
    /// Kolmogorov-Smirnov distance to the standard normal.
    pub ks: f64,
}

impl DistributionReport {
    pub fn max_probability(&self) -> f64 {
        self.probabilities.iter().cloned().fold(0.0, f64::max)
    }
}

/// Standardizes row `n` with its exact mean and variance and measures its
/// distance to the standard normal.
pub fn standardized_distribution(
    table: &CountTable,
    n: usize,
) -> Result<DistributionReport, StatsError> {
    let row = table.row(n)?;
    let total = table.total(n)?;
    let m = moments(table, n)?;
    if m.variance.is_zero() {
        return Err(StatsError::Degenerate(n));
    }
    let mean = m.mean.to_f64().unwrap_or(f64::NAN);
    let std_dev = m.variance.to_f64().unwrap_or(f64::NAN).sqrt();
    let (points, probabilities): (Vec<f64>, Vec<f64>) = row
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let p = ratio(c, &total).to_f64().unwrap_or(f64::NAN);
            ((k as f64 - mean) / std_dev, p)
        })
        .unzip();
    let ks = ks_statistic(&points, &probabilities);
    Ok(DistributionReport {
        n,
        mean,
        std_dev,
        points,
        probabilities,
        ks,
    })
}

/// `sup_x |F(x) − Φ(x)|` for a discrete distribution with increasing
/// support `points`, checked on both sides of every jump.
pub fn ks_statistic(points: &[f64], probabilities: &[f64]) -> f64 {
    let phi = Normal::new(0.0, 1.0).expect("standard normal");
    let mut below = 0.0;
    let mut sup: f64 = 0.0;
    for (&x, &p) in points.iter().zip(probabilities) {
        let target = phi.cdf(x);
        let above = below + p;
        sup = sup.max((below - target).abs()).max((above - target).abs());
        below = above;
    }
    sup.min(1.0)
}
