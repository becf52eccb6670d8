use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::StatsError;

use super::CountTable;

/// Exact mean and variance of the number of summands in row `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSummary {
    pub n: usize,
    pub mean: BigRational,
    pub variance: BigRational,
}

/// `μ_n = Σ k p_{n,k} / Σ p_{n,k}` and `σ_n² = Σ k² p_{n,k} / Σ p_{n,k} − μ_n²`.
pub fn moments(table: &CountTable, n: usize) -> Result<MomentSummary, StatsError> {
    let row = table.row(n)?;
    let total = table.total(n)?;
    let (mut m1, mut m2) = (BigInt::zero(), BigInt::zero());
    for (k, c) in row.iter().enumerate() {
        let c = BigInt::from(c.clone());
        m1 += &c * k;
        m2 += c * (k * k);
    }
    let total = BigInt::from(total);
    let mean = BigRational::new(m1, total.clone());
    let variance = BigRational::new(m2, total) - &mean * &mean;
    Ok(MomentSummary { n, mean, variance })
}

/// Same as [`moments`]; kept under the b-bin name used by the CLI docs.
pub fn moments_bbin(table: &CountTable, n: usize) -> Result<MomentSummary, StatsError> {
    moments(table, n)
}

/// Moments of the digit-count model with independent bins `i = 1..=n`,
/// bin `i` used with probability `(i−1)/i`: mean `n − H_n` and variance
/// `Σ (i−1)/i²`.
///
/// Bin `i` of this model is bin `i − 1` of the factorial table, so the
/// result equals `moments(count_table_factorial(_), n − 1)`.
pub fn factorial_digit_moments(n: usize) -> Result<MomentSummary, StatsError> {
    if n == 0 {
        return Err(StatsError::IndexTooSmall);
    }
    let mut mean = BigRational::zero();
    let mut variance = BigRational::zero();
    for i in 1..=n {
        let i = BigInt::from(i);
        let used = BigRational::new(&i - 1, i.clone());
        variance += &used / BigRational::from_integer(i);
        mean += used;
    }
    Ok(MomentSummary { n, mean, variance })
}

/// Linear growth rates of `μ_n` and `σ_n²` for the b-bin tables.
pub fn closed_form_moment_slopes(b: usize) -> Result<(f64, f64), StatsError> {
    if b < 3 {
        return Err(StatsError::BinWidthTooSmall(b));
    }
    let b = b as f64;
    let q = b * b + 2.0 * b - 3.0;
    let r = q.sqrt();
    let mean = (b * b + b - 4.0 + b * r) / (r * (1.0 + b + r));
    let variance = (b * b + b - 4.0) / q.powf(1.5);
    Ok((mean, variance))
}

/// `H_n = Σ_{i=1..n} 1/i`.
pub fn harmonic(n: usize) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), i.into())
    })
}
