//! Exact distributions of the number of summands, their moments, and a
//! numerical comparison with the standard normal.
//!
//! Row `n` of a b-bin table counts the integers in `[0, a_{bn})` by number
//! of summands, i.e. decompositions using indices `0..bn`. Row `n` of the
//! factorial table counts `[0, (n+1)!)` in the factorial system.

mod dist;
mod gf;
mod moments;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::StatsError;

pub use dist::{ks_statistic, standardized_distribution, DistributionReport};
pub use gf::{
    bigfloat_to_f64, gf_closed_form_gn, relative_error, table_gf_value, GF_PRECISION,
};
pub use moments::{
    closed_form_moment_slopes, factorial_digit_moments, harmonic, moments, moments_bbin,
    MomentSummary,
};

/// Which counting problem a table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    /// b-bin decompositions with bin width `b >= 3`.
    Bbin(usize),
    /// The factorial number system.
    Factorial,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Bbin(b) => write!(f, "bbin:{b}"),
            System::Factorial => f.write_str("factorial"),
        }
    }
}

impl FromStr for System {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "factorial" || s == "factorial_bins" {
            return Ok(System::Factorial);
        }
        let b = s
            .strip_prefix("bbin:")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| StatsError::UnknownSystem(s.to_string()))?;
        if b < 3 {
            return Err(StatsError::BinWidthTooSmall(b));
        }
        Ok(System::Bbin(b))
    }
}

/// `rows[n][k]`: how many integers of the `n`-th range use exactly `k` summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    system: System,
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    /// Builds rows `0..=n_max` for `system`.
    pub fn build(system: System, n_max: usize) -> Result<Self, StatsError> {
        match system {
            System::Bbin(b) => count_table_bbin(b, n_max),
            System::Factorial => Ok(count_table_factorial(n_max)),
        }
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// `p_{n,0..=n}`.
    pub fn row(&self, n: usize) -> Result<&[BigUint], StatsError> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or(StatsError::RowOutOfRange {
                n,
                n_max: self.n_max(),
            })
    }

    /// `p_{n,k}`, zero for `k > n`.
    pub fn count(&self, n: usize, k: usize) -> Result<BigUint, StatsError> {
        Ok(self.row(n)?.get(k).cloned().unwrap_or_default())
    }

    /// `Σ_k p_{n,k}`.
    pub fn total(&self, n: usize) -> Result<BigUint, StatsError> {
        Ok(self.row(n)?.iter().sum())
    }
}

/// Rows `0..=n_max` of `p_{n,k} = p_{n−1,k} + b·p_{n−1,k−1} − p_{n−2,k−2}`
/// with `p_{0,0} = 1` and every out-of-range entry zero.
pub fn count_table_bbin(b: usize, n_max: usize) -> Result<CountTable, StatsError> {
    if b < 3 {
        return Err(StatsError::BinWidthTooSmall(b));
    }
    let bb = BigUint::from(b);
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    let get = |row: Option<&Vec<BigUint>>, k: Option<usize>| -> BigUint {
        match (row, k) {
            (Some(r), Some(k)) => r.get(k).cloned().unwrap_or_default(),
            _ => BigUint::zero(),
        }
    };
    for n in 1..=n_max {
        let prev = rows.get(n - 1);
        let prev2 = n.checked_sub(2).and_then(|m| rows.get(m));
        let row: Vec<BigUint> = (0..=n)
            .map(|k| {
                let plus = get(prev, Some(k)) + &bb * get(prev, k.checked_sub(1));
                plus - get(prev2, k.checked_sub(2))
            })
            .collect();
        rows.push(row);
    }
    Ok(CountTable {
        system: System::Bbin(b),
        rows,
    })
}

/// Rows `0..=n_max` with `p_{n,k}` the coefficient of `y^k` in `Π_{i=1..n} (1 + i·y)`.
pub fn count_table_factorial(n_max: usize) -> CountTable {
    let mut rows = vec![vec![BigUint::one()]];
    for i in 1..=n_max {
        let prev = &rows[i - 1];
        let mut row = prev.clone();
        row.push(BigUint::zero());
        for k in 1..=i {
            row[k] += &prev[k - 1] * i;
        }
        rows.push(row);
    }
    CountTable {
        system: System::Factorial,
        rows,
    }
}

/// Unsigned Stirling number of the first kind `c(n, k)`; zero when `k > n`.
pub fn stirling_first_kind(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    // row m holds c(m, 0..=m); c(m+1, j) = m·c(m, j) + c(m, j−1)
    let mut row = vec![BigUint::one()];
    for m in 0..n {
        let mut next = vec![BigUint::zero(); m + 2];
        for (j, c) in row.iter().enumerate() {
            next[j] += c * m;
            next[j + 1] += c;
        }
        row = next;
    }
    row.swap_remove(k)
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(num.clone().into(), den.clone().into())
}
