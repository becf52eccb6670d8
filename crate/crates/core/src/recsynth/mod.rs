//! Linear recurrences of f-sequences: synthesis for periodic rules,
//! minimization from terms, exact verification, and a bounded search for
//! multiples with nonnegative recurrence coefficients.

mod elimination;
mod minimal;
mod nonneg;
mod synth;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::IntPoly;
use crate::fseq::FSequence;

pub use elimination::{eliminate_residue, relation_vectors, stride, ResidueElimination};
pub use minimal::{minimal_recurrence, MIN_TERMS_FACTOR, MIN_TERMS_OFFSET};
pub use nonneg::{integer_scaled, nonnegative_multiple_search, NonnegSearch};
pub use synth::{minimize, synthesize_detailed, synthesize_recurrence, Synthesis};

/// `s_n = Σ_{i=1..k} c_i s_{n−i}` for every `n >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearRecurrence {
    coefficients: Vec<BigInt>,
    valid_from: usize,
}

impl LinearRecurrence {
    /// `coefficients[i]` is `c_{i+1}`. The last coefficient must be nonzero
    /// and `valid_from` must be at least the order.
    pub fn new(coefficients: Vec<BigInt>, valid_from: usize) -> Option<Self> {
        if coefficients.last().map_or(true, Zero::is_zero) || valid_from < coefficients.len() {
            return None;
        }
        Some(Self {
            coefficients,
            valid_from,
        })
    }

    /// Reads the recurrence off a monic characteristic polynomial
    /// `x^k − Σ c_i x^{k−i}` with nonzero constant term.
    pub fn from_charpoly(p: &IntPoly, valid_from: usize) -> Option<Self> {
        if !p.is_monic() {
            return None;
        }
        let k = p.degree()?;
        let coefficients = (1..=k).map(|i| -p.coeff(k - i)).collect();
        Self::new(coefficients, valid_from)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    pub fn with_valid_from(mut self, valid_from: usize) -> Option<Self> {
        (valid_from >= self.order()).then(|| {
            self.valid_from = valid_from;
            self
        })
    }

    /// `x^k − Σ c_i x^{k−i}`.
    pub fn charpoly(&self) -> IntPoly {
        let k = self.order();
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        for (i, ci) in self.coefficients.iter().enumerate() {
            c[k - 1 - i] = -ci.clone();
        }
        IntPoly::from_coeffs(c)
    }

    /// `Σ c_i s_{n−i}`; needs `n >= order`.
    pub fn predict(&self, terms: &[BigInt], n: usize) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * &terms[n - 1 - i])
            .sum()
    }

    /// True iff the relation holds at every `n` in `from..terms.len()`.
    pub fn holds_on(&self, terms: &[BigInt], from: usize) -> bool {
        (from.max(self.order())..terms.len()).all(|n| self.predict(terms, n) == terms[n])
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_n =")?;
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c < &BigInt::zero() { "-" } else { "+" };
            let mag = if c < &BigInt::zero() { -c.clone() } else { c.clone() };
            if first {
                f.write_str(if sign == "-" { " -" } else { " " })?;
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "s_(n-{})", i + 1)?;
        }
        write!(f, "  (n >= {})", self.valid_from)
    }
}

pub(crate) fn to_signed(seq: &FSequence, count: usize) -> Vec<BigInt> {
    seq.with_terms(count, |t| t.iter().map(|v| BigInt::from(v.clone())).collect())
}

/// Checks the recurrence exactly for `valid_from <= n <= valid_from + horizon`.
pub fn verify_recurrence(seq: &FSequence, rec: &LinearRecurrence, horizon: usize) -> bool {
    let end = rec.valid_from() + horizon;
    let terms = to_signed(seq, end + 1);
    rec.holds_on(&terms, rec.valid_from())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffunc::{bbin_rule, FRule};

    fn rec(c: &[i64], from: usize) -> LinearRecurrence {
        LinearRecurrence::new(c.iter().map(|&v| BigInt::from(v)).collect(), from).unwrap()
    }

    #[test]
    fn charpoly_round_trip() {
        let r = rec(&[0, 0, 4, 0, 0, -1], 6);
        assert_eq!(r.charpoly(), IntPoly::from_i64s(&[1, 0, 0, -4, 0, 0, 1]));
        assert_eq!(LinearRecurrence::from_charpoly(&r.charpoly(), 6), Some(r));
    }

    #[test]
    fn rejects_degenerate_recurrences() {
        assert!(LinearRecurrence::new(vec![], 0).is_none());
        assert!(LinearRecurrence::new(vec![1.into(), 0.into()], 5).is_none());
        assert!(LinearRecurrence::new(vec![1.into(), 1.into()], 1).is_none());
        assert!(LinearRecurrence::from_charpoly(&IntPoly::from_i64s(&[1, 2]), 3).is_none());
    }

    #[test]
    fn verification_examples() {
        let tri = FSequence::new(bbin_rule(3).unwrap());
        assert!(verify_recurrence(&tri, &rec(&[0, 0, 4, 0, 0, -1], 6), 500));
        let fib = FSequence::new(FRule::constant(1));
        assert!(verify_recurrence(&fib, &rec(&[1, 1], 2), 500));
        assert!(!verify_recurrence(&fib, &rec(&[2], 1), 10));
    }

    #[test]
    fn display() {
        assert_eq!(
            rec(&[0, 0, 4, 0, 0, -1], 6).to_string(),
            "s_n = 4s_(n-3) - s_(n-6)  (n >= 6)"
        );
        assert_eq!(rec(&[-2], 1).to_string(), "s_n = -2s_(n-1)  (n >= 1)");
    }
}
