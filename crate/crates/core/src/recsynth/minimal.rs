use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::RecurrenceError;
use crate::exactnum::solve_linear;

use super::LinearRecurrence;

/// [`minimal_recurrence`] needs at least `MIN_TERMS_FACTOR · max_order + MIN_TERMS_OFFSET` terms.
pub const MIN_TERMS_FACTOR: usize = 3;
pub const MIN_TERMS_OFFSET: usize = 4;

/// Least-order integer recurrence satisfied by the tail of `terms`.
///
/// For each order `k` the coefficients are solved exactly from the last
/// `2k + 2` terms and then checked backwards through the rest of the list;
/// `valid_from` is the first index from which the relation holds to the end.
/// A candidate is accepted only if it also holds on at least two terms
/// before the solve window, which rules out fits that are accidents of the
/// window. Returns `Ok(None)` when no order up to `max_order` fits.
pub fn minimal_recurrence(
    terms: &[BigInt],
    max_order: usize,
) -> Result<Option<LinearRecurrence>, RecurrenceError> {
    let needed = MIN_TERMS_FACTOR * max_order + MIN_TERMS_OFFSET;
    if terms.len() < needed {
        return Err(RecurrenceError::InsufficientTerms {
            needed,
            got: terms.len(),
        });
    }
    let n = terms.len();
    let q: Vec<BigRational> = terms.iter().cloned().map(BigRational::from_integer).collect();
    for k in 1..=max_order {
        let window = n - (2 * k + 2)..n;
        let a: Vec<Vec<BigRational>> = window
            .clone()
            .map(|m| (1..=k).map(|i| q[m - i].clone()).collect())
            .collect();
        let rhs: Vec<BigRational> = window.clone().map(|m| q[m].clone()).collect();
        let Some(sol) = solve_linear(&a, &rhs) else {
            continue;
        };
        if sol.iter().any(|c| !c.is_integer()) || sol[k - 1].is_zero() {
            continue;
        }
        let coefficients: Vec<BigInt> = sol.iter().map(BigRational::to_integer).collect();
        let Some(rec) = LinearRecurrence::new(coefficients, k) else {
            continue;
        };
        if !rec.holds_on(terms, window.start) {
            continue;
        }
        let mut from = window.start;
        while from > k && rec.predict(terms, from - 1) == terms[from - 1] {
            from -= 1;
        }
        if from + 2 > window.start {
            continue;
        }
        return Ok(rec.with_valid_from(from));
    }
    Ok(None)
}
