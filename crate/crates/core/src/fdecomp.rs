//! f-decompositions: greedy construction, legality, recomposition and an
//! exhaustive search oracle used to cross-check uniqueness.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::DecompError;
use crate::ffunc::FRule;
use crate::fseq::FSequence;

/// Default node cap for [`all_legal_decompositions`].
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_ORACLE_BUDGET`].
pub const ORACLE_BUDGET_ENV: &str = "FDECOMP_ORACLE_BUDGET";

/// `value = Σ a_{indices[i]}`, indices strictly decreasing. Empty means zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub indices: Vec<usize>,
    pub value: BigUint,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The summands `a_{n_i}`, largest first.
    pub fn summands(&self, seq: &FSequence) -> Vec<BigUint> {
        self.indices.iter().map(|&i| seq.term(i)).collect()
    }
}

/// Greedy decomposition: take the largest term not exceeding what is left.
///
/// The remainder after taking `a_m` is below `a_{m−f(m)}`, so the next pick
/// automatically lands at or below `m − f(m) − 1`.
pub fn decompose(seq: &FSequence, x: &BigUint) -> Decomposition {
    let mut indices = Vec::new();
    let mut rest = x.clone();
    while !rest.is_zero() {
        let m = seq.index_of_floor(&rest);
        debug_assert!(
            indices.last().map_or(true, |&prev: &usize| {
                prev.checked_sub(seq.rule().eval(prev) + 1)
                    .is_some_and(|limit| m <= limit)
            }),
            "greedy pick violated the forbidden window"
        );
        rest -= seq.term(m);
        indices.push(m);
    }
    Decomposition {
        indices,
        value: x.clone(),
    }
}

fn check_decreasing(indices: &[usize]) -> Result<(), DecompError> {
    match indices.windows(2).position(|w| w[0] <= w[1]) {
        Some(p) => Err(DecompError::NotDecreasing { position: p + 1 }),
        None => Ok(()),
    }
}

/// True iff each index sits outside the forbidden window of the one above:
/// `n_{i+1} <= n_i − f(n_i) − 1`.
pub fn is_legal(rule: &FRule, indices: &[usize]) -> Result<bool, DecompError> {
    check_decreasing(indices)?;
    Ok(indices.windows(2).all(|w| {
        let f = rule.eval(w[0]);
        w[0].checked_sub(f + 1).is_some_and(|limit| w[1] <= limit)
    }))
}

/// `Σ a_{n_i}`.
pub fn recompose(seq: &FSequence, indices: &[usize]) -> Result<BigUint, DecompError> {
    check_decreasing(indices)?;
    Ok(indices.iter().map(|&i| seq.term(i)).sum())
}

/// Node budget from [`ORACLE_BUDGET_ENV`], or the default.
pub fn oracle_budget_from_env() -> u64 {
    std::env::var(ORACLE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BUDGET)
}

/// Every strictly decreasing legal index list over `0..=max_index` whose
/// terms sum to `x`, found by depth-first search.
///
/// Pruning uses only term sizes: a branch is cut when the next term exceeds
/// what is left or when the largest legal sum still reachable is too small.
pub fn all_legal_decompositions(
    seq: &FSequence,
    x: &BigUint,
    max_index: usize,
    budget: u64,
) -> Result<Vec<Vec<usize>>, DecompError> {
    let rule = seq.rule();
    let terms = seq.terms(max_index + 1);
    // reach[i]: largest legal sum using indices <= i (with reach of "below 0" = 0)
    let mut reach: Vec<BigUint> = Vec::with_capacity(terms.len());
    for i in 0..terms.len() {
        let below = i
            .checked_sub(rule.eval(i) + 1)
            .map_or_else(BigUint::zero, |j| reach[j].clone());
        let with_i = &terms[i] + below;
        let without_i = if i > 0 { reach[i - 1].clone() } else { BigUint::zero() };
        reach.push(with_i.max(without_i));
    }

    let mut search = Search {
        rule,
        terms: &terms,
        reach: &reach,
        budget,
        explored: 0,
        path: Vec::new(),
        found: Vec::new(),
    };
    search.descend(x.clone(), Some(max_index))?;
    Ok(search.found)
}

struct Search<'a> {
    rule: &'a FRule,
    terms: &'a [BigUint],
    reach: &'a [BigUint],
    budget: u64,
    explored: u64,
    path: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Extends `path` with indices `<= limit` summing to `rest`.
    fn descend(&mut self, rest: BigUint, limit: Option<usize>) -> Result<(), DecompError> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(DecompError::BudgetExceeded {
                budget: self.budget,
            });
        }
        if rest.is_zero() {
            self.found.push(self.path.clone());
            return Ok(());
        }
        let Some(limit) = limit else {
            return Ok(());
        };
        if self.reach[limit] < rest {
            return Ok(());
        }
        for i in (0..=limit).rev() {
            if self.reach[i] < rest {
                break;
            }
            if self.terms[i] > rest {
                continue;
            }
            let next_limit = i.checked_sub(self.rule.eval(i) + 1);
            self.path.push(i);
            let r = self.descend(&rest - &self.terms[i], next_limit);
            self.path.pop();
            r?;
        }
        Ok(())
    }
}
