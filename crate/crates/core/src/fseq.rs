//! The f-sequence of a rule: `a_0 = 1`, `a_n = a_{n−1} + a_{n−1−f(n−1)}`,
//! where any term with a negative index counts as 1.

use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::ffunc::FRule;

/// Lazily extended, arbitrary-precision f-sequence.
///
/// The cache only ever grows. Reads of materialized terms take a shared
/// lock; extension takes the write lock, so at most one thread extends at a
/// time.
#[derive(Debug)]
pub struct FSequence {
    rule: FRule,
    terms: RwLock<Vec<BigUint>>,
}

impl Clone for FSequence {
    fn clone(&self) -> Self {
        Self {
            rule: self.rule.clone(),
            terms: RwLock::new(self.read().clone()),
        }
    }
}

impl FSequence {
    pub fn new(rule: FRule) -> Self {
        Self {
            rule,
            terms: RwLock::new(vec![BigUint::one()]),
        }
    }

    pub fn rule(&self) -> &FRule {
        &self.rule
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Vec<BigUint>> {
        self.terms.read().unwrap_or_else(|e| e.into_inner())
    }

    /// Number of terms currently cached.
    pub fn materialized(&self) -> usize {
        self.read().len()
    }

    /// Makes sure `a_0..=a_n` are cached.
    pub fn ensure(&self, n: usize) {
        if n < self.read().len() {
            return;
        }
        let mut terms = self.terms.write().unwrap_or_else(|e| e.into_inner());
        let target = (n + 1).max(terms.len() * 2);
        let missing = target - terms.len();
        terms.reserve(missing);
        while terms.len() < target {
            let m = terms.len() - 1;
            let back = m.checked_sub(self.rule.eval(m));
            let next = match back {
                Some(j) => &terms[m] + &terms[j],
                None => &terms[m] + BigUint::one(),
            };
            terms.push(next);
        }
    }

    /// `a_n`.
    pub fn term(&self, n: usize) -> BigUint {
        self.ensure(n);
        self.read()[n].clone()
    }

    /// `a_0..a_{count−1}`.
    pub fn terms(&self, count: usize) -> Vec<BigUint> {
        if count == 0 {
            return Vec::new();
        }
        self.ensure(count - 1);
        self.read()[..count].to_vec()
    }

    /// Runs `f` on a borrowed prefix `a_0..a_{count−1}` without cloning.
    pub fn with_terms<R>(&self, count: usize, f: impl FnOnce(&[BigUint]) -> R) -> R {
        if count > 0 {
            self.ensure(count - 1);
        }
        f(&self.read()[..count])
    }

    /// The unique `m` with `a_m <= x < a_{m+1}`, for `x >= 1`.
    pub fn index_of_floor(&self, x: &BigUint) -> usize {
        assert!(*x >= BigUint::one(), "index_of_floor needs x >= 1");
        loop {
            {
                let terms = self.read();
                if terms.last().is_some_and(|last| last > x) {
                    // first index whose term exceeds x, minus one
                    return terms.partition_point(|t| t <= x) - 1;
                }
            }
            let len = self.materialized();
            self.ensure(len);
        }
    }
}

/// `a_n` for `seq`.
pub fn term(seq: &FSequence, n: usize) -> BigUint {
    seq.term(n)
}

pub fn index_of_floor(seq: &FSequence, x: &BigUint) -> usize {
    seq.index_of_floor(x)
}
