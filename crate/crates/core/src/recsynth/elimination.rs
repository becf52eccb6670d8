//! Per-residue elimination turning the generating identities
//! `a_m = a_{m−1} + a_{m−1−f(m−1)}` into a relation among terms whose
//! indices share one residue class modulo the stride `b`.
//!
//! Coordinates are offsets below a fixed index `n ≡ r (mod b)`: a vector `e`
//! stands for `Σ_k e[k] · a_{n−k} = 0`. Coordinates that are not multiples
//! of `b` are "bad"; a vector without bad coordinates is a stride relation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::RecurrenceError;
use crate::exactnum::{nullspace_combination, IntPoly, RatVector};
use crate::ffunc::FRule;

/// Smallest multiple `b` of the period with `b >= f(n) + 1` for every `n`.
pub fn stride(rule: &FRule) -> Result<usize, RecurrenceError> {
    let pattern = rule
        .period_pattern()
        .ok_or_else(|| RecurrenceError::UnsupportedRule(rule.to_string()))?;
    let p = pattern.len();
    let need = pattern.iter().max().copied().unwrap_or(0) + 1;
    Ok(need.div_ceil(p).max(1) * p)
}

/// `v_0, …, v_{b²−b}` for residue `r`: `v_i` encodes the generating identity
/// at `a_{n−i}`, with `+1` at `i`, `−1` at `i + 1` and `−1` at
/// `i + 1 + f(n−i−1)`. Each has dimension `b² + 1`.
pub fn relation_vectors(pattern: &[usize], b: usize, r: usize) -> Vec<RatVector> {
    let dim = b * b + 1;
    let p = pattern.len();
    (0..=b * b - b)
        .map(|i| {
            let mut v = RatVector::zeros(dim);
            // residue of n − i − 1 modulo the period (b is a multiple of p)
            let f = pattern[(r + b * b - i - 1) % b % p];
            v[i] += BigRational::one();
            v[i + 1] -= BigRational::one();
            v[i + 1 + f] -= BigRational::one();
            v
        })
        .collect()
}

/// Full trace of the elimination for one residue class.
#[derive(Clone, Debug)]
pub struct ResidueElimination {
    pub stride: usize,
    pub residue: usize,
    /// `w_0..w_{b−1}`; bad coordinates of `w_i` lie strictly between `ib` and `(i+1)b`.
    pub w: Vec<RatVector>,
    /// `u_i`: coordinates `ib+1..(i+1)b−1` of `w_i`.
    pub u: Vec<RatVector>,
    /// Canonical dependency among the `u_i` (coprime integers, first nonzero positive).
    pub lambda: RatVector,
    /// `Σ λ_i T_b^{b−1−i}(w_i)` with `λ` rescaled so its last nonzero entry is 1.
    pub combined: RatVector,
    /// Characteristic polynomial of the residue subsequence in stride units.
    pub stride_poly: IntPoly,
}

/// Runs the elimination for residue `r` modulo stride `b`.
pub fn eliminate_residue(
    rule: &FRule,
    b: usize,
    r: usize,
) -> Result<ResidueElimination, RecurrenceError> {
    let pattern = rule
        .period_pattern()
        .ok_or_else(|| RecurrenceError::UnsupportedRule(rule.to_string()))?;
    if b == 0 || b % pattern.len() != 0 || pattern.iter().any(|&f| f >= b) {
        return Err(RecurrenceError::Synthesis(format!(
            "stride {b} does not fit rule {rule}"
        )));
    }
    let v = relation_vectors(pattern, b, r % b);

    let mut w = vec![v[0].clone()];
    let mut u = vec![v[0].slice(1, b)];
    for i in 1..b {
        let mut wi = w[i - 1].clone();
        // clear coordinates (i−1)b+1 ..= ib−1, pushing them right
        for j in (i - 1) * b + 1..i * b {
            let c = -wi[j].clone();
            wi.add_scaled(&c, &v[j]);
        }
        u.push(wi.slice(i * b + 1, (i + 1) * b));
        w.push(wi);
    }

    let lambda = nullspace_combination(&u).ok_or_else(|| {
        RecurrenceError::Synthesis("u-vectors unexpectedly independent".into())
    })?;
    let last = (0..b)
        .rev()
        .find(|&i| !lambda[i].is_zero())
        .expect("nullspace vectors are nonzero");
    let scale = lambda[last].recip();

    let mut combined = RatVector::zeros(b * b + 1);
    for (i, wi) in w.iter().enumerate() {
        if lambda[i].is_zero() {
            continue;
        }
        let k = &lambda[i] * &scale;
        combined.add_scaled(&k, &wi.shift_right((b - 1 - i) * b));
    }
    if let Some(bad) = (0..combined.dim()).find(|&k| k % b != 0 && !combined[k].is_zero()) {
        return Err(RecurrenceError::Synthesis(format!(
            "residue {r}: coordinate {bad} survived elimination"
        )));
    }
    let stride_poly = stride_polynomial(&combined, b, r)?;
    Ok(ResidueElimination {
        stride: b,
        residue: r,
        w,
        u,
        lambda,
        combined,
        stride_poly,
    })
}

/// Reads `Σ_t e[(j0+t)b] y^{d−t}` off a vector with no bad coordinates.
fn stride_polynomial(e: &RatVector, b: usize, r: usize) -> Result<IntPoly, RecurrenceError> {
    let slots: Vec<&BigRational> = (0..e.dim()).step_by(b).map(|k| &e[k]).collect();
    let j0 = slots
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| RecurrenceError::Synthesis(format!("residue {r}: zero relation")))?;
    let j1 = slots.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    if !slots[j0].is_one() {
        return Err(RecurrenceError::Synthesis(format!(
            "residue {r}: relation is not monic"
        )));
    }
    let d = j1 - j0;
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for t in 0..=d {
        let c = slots[j0 + t];
        if !c.is_integer() {
            return Err(RecurrenceError::Synthesis(format!(
                "residue {r}: non-integral coefficient {c}"
            )));
        }
        coeffs[d - t] = c.to_integer();
    }
    Ok(IntPoly::from_coeffs(coeffs))
}
