//! Exact feasibility of `A x <= b` over the rationals, `x` unrestricted in sign.
//!
//! Two independent engines: Fourier-Motzkin elimination (small systems) and
//! a phase-one simplex with Bland's rule. Both return a witness point when
//! the system is feasible.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Fourier-Motzkin is attempted only up to this many variables.
pub const FM_VARIABLE_LIMIT: usize = 40;

/// Abandon Fourier-Motzkin once an intermediate system exceeds this many rows.
pub const FM_ROW_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    FourierMotzkin,
    Simplex,
}

/// Row-count blowup during Fourier-Motzkin elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowLimitExceeded;

/// Checks that `x` satisfies every row of `A x <= b`.
pub fn satisfies(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) -> bool {
    a.iter().zip(b).all(|(row, bound)| {
        let lhs: BigRational = row.iter().zip(x).map(|(c, v)| c * v).sum();
        lhs <= *bound
    })
}

/// Decides feasibility, preferring Fourier-Motzkin for small systems and
/// falling back to simplex when it is too large or blows up.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> (Feasibility, Engine) {
    let nvars = a.first().map_or(0, Vec::len);
    if nvars <= FM_VARIABLE_LIMIT {
        if let Ok(res) = fourier_motzkin(a, b, FM_ROW_LIMIT) {
            return (res, Engine::FourierMotzkin);
        }
    }
    (simplex_feasible(a, b), Engine::Simplex)
}

type Row = (Vec<BigRational>, BigRational);

/// Scales a row so that its first nonzero coefficient is ±1.
fn canonical(mut coeffs: Vec<BigRational>, mut bound: BigRational) -> Row {
    if let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
        for c in coeffs.iter_mut() {
            *c /= &lead;
        }
        bound /= &lead;
    }
    (coeffs, bound)
}

/// Keeps one row per coefficient vector, with the tightest bound.
fn dedupe(rows: Vec<Row>) -> Vec<Row> {
    let mut best: HashMap<Vec<BigRational>, BigRational> = HashMap::new();
    let mut order = Vec::new();
    for (c, b) in rows {
        match best.get_mut(&c) {
            Some(cur) => {
                if b < *cur {
                    *cur = b;
                }
            }
            None => {
                order.push(c.clone());
                best.insert(c, b);
            }
        }
    }
    order
        .into_iter()
        .map(|c| {
            let b = best.remove(&c).expect("present");
            (c, b)
        })
        .collect()
}

/// Removes rows without variables; `None` if one of them reads `0 <= negative`.
fn drop_trivial(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut kept = Vec::with_capacity(rows.len());
    for (c, bd) in rows {
        if c.iter().all(Zero::is_zero) {
            if bd.is_negative() {
                return None;
            }
        } else {
            kept.push((c, bd));
        }
    }
    Some(kept)
}

/// Fourier-Motzkin elimination with witness reconstruction.
pub fn fourier_motzkin(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    row_limit: usize,
) -> Result<Feasibility, RowLimitExceeded> {
    let nvars = a.first().map_or(0, Vec::len);
    let Some(mut system) = drop_trivial(dedupe(
        a.iter()
            .zip(b)
            .map(|(r, bd)| canonical(r.clone(), bd.clone()))
            .collect(),
    )) else {
        return Ok(Feasibility::Infeasible);
    };
    // stages[j] holds the system over variables 0..=j, before x_j is eliminated
    let mut stages: Vec<Vec<Row>> = vec![Vec::new(); nvars];
    for j in (0..nvars).rev() {
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        let mut rest = Vec::new();
        for (c, bd) in &system {
            if c[j].is_positive() {
                upper.push((c, bd));
            } else if c[j].is_negative() {
                lower.push((c, bd));
            } else {
                rest.push((c.clone(), bd.clone()));
            }
        }
        if rest.len() + upper.len() * lower.len() > row_limit {
            return Err(RowLimitExceeded);
        }
        for (cu, bu) in &upper {
            for (cl, bl) in &lower {
                let su = cu[j].abs();
                let sl = cl[j].abs();
                let coeffs: Vec<BigRational> = cu
                    .iter()
                    .zip(cl.iter())
                    .map(|(x, y)| x * &sl + y * &su)
                    .collect();
                let bound = *bu * &sl + *bl * &su;
                rest.push(canonical(coeffs, bound));
            }
        }
        stages[j] = std::mem::take(&mut system);
        let Some(next) = drop_trivial(dedupe(rest)) else {
            return Ok(Feasibility::Infeasible);
        };
        system = next;
    }
    debug_assert!(system.is_empty());

    let mut x = vec![BigRational::zero(); nvars];
    for j in 0..nvars {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for (c, bd) in &stages[j] {
            let cj = &c[j];
            if cj.is_zero() {
                continue;
            }
            let partial: BigRational = c[..j].iter().zip(&x[..j]).map(|(p, v)| p * v).sum();
            let limit = (bd - partial) / cj;
            if cj.is_positive() {
                if hi.as_ref().map_or(true, |h| limit < *h) {
                    hi = Some(limit);
                }
            } else if lo.as_ref().map_or(true, |l| limit > *l) {
                lo = Some(limit);
            }
        }
        x[j] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => BigRational::zero(),
        };
    }
    Ok(Feasibility::Feasible(x))
}

/// Phase-one simplex over `x = x⁺ − x⁻`, slack and artificial variables,
/// pivoting by Bland's rule.
pub fn simplex_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> Feasibility {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let n_art = b.iter().filter(|v| v.is_negative()).count();
    let width = 2 * n + m + n_art;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art = 0;
    for (i, (row, bd)) in a.iter().zip(b).enumerate() {
        let mut t = vec![BigRational::zero(); width];
        for (k, c) in row.iter().enumerate() {
            t[k] = c.clone();
            t[n + k] = -c.clone();
        }
        t[2 * n + i] = BigRational::from_integer(1.into());
        let mut r = bd.clone();
        if bd.is_negative() {
            for v in t.iter_mut() {
                *v = -v.clone();
            }
            r = -r;
            let col = 2 * n + m + art;
            t[col] = BigRational::from_integer(1.into());
            basis.push(col);
            art += 1;
        } else {
            basis.push(2 * n + i);
        }
        tab.push(t);
        rhs.push(r);
    }
    let is_art = |j: usize| j >= 2 * n + m;
    // reduced costs for minimizing the sum of artificials
    let mut cost = vec![BigRational::zero(); width];
    for j in 0..width {
        if is_art(j) {
            cost[j] = BigRational::from_integer(1.into());
        }
    }
    for (i, &bv) in basis.iter().enumerate() {
        if is_art(bv) {
            for j in 0..width {
                cost[j] -= &tab[i][j];
            }
        }
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero, so an entering column always has a leaving row
        let (p, _) = leave.expect("phase-one objective is bounded");
        let piv = tab[p][enter].clone();
        for v in tab[p].iter_mut() {
            *v /= &piv;
        }
        rhs[p] /= &piv;
        let prow = tab[p].clone();
        let prhs = rhs[p].clone();
        for i in 0..m {
            if i == p || tab[i][enter].is_zero() {
                continue;
            }
            let k = tab[i][enter].clone();
            for (v, pv) in tab[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &k * pv;
                }
            }
            rhs[i] -= &k * &prhs;
        }
        let k = cost[enter].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &k * pv;
            }
        }
        basis[p] = enter;
    }

    let infeasible = basis
        .iter()
        .zip(&rhs)
        .any(|(&bv, r)| is_art(bv) && !r.is_zero());
    if infeasible {
        return Feasibility::Infeasible;
    }
    let mut x = vec![BigRational::zero(); n];
    for (&bv, r) in basis.iter().zip(&rhs) {
        if bv < n {
            x[bv] += r;
        } else if bv < 2 * n {
            x[bv - n] -= r;
        }
    }
    Feasibility::Feasible(x)
}
