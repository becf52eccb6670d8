use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Vector of exact rationals.
///
/// `BigRational` keeps every entry reduced with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatVector {
    entries: Vec<BigRational>,
}

impl RatVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![BigRational::zero(); dim],
        }
    }

    pub fn from_entries(entries: Vec<BigRational>) -> Self {
        Self { entries }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Self {
        Self {
            entries: it
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Entries as integers, or `None` if any entry has a denominator.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.is_integer().then(|| e.to_integer()))
            .collect()
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: &BigRational, other: &RatVector) {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        if k.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    /// Moves every coordinate `by` places toward higher indices, dropping
    /// whatever falls off the end.
    pub fn shift_right(&self, by: usize) -> RatVector {
        let dim = self.dim();
        let mut out = RatVector::zeros(dim);
        for i in 0..dim.saturating_sub(by) {
            out.entries[i + by] = self.entries[i].clone();
        }
        out
    }

    /// Coordinates `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> RatVector {
        RatVector::from_entries(self.entries[start..end].to_vec())
    }

    /// Index of the first nonzero coordinate.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|e| !e.is_zero())
    }

    /// Scales to integer entries with gcd 1 and a positive first nonzero
    /// entry. The zero vector is returned unchanged.
    pub fn normalized(&self) -> RatVector {
        let Some(lead) = self.first_nonzero() else {
            return self.clone();
        };
        let denom_lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let ints: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| (e * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints[lead].is_negative() {
            g = -g;
        }
        RatVector::from_entries(
            ints.into_iter()
                .map(|v| BigRational::from_integer(v / &g))
                .collect(),
        )
    }
}

impl Index<usize> for RatVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.entries[i]
    }
}

impl IndexMut<usize> for RatVector {
    fn index_mut(&mut self, i: usize) -> &mut BigRational {
        &mut self.entries[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

/// Row-reduced echelon form of a dense rational matrix.
pub(crate) struct Rref {
    pub rows: Vec<Vec<BigRational>>,
    /// Pivot column of each nonzero row, in row order.
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination choosing the first nonzero entry in each column
/// as pivot.
pub(crate) fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Rref {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &k * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows, pivots }
}

/// Finds coefficients `λ`, not all zero, with `Σ λ_i · vectors[i] = 0`.
///
/// The vectors are the columns of the eliminated matrix; the returned
/// combination is the kernel basis vector of the first free column, scaled
/// to coprime integers with a positive first nonzero entry. Its highest
/// nonzero index is therefore as small as possible among all dependencies.
/// Returns `None` only when the vectors are linearly independent.
pub fn nullspace_combination(vectors: &[RatVector]) -> Option<RatVector> {
    let m = vectors.len();
    if m == 0 {
        return None;
    }
    let d = vectors[0].dim();
    assert!(
        vectors.iter().all(|v| v.dim() == d),
        "all vectors must share one dimension"
    );
    let rows: Vec<Vec<BigRational>> = (0..d)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let red = rref(rows, m);
    let free = (0..m).find(|c| !red.pivots.contains(c))?;
    let mut lambda = RatVector::zeros(m);
    lambda[free] = BigRational::one();
    for (row, &pc) in red.rows.iter().zip(&red.pivots) {
        if pc < free {
            lambda[pc] = -row[free].clone();
        }
    }
    Some(lambda.normalized())
}

/// Solves `A x = rhs` exactly. Free variables are set to zero; returns
/// `None` if the system is inconsistent.
pub fn solve_linear(a: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), rhs.len());
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = rref(aug, ncols + 1);
    if red.pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &pc) in red.rows.iter().zip(&red.pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn combine(vectors: &[RatVector], lambda: &RatVector) -> RatVector {
        let mut acc = RatVector::zeros(vectors[0].dim());
        for (v, l) in vectors.iter().zip(lambda.entries()) {
            acc.add_scaled(l, v);
        }
        acc
    }

    fn is_multiple(a: &RatVector, b: &RatVector) -> bool {
        // a and b nonzero, a = k b for some rational k
        let i = b.first_nonzero().unwrap();
        let k = &a[i] / &b[i];
        a.entries()
            .iter()
            .zip(b.entries())
            .all(|(x, y)| *x == &k * y)
    }

    #[test]
    fn three_vectors_in_the_plane() {
        let vs = [
            RatVector::from_ints([1, 0]),
            RatVector::from_ints([0, 1]),
            RatVector::from_ints([1, 1]),
        ];
        let l = nullspace_combination(&vs).unwrap();
        assert!(combine(&vs, &l).is_zero());
        assert!(is_multiple(&l, &RatVector::from_ints([1, 1, -1])));
        assert_eq!(l, RatVector::from_ints([1, 1, -1]));
    }

    #[test]
    fn equal_vectors() {
        let vs = vec![RatVector::from_ints([-1, 0]); 3];
        let l = nullspace_combination(&vs).unwrap();
        assert_eq!(l, RatVector::from_ints([1, -1, 0]));
        // the worked example's choice (-1, 1, 0) is the same dependency
        assert!(is_multiple(&RatVector::from_ints([-1, 1, 0]), &l));
    }

    #[test]
    fn independent_set_has_no_combination() {
        let vs = [RatVector::from_ints([1, 0]), RatVector::from_ints([1, 1])];
        assert!(nullspace_combination(&vs).is_none());
    }

    #[test]
    fn zero_dimensional_vectors_are_dependent() {
        let vs = [RatVector::zeros(0)];
        assert_eq!(nullspace_combination(&vs), Some(RatVector::from_ints([1])));
    }

    #[test]
    fn normalization_clears_denominators() {
        let v = RatVector::from_entries(vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        ]);
        assert_eq!(v.normalized(), RatVector::from_ints([3, -2]));
    }

    #[test]
    fn linear_solve() {
        let r = |v: i64| BigRational::from_integer(v.into());
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)], vec![r(3), r(4)]];
        let x = solve_linear(&a, &[r(5), r(10), r(15)]).unwrap();
        assert_eq!(x, vec![r(1), r(3)]);
        assert!(solve_linear(&a, &[r(5), r(10), r(16)]).is_none());
    }

    fn int_vectors() -> impl Strategy<Value = Vec<RatVector>> {
        (1usize..=4, 1usize..=6).prop_flat_map(|(d, m)| {
            prop::collection::vec(
                prop::collection::vec(-3i64..=3, d).prop_map(RatVector::from_ints),
                m,
            )
        })
    }

    proptest! {
        #[test]
        fn combination_is_exactly_zero(vs in int_vectors()) {
            if let Some(l) = nullspace_combination(&vs) {
                prop_assert!(!l.is_zero());
                prop_assert!(combine(&vs, &l).is_zero());
                prop_assert!(l[l.first_nonzero().unwrap()].is_positive());
            }
        }

        #[test]
        fn more_vectors_than_dimension_always_dependent(vs in int_vectors()) {
            if vs.len() > vs[0].dim() {
                prop_assert!(nullspace_combination(&vs).is_some());
            }
        }
    }
}
