use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial, coefficients ascending by degree.
///
/// The zero polynomial has no coefficients, so the last stored coefficient
/// is always nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from coefficients listed from the leading term down.
    pub fn from_descending(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().rev().cloned().collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Substitutes `x^b` for `x`.
    pub fn inflate(&self, b: usize) -> IntPoly {
        assert!(b >= 1, "inflation factor must be positive");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * b + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * b] = c.clone();
        }
        IntPoly { coeffs: out }
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Division with remainder by a monic divisor, exact over the integers.
    ///
    /// Returns `None` when `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        if !divisor.is_monic() {
            return None;
        }
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = rem[i + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(d);
        Some((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// True when `divisor` (monic) divides `self` exactly.
    pub fn divisible_by_monic(&self, divisor: &IntPoly) -> Option<bool> {
        self.div_rem_monic(divisor).map(|(_, r)| r.is_zero())
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Product of two polynomials.
pub fn poly_mul(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p.mul(q)
}

/// `p(x^b)`.
pub fn poly_inflate(p: &IntPoly, b: usize) -> IntPoly {
    p.inflate(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(poly_mul(&p(&[-1, 1]), &p(&[1, 1])), p(&[-1, 0, 1]));
    }

    #[test]
    fn multiply_by_one() {
        let q = p(&[1, 0, 0, -4, 0, 0, 1]);
        assert_eq!(poly_mul(&q, &IntPoly::one()), q);
    }

    #[test]
    fn golden_ratio_pair_product() {
        // (x^2 - x - 1)(x^2 + x - 1) = x^4 - 3x^2 + 1
        assert_eq!(
            poly_mul(&p(&[-1, -1, 1]), &p(&[-1, 1, 1])),
            p(&[1, 0, -3, 0, 1])
        );
    }

    #[test]
    fn zero_is_empty_and_absorbing() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(poly_mul(&IntPoly::zero(), &p(&[1, 2])).is_zero());
    }

    #[test]
    fn inflation_examples() {
        let fib = p(&[-1, -1, 1]);
        assert_eq!(poly_inflate(&fib, 1), fib);
        assert_eq!(poly_inflate(&fib, 3), p(&[-1, 0, 0, -1, 0, 0, 1]));
        assert_eq!(
            poly_inflate(&p(&[1, -4, 1]), 3),
            p(&[1, 0, 0, -4, 0, 0, 1])
        );
    }

    #[test]
    fn division_by_monic() {
        let prod = p(&[1, 0, -3, 0, 1]);
        let (q, r) = prod.div_rem_monic(&p(&[-1, -1, 1])).unwrap();
        assert_eq!(q, p(&[-1, 1, 1]));
        assert!(r.is_zero());
        let (_, r) = p(&[1, 0, 1]).div_rem_monic(&p(&[-1, 1])).unwrap();
        assert_eq!(r, p(&[2]));
        assert!(p(&[1, 2]).div_rem_monic(&p(&[1, 2])).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 0, -4, 0, 0, 1]).to_string(), "x^6 - 4x^3 + 1");
        assert_eq!(p(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-9i64..=9, 0..=9).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(poly_mul(&a, &b), poly_mul(&b, &a));
        }

        #[test]
        fn mul_associates(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(
                poly_mul(&poly_mul(&a, &b), &c),
                poly_mul(&a, &poly_mul(&b, &c))
            );
        }

        #[test]
        fn mul_degree_adds(a in small_poly(), b in small_poly()) {
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!(poly_mul(&a, &b).degree(), Some(da + db));
            }
        }

        #[test]
        fn inflate_matches_power_substitution(a in small_poly(), b in 1usize..=5) {
            let inflated = poly_inflate(&a, b);
            for t in -2i64..=3 {
                let t = BigInt::from(t);
                prop_assert_eq!(inflated.eval(&t), a.eval(&t.pow(b as u32)));
            }
        }
    }
}
