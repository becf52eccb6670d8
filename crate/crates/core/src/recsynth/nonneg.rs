use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::RecurrenceError;
use crate::exactnum::lp::{feasible_point, Feasibility};
use crate::exactnum::IntPoly;

/// Outcome of [`nonnegative_multiple_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonnegSearch {
    /// `multiplier · charpoly = product`, with `product` monic of `degree`
    /// and every lower coefficient `<= 0`. Coefficients are ascending.
    Feasible {
        degree: usize,
        multiplier: Vec<BigRational>,
        product: Vec<BigRational>,
    },
    /// No such multiple exists with degree up to `max_degree`.
    Infeasible { max_degree: usize },
}

impl NonnegSearch {
    pub fn is_feasible(&self) -> bool {
        matches!(self, NonnegSearch::Feasible { .. })
    }
}

/// Looks for a multiple of `charpoly` of the form `x^h − Σ d_i x^{h−i}` with
/// all `d_i >= 0`, for `h = deg(charpoly)..=max_degree`.
///
/// Each degree is an exact rational feasibility problem in the coefficients
/// of the monic multiplier. Infeasibility only covers the degrees searched.
pub fn nonnegative_multiple_search(
    charpoly: &IntPoly,
    max_degree: usize,
) -> Result<NonnegSearch, RecurrenceError> {
    let d = match charpoly.degree() {
        Some(d) if d >= 1 => d,
        Some(d) => {
            return Err(RecurrenceError::DegreeTooSmall {
                degree: d,
                max_degree,
            })
        }
        None => return Err(RecurrenceError::NotMonic),
    };
    if max_degree < d {
        return Err(RecurrenceError::DegreeTooSmall {
            degree: d,
            max_degree,
        });
    }
    let lead = BigRational::from_integer(charpoly.leading().expect("nonzero").clone());
    let c: Vec<BigRational> = charpoly
        .coeffs()
        .iter()
        .map(|v| BigRational::from_integer(v.clone()) / &lead)
        .collect();

    for h in d..=max_degree {
        if let Some(q) = multiplier_of_degree(&c, h - d) {
            let product = mul(&q, &c);
            debug_assert!(product[..h].iter().all(|v| !v.is_positive()));
            return Ok(NonnegSearch::Feasible {
                degree: h,
                multiplier: q,
                product,
            });
        }
    }
    Ok(NonnegSearch::Infeasible { max_degree })
}

/// Monic `q` of degree `m` with every coefficient of `q · c` below `x^{m+d}`
/// nonpositive, if one exists.
///
/// Unknowns are `q_0..q_{m−1}`; row `i` reads
/// `Σ_j c_{i−j} q_j <= −c_{i−m}`.
fn multiplier_of_degree(c: &[BigRational], m: usize) -> Option<Vec<BigRational>> {
    let d = c.len() - 1;
    let h = m + d;
    let at = |k: isize| -> BigRational {
        if k < 0 || k as usize > d {
            BigRational::zero()
        } else {
            c[k as usize].clone()
        }
    };
    let mut q: Vec<BigRational> = if m == 0 {
        Vec::new()
    } else {
        let a: Vec<Vec<BigRational>> = (0..h)
            .map(|i| (0..m).map(|j| at(i as isize - j as isize)).collect())
            .collect();
        let b: Vec<BigRational> = (0..h).map(|i| -at(i as isize - m as isize)).collect();
        match feasible_point(&a, &b).0 {
            Feasibility::Feasible(x) => x,
            Feasibility::Infeasible => return None,
        }
    };
    q.push(BigRational::one());
    if m == 0 && c[..d].iter().any(|v| v.is_positive()) {
        return None;
    }
    Some(q)
}

fn mul(p: &[BigRational], q: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Scales an exact rational witness to the smallest integer multiple.
pub fn integer_scaled(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * &den).to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rats(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn fibonacci_is_already_nonnegative() {
        let r = nonnegative_multiple_search(&IntPoly::from_i64s(&[-1, -1, 1]), 10).unwrap();
        assert_eq!(
            r,
            NonnegSearch::Feasible {
                degree: 2,
                multiplier: rats(&[1]),
                product: rats(&[-1, -1, 1]),
            }
        );
    }

    #[test]
    fn doubling() {
        let r = nonnegative_multiple_search(&IntPoly::from_i64s(&[-2, 1]), 5).unwrap();
        assert!(matches!(r, NonnegSearch::Feasible { degree: 1, .. }));
    }

    #[test]
    fn needs_a_genuine_multiple() {
        // x² + 1 is bad itself and in degree 3; (x² − 1)(x² + 1) = x⁴ − 1 works
        let c = [1, 0, 1];
        match nonnegative_multiple_search(&IntPoly::from_i64s(&c), 8).unwrap() {
            NonnegSearch::Feasible {
                degree,
                multiplier,
                product,
            } => {
                assert_eq!(degree, 4);
                assert_eq!(product, mul(&multiplier, &rats(&c)));
                assert!(product[..degree].iter().all(|v| !v.is_positive()));
                assert!(product[degree].is_one());
            }
            other => panic!("expected a multiple, got {other:?}"),
        }
    }

    #[test]
    fn three_bin_minimal_polynomial_to_thirty() {
        let p = IntPoly::from_i64s(&[1, 0, 0, -4, 0, 0, 1]);
        assert_eq!(
            nonnegative_multiple_search(&p, 30).unwrap(),
            NonnegSearch::Infeasible { max_degree: 30 }
        );
    }

    #[test]
    fn bbin_family_to_twenty_four() {
        for b in 3..=5usize {
            let mut c = vec![0i64; 2 * b + 1];
            c[0] = 1;
            c[b] = -(b as i64 + 1);
            c[2 * b] = 1;
            assert_eq!(
                nonnegative_multiple_search(&IntPoly::from_i64s(&c), 24).unwrap(),
                NonnegSearch::Infeasible { max_degree: 24 },
                "b = {b}"
            );
        }
    }

    #[test]
    fn non_monic_is_normalized() {
        let r = nonnegative_multiple_search(&IntPoly::from_i64s(&[-4, 2]), 3).unwrap();
        assert!(matches!(r, NonnegSearch::Feasible { degree: 1, .. }));
    }

    #[test]
    fn contract_violations() {
        assert!(nonnegative_multiple_search(&IntPoly::zero(), 5).is_err());
        assert!(nonnegative_multiple_search(&IntPoly::from_i64s(&[3]), 5).is_err());
        assert!(nonnegative_multiple_search(&IntPoly::from_i64s(&[1, 0, 1]), 1).is_err());
    }

    #[test]
    fn integer_scaling() {
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(2.into(), 3.into()),
        ];
        assert_eq!(integer_scaled(&v), vec![BigInt::from(3), BigInt::from(4)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn witnesses_are_exact(c in prop::collection::vec(-4i64..=4, 1..=3), slack in 0usize..=3) {
            let mut coeffs = c.clone();
            coeffs.push(1);
            let p = IntPoly::from_i64s(&coeffs);
            let d = p.degree().unwrap();
            if let NonnegSearch::Feasible { degree, multiplier, product } =
                nonnegative_multiple_search(&p, d + slack).unwrap()
            {
                prop_assert!(degree >= d && degree <= d + slack);
                prop_assert_eq!(&product, &mul(&multiplier, &rats(&coeffs)));
                prop_assert!(product[..degree].iter().all(|v| !v.is_positive()));
                prop_assert!(product[degree].is_one());
            }
        }
    }
}
