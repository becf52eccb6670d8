use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::StatsError;

use super::CountTable;

/// Significand bits used for closed-form evaluation.
pub const GF_PRECISION: usize = 128;

const RM: RoundingMode = RoundingMode::ToEven;

fn from_bigint(v: &BigInt, p: usize) -> BigFloat {
    let radix = BigFloat::from_u128(1u128 << 64, p);
    let mut acc = BigFloat::from_u64(0, p);
    for d in v.magnitude().to_u64_digits().iter().rev() {
        acc = acc
            .mul(&radix, p, RM)
            .add(&BigFloat::from_u64(*d, p), p, RM);
    }
    if v.is_negative() {
        acc.set_sign(Sign::Neg);
    }
    acc
}

fn from_rational(v: &BigRational, p: usize) -> BigFloat {
    from_bigint(v.numer(), p).div(&from_bigint(v.denom(), p), p, RM)
}

/// `g_n(y) = ((by+1+√D)^{n+1} − (by+1−√D)^{n+1}) / (2^{n+1} √D)` with
/// `D = (b²−4)y² + 2by + 1`, evaluated with `precision` significand bits.
pub fn gf_closed_form_gn(
    b: usize,
    n: usize,
    y: &BigRational,
    precision: usize,
) -> Result<BigFloat, StatsError> {
    if b < 3 {
        return Err(StatsError::BinWidthTooSmall(b));
    }
    if !y.is_positive() {
        return Err(StatsError::NonPositiveArgument);
    }
    // a few guard bits for the subtraction and the powers
    let p = precision + 64;
    let bi = BigInt::from(b);
    let disc = (BigRational::from_integer(&bi * &bi - 4) * y + BigRational::from_integer(&bi * 2))
        * y
        + BigRational::from_integer(1.into());
    let lin = BigRational::from_integer(bi) * y + BigRational::from_integer(1.into());
    let root = from_rational(&disc, p).sqrt(p, RM);
    let lin = from_rational(&lin, p);
    let plus = lin.add(&root, p, RM).powi(n + 1, p, RM);
    let minus = lin.sub(&root, p, RM).powi(n + 1, p, RM);
    let den = BigFloat::from_u64(2, p).powi(n + 1, p, RM).mul(&root, p, RM);
    let mut out = plus.sub(&minus, p, RM).div(&den, p, RM);
    out.set_precision(precision, RM)
        .expect("precision within astro-float limits");
    Ok(out)
}

/// `Σ_k p_{n,k} y^k` exactly.
pub fn table_gf_value(table: &CountTable, n: usize, y: &BigRational) -> Result<BigRational, StatsError> {
    let row = table.row(n)?;
    Ok(row.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * y + BigRational::from_integer(c.clone().into())
    }))
}

/// `|approx − exact| / |exact|`.
pub fn relative_error(approx: &BigFloat, exact: &BigRational, precision: usize) -> BigFloat {
    let p = precision + 64;
    let e = from_rational(exact, p);
    let mut diff = approx.sub(&e, p, RM).div(&e, p, RM);
    diff.set_sign(Sign::Pos);
    diff
}

/// Nearest `f64`, via a decimal rendering.
pub fn bigfloat_to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let mut cc = Consts::new().expect("astro-float constants");
    v.format(Radix::Dec, RM, &mut cc)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::NAN)
}
