use crate::error::RecurrenceError;
use crate::exactnum::IntPoly;
use crate::ffunc::FRule;
use crate::fseq::FSequence;

use super::elimination::{eliminate_residue, stride, ResidueElimination};
use super::minimal::{minimal_recurrence, MIN_TERMS_FACTOR, MIN_TERMS_OFFSET};
use super::{to_signed, verify_recurrence, LinearRecurrence};

/// Horizon used for the self-check inside [`synthesize_recurrence`].
const SELF_CHECK_HORIZON: usize = 300;

/// Intermediate products of a synthesis run.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub stride: usize,
    pub residues: Vec<ResidueElimination>,
    /// Product of the per-residue polynomials, in stride units.
    pub stride_product: IntPoly,
    pub recurrence: LinearRecurrence,
}

/// Builds a recurrence for the f-sequence of a periodic rule by eliminating
/// each residue class, multiplying the stride polynomials and inflating the
/// product by the stride.
pub fn synthesize_recurrence(rule: &FRule) -> Result<LinearRecurrence, RecurrenceError> {
    synthesize_detailed(rule).map(|s| s.recurrence)
}

pub fn synthesize_detailed(rule: &FRule) -> Result<Synthesis, RecurrenceError> {
    let b = stride(rule)?;
    let residues = (0..b)
        .map(|r| eliminate_residue(rule, b, r))
        .collect::<Result<Vec<_>, _>>()?;

    let stride_product = residues
        .iter()
        .fold(IntPoly::one(), |acc, e| acc.mul(&e.stride_poly));
    let d = stride_product.degree().unwrap_or(0);
    let min_residue_degree = residues
        .iter()
        .filter_map(|e| e.stride_poly.degree())
        .min()
        .unwrap_or(0);
    let charpoly = stride_product.inflate(b);
    let order = charpoly.degree().unwrap_or(0);

    // each residue relation holds from b² + b on; multiplying by the other
    // factors pushes the start back by their degree in strides
    let valid_from = (b * b + b + b * (d - min_residue_degree)).max(order);
    let recurrence = LinearRecurrence::from_charpoly(&charpoly, valid_from).ok_or_else(|| {
        RecurrenceError::Synthesis(format!("degenerate characteristic polynomial {charpoly}"))
    })?;

    let seq = FSequence::new(rule.clone());
    if !verify_recurrence(&seq, &recurrence, SELF_CHECK_HORIZON.max(2 * order)) {
        return Err(RecurrenceError::Synthesis(format!(
            "synthesized recurrence of order {order} fails on the sequence of {rule}"
        )));
    }
    Ok(Synthesis {
        stride: b,
        residues,
        stride_product,
        recurrence,
    })
}

/// Shrinks a verified recurrence to the minimal one carried by the sequence.
///
/// The minimal characteristic polynomial must divide the one of `rec`; the
/// result is re-verified over `horizon` before being returned.
pub fn minimize(
    seq: &FSequence,
    rec: &LinearRecurrence,
    horizon: usize,
) -> Result<LinearRecurrence, RecurrenceError> {
    let k = rec.order();
    let count = MIN_TERMS_FACTOR * k + MIN_TERMS_OFFSET + rec.valid_from();
    let terms = to_signed(seq, count);
    let min = minimal_recurrence(&terms, k)?.ok_or_else(|| {
        RecurrenceError::Synthesis("no recurrence found within the synthesized order".into())
    })?;
    let (_, rem) = rec
        .charpoly()
        .div_rem_monic(&min.charpoly())
        .ok_or(RecurrenceError::NotMonic)?;
    if !rem.is_zero() {
        return Err(RecurrenceError::Synthesis(format!(
            "minimal polynomial {} does not divide {}",
            min.charpoly(),
            rec.charpoly()
        )));
    }
    if !verify_recurrence(seq, &min, horizon) {
        return Err(RecurrenceError::Synthesis(
            "minimized recurrence fails beyond the fitted window".into(),
        ));
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffunc::bbin_rule;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn coeffs(r: &LinearRecurrence) -> Vec<i64> {
        r.coefficients()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    fn synth_and_min(rule: FRule) -> (LinearRecurrence, LinearRecurrence) {
        let syn = synthesize_recurrence(&rule).unwrap();
        let seq = FSequence::new(rule);
        let min = minimize(&seq, &syn, 300).unwrap();
        (syn, min)
    }

    #[test]
    fn fibonacci() {
        let (syn, min) = synth_and_min(FRule::constant(1));
        let fib = IntPoly::from_i64s(&[-1, -1, 1]);
        assert!(syn.charpoly().divisible_by_monic(&fib).unwrap());
        assert_eq!(coeffs(&min), [1, 1]);
        assert_eq!(min.valid_from(), 2);
    }

    #[test]
    fn three_bin() {
        let (syn, min) = synth_and_min(bbin_rule(3).unwrap());
        // three identical residue factors y² − 4y + 1, inflated by 3
        assert_eq!(syn.order(), 18);
        assert_eq!(coeffs(&min), [0, 0, 4, 0, 0, -1]);
        assert_eq!(min.valid_from(), 6);
    }

    #[test]
    fn four_bin() {
        let (_, min) = synth_and_min(bbin_rule(4).unwrap());
        assert_eq!(coeffs(&min), [0, 0, 0, 5, 0, 0, 0, -1]);
    }

    #[test]
    fn doubling_rule() {
        let (syn, min) = synth_and_min(FRule::constant(0));
        assert_eq!(coeffs(&syn), [2]);
        assert_eq!(coeffs(&min), [2]);
    }

    #[test]
    fn rejects_non_periodic_rules() {
        assert!(matches!(
            synthesize_recurrence(&FRule::factorial_bins()),
            Err(RecurrenceError::UnsupportedRule(_))
        ));
    }

    #[test]
    fn listed_rules_verify() {
        let mut rules = vec![FRule::constant(1)];
        rules.extend((2..=6).map(|b| FRule::base(b).unwrap()));
        rules.extend((3..=5).map(|b| bbin_rule(b).unwrap()));
        for rule in rules {
            let syn = synthesize_recurrence(&rule).unwrap();
            let seq = FSequence::new(rule.clone());
            assert!(verify_recurrence(&seq, &syn, 300), "{rule}");
            let min = minimize(&seq, &syn, 300).unwrap();
            assert!(syn
                .charpoly()
                .divisible_by_monic(&min.charpoly())
                .unwrap());
        }
    }

    #[test]
    fn base_rules_give_geometric_growth() {
        // base b: a_{n} = b · a_{n−(b−1)} once the pattern repeats
        for b in 2..=6usize {
            let (_, min) = synth_and_min(FRule::base(b).unwrap());
            let mut expect = vec![0i64; b - 1];
            expect[b - 2] = b as i64;
            assert_eq!(coeffs(&min), expect, "base {b}");
        }
    }

    #[test]
    fn stride_shape() {
        for rule in [bbin_rule(3).unwrap(), bbin_rule(5).unwrap(), FRule::base(4).unwrap()] {
            let s = synthesize_detailed(&rule).unwrap();
            for e in &s.residues {
                let deg = e.stride_poly.degree().unwrap();
                assert!(deg <= s.stride + 1);
                for (k, c) in e.combined.entries().iter().enumerate() {
                    assert!(k % s.stride == 0 || c.is_zero());
                }
            }
            let inflated = s.stride_product.inflate(s.stride);
            assert_eq!(inflated, s.recurrence.charpoly());
            assert_eq!(
                s.recurrence.coefficients().len(),
                s.stride * s.stride_product.degree().unwrap()
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn random_periodic_rules_verify(pattern in prop::collection::vec(0usize..=3, 1..=4)) {
            let rule = FRule::periodic(pattern).unwrap();
            let syn = synthesize_recurrence(&rule).unwrap();
            let seq = FSequence::new(rule);
            prop_assert!(verify_recurrence(&seq, &syn, 300));
            let min = minimize(&seq, &syn, 300).unwrap();
            prop_assert!(min.order() <= syn.order());
            prop_assert!(syn.charpoly().divisible_by_monic(&min.charpoly()).unwrap());
        }
    }
}
