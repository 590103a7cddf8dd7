//! Closed-form pairings of the pretzel-tangle curves with the closing
//! rational curve `r(∓1/(2c+1)) t^{-2c-1} t^{2c+1}`.
//!
//! Every function here returns the *reduced* pairing: each pair of
//! intersection points `{α, α+2}` sharing a delta grading has already been
//! replaced by one generator of Alexander grading `(α+1)/2`.

use thiserror::Error;

use crate::algebra::{Generator, GeneratorMultiset, HalfInteger};
use crate::tangle_curves::{ClosureSign, CurveKind, GradedCurve, ReducedSlope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("unpairable multiset: no partner {partner} for grading {alexander} in delta {delta}")]
    Unpairable {
        alexander: i64,
        partner: i64,
        delta: HalfInteger,
    },
    #[error("pair ({0}, {1}) reduces to a half-integral Alexander grading")]
    HalfIntegralReduction(i64, i64),
    #[error("curve {0} does not have the shape this pairing expects")]
    WrongShape(GradedCurve),
    #[error("slope {0} matches none of 1/2n, -1/2n, -A/B")]
    UnsupportedSlope(ReducedSlope),
    #[error("slopes A/B and 1/(2c+1) coincide")]
    SlopeTie,
}

/// Reduced pairing output: final `HFK` gradings.
pub type ReducedPairing = GeneratorMultiset;

const HALF: HalfInteger = HalfInteger::from_twice(1);
const MINUS_HALF: HalfInteger = HalfInteger::from_twice(-1);
const THREE_HALVES: HalfInteger = HalfInteger::from_twice(3);

/// Merge pairs `{α, α+2}` within each delta grading into one generator of
/// grading `(α+1)/2`, matching greedily from the smallest grading up.
pub fn reduce_generator_pairs(unreduced: &GeneratorMultiset) -> Result<ReducedPairing, PairingError> {
    let mut rest = unreduced.clone();
    let mut out = GeneratorMultiset::new();
    loop {
        let first = rest.iter().next();
        let Some((g, rank)) = first else { break };
        let partner = Generator::new(g.alexander + 2, g.delta);
        if rest.rank(partner.alexander, partner.delta) < rank {
            return Err(PairingError::Unpairable {
                alexander: g.alexander,
                partner: partner.alexander,
                delta: g.delta,
            });
        }
        if g.alexander % 2 == 0 {
            return Err(PairingError::HalfIntegralReduction(g.alexander, partner.alexander));
        }
        rest.remove(g, rank);
        rest.remove(partner, rank);
        out.insert(Generator::new((g.alexander + 1) / 2, g.delta), rank);
    }
    Ok(out)
}

fn interval(delta: HalfInteger, lo: i64, hi: i64) -> ReducedPairing {
    GeneratorMultiset::from_gradings(delta, lo..=hi)
}

fn special_index(curve: &GradedCurve, want14: bool) -> Result<(), PairingError> {
    match (curve.kind, want14) {
        (CurveKind::Special14(_), true) | (CurveKind::Special23(_), false) => Ok(()),
        _ => Err(PairingError::WrongShape(*curve)),
    }
}

/// Pairing with `i_k(1,4) t^m t^M`.
pub fn pair_special14(closure: ClosureSign, c: u32, curve: &GradedCurve) -> Result<ReducedPairing, PairingError> {
    special_index(curve, true)?;
    let c = i64::from(c);
    let (m, big_m) = (curve.min / 2, curve.max / 2);
    Ok(match closure {
        ClosureSign::Negative => interval(HALF, m - c, big_m - c - 1),
        ClosureSign::Positive => interval(HALF, m + c + 1, big_m + c),
    })
}

/// Pairing with `i_k(2,3) t^m t^M`.
pub fn pair_special23(closure: ClosureSign, c: u32, curve: &GradedCurve) -> Result<ReducedPairing, PairingError> {
    special_index(curve, false)?;
    let c = i64::from(c);
    let (m, big_m) = (curve.min / 2, curve.max / 2);
    Ok(match closure {
        ClosureSign::Negative => interval(HALF, m + c + 1, big_m + c),
        ClosureSign::Positive => interval(HALF, m - c, big_m - c - 1),
    })
}

/// Half-denominator `n` of a slope `±1/(2n)`.
fn half_denominator(curve: &GradedCurve, num: i64) -> Result<i64, PairingError> {
    match curve.kind {
        CurveKind::Rational(s) if s.numerator() == num && s.denominator() % 2 == 0 && s.denominator() > 0 => {
            Ok(s.denominator() / 2)
        }
        _ => Err(PairingError::WrongShape(*curve)),
    }
}

/// Pairing with `r(-1/(2n)) t^{-2n} t^{2n}`.
pub fn pair_rational_neg_half(
    closure: ClosureSign,
    c: u32,
    curve: &GradedCurve,
) -> Result<ReducedPairing, PairingError> {
    let n = half_denominator(curve, -1)?;
    if curve.min != -2 * n || curve.max != 2 * n {
        return Err(PairingError::WrongShape(*curve));
    }
    let c = i64::from(c);
    Ok(match closure {
        ClosureSign::Negative => interval(HALF, -n - c, n + c),
        ClosureSign::Positive if n > c => interval(HALF, -n + c + 1, n - c - 1),
        ClosureSign::Positive => interval(MINUS_HALF, n - c, c - n),
    })
}

/// Pairing with `r(1/(2n)) t^m t^{m+4n}`.
pub fn pair_rational_pos_half(
    closure: ClosureSign,
    c: u32,
    curve: &GradedCurve,
) -> Result<ReducedPairing, PairingError> {
    let n = half_denominator(curve, 1)?;
    if curve.max - curve.min != 4 * n {
        return Err(PairingError::WrongShape(*curve));
    }
    let c = i64::from(c);
    let (m, big_m) = (curve.min / 2, curve.max / 2);
    Ok(match closure {
        ClosureSign::Negative if n > c => interval(HALF, m + c + 1, big_m - c - 1),
        ClosureSign::Negative => interval(THREE_HALVES, big_m - c, m + c),
        ClosureSign::Positive => interval(HALF, m - c, big_m + c),
    })
}

/// Emit `len` gradings in blocks of `block`: block `i` alternates
/// `base + i`, `base + i + step`, ..., ending on `base + i` when complete.
fn block_pattern(len: i64, block: i64, base: i64, step: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(usize::try_from(len.max(0)).unwrap_or(0));
    let mut i = 0;
    while (out.len() as i64) < len {
        for j in 0..block {
            if out.len() as i64 >= len {
                break;
            }
            out.push(base + i + if j % 2 == 0 { 0 } else { step });
        }
        i += 1;
    }
    out
}

/// Pairing with `r(-A/B) t^{-M} t^{M}` (Case III only).
pub fn pair_rational_general(
    closure: ClosureSign,
    c: u32,
    slope: ReducedSlope,
    max: i64,
) -> Result<ReducedPairing, PairingError> {
    let (a_num, b_den) = (-slope.numerator(), slope.denominator());
    if a_num <= 0 || b_den <= 0 || a_num % 2 == 0 {
        return Err(PairingError::UnsupportedSlope(slope));
    }
    let c = i64::from(c);
    let q = 2 * c + 1;
    let half_max = max / 2;
    let (delta, gradings) = match closure {
        ClosureSign::Negative => (HALF, block_pattern(b_den + a_num * q, a_num, -half_max - c, 1)),
        ClosureSign::Positive => {
            let steep = a_num * q - b_den;
            if steep == 0 {
                return Err(PairingError::SlopeTie);
            }
            if steep > 0 {
                (MINUS_HALF, block_pattern(steep, a_num, half_max - c, -1))
            } else {
                (HALF, block_pattern(-steep, a_num, -half_max + c + 1, 1))
            }
        }
    };
    Ok(GeneratorMultiset::from_gradings(delta, gradings))
}

/// Route a tangle curve to the matching closed form.
pub fn pair_curve(closure: ClosureSign, c: u32, curve: &GradedCurve) -> Result<ReducedPairing, PairingError> {
    match curve.kind {
        CurveKind::Special14(_) => pair_special14(closure, c, curve),
        CurveKind::Special23(_) => pair_special23(closure, c, curve),
        CurveKind::Rational(s) => {
            let (num, den) = (s.numerator(), s.denominator());
            if den > 0 && den % 2 == 0 && num == 1 {
                pair_rational_pos_half(closure, c, curve)
            } else if den > 0 && den % 2 == 0 && num == -1 {
                pair_rational_neg_half(closure, c, curve)
            } else if num < 0 && num % 2 != 0 && den > 0 && curve.min == -curve.max {
                pair_rational_general(closure, c, s, curve.max)
            } else {
                Err(PairingError::UnsupportedSlope(s))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle_curves::ReducedSlope;

    use ClosureSign::{Negative, Positive};

    fn gens(delta2: i64, gradings: &[i64]) -> GeneratorMultiset {
        GeneratorMultiset::from_gradings(HalfInteger::from_twice(delta2), gradings.iter().copied())
    }

    fn rat(n: i64, d: i64, m: i64, big_m: i64) -> GradedCurve {
        GradedCurve::rational(ReducedSlope::new(n, d).unwrap(), m, big_m)
    }

    #[test]
    fn reduce_single_pair() {
        assert_eq!(reduce_generator_pairs(&gens(1, &[-3, -1])).unwrap(), gens(1, &[-1]));
    }

    #[test]
    fn reduce_overlapping_pairs() {
        assert_eq!(
            reduce_generator_pairs(&gens(1, &[1, 3, 3, 5])).unwrap(),
            gens(1, &[1, 2])
        );
    }

    #[test]
    fn reduce_rejects_odd_count_and_mixed_deltas() {
        assert!(matches!(
            reduce_generator_pairs(&gens(1, &[0])),
            Err(PairingError::Unpairable { .. })
        ));
        let mut m = gens(1, &[1]);
        m.merge(&gens(3, &[3]));
        assert!(reduce_generator_pairs(&m).is_err());
        assert!(matches!(
            reduce_generator_pairs(&gens(1, &[0, 2])),
            Err(PairingError::HalfIntegralReduction(0, 2))
        ));
    }

    #[test]
    fn special14_examples() {
        assert_eq!(
            pair_special14(Positive, 2, &GradedCurve::special14(1, -4)).unwrap(),
            gens(1, &[1, 2])
        );
        assert_eq!(
            pair_special14(Negative, 1, &GradedCurve::special14(1, -4)).unwrap(),
            gens(1, &[-3, -2])
        );
        assert_eq!(
            pair_special14(Positive, 2, &GradedCurve::special14(1, -2)).unwrap(),
            gens(1, &[2, 3])
        );
        assert!(pair_special14(Positive, 2, &GradedCurve::special23(1, -2)).is_err());
    }

    #[test]
    fn special23_examples() {
        assert_eq!(
            pair_special23(Positive, 2, &GradedCurve::special23(1, 0)).unwrap(),
            gens(1, &[-2, -1])
        );
        assert_eq!(
            pair_special23(Negative, 1, &GradedCurve::special23(1, 0)).unwrap(),
            gens(1, &[2, 3])
        );
        assert_eq!(
            pair_special23(Positive, 2, &GradedCurve::special23(1, -2)).unwrap(),
            gens(1, &[-3, -2])
        );
    }

    #[test]
    fn special_counts_are_twice_index() {
        for k in 1..6 {
            for c in 1..5 {
                for closure in [Positive, Negative] {
                    let p = pair_special14(closure, c, &GradedCurve::special14(k, -6)).unwrap();
                    assert_eq!(p.total_rank(), 2 * u64::from(k));
                    let p = pair_special23(closure, c, &GradedCurve::special23(k, 2)).unwrap();
                    assert_eq!(p.total_rank(), 2 * u64::from(k));
                }
            }
        }
    }

    #[test]
    fn neg_half_examples() {
        let p = pair_rational_neg_half(Negative, 1, &rat(-1, 4, -4, 4)).unwrap();
        assert_eq!(p, gens(1, &[-3, -2, -1, 0, 1, 2, 3]));
        assert_eq!(
            pair_rational_neg_half(Positive, 2, &rat(-1, 4, -4, 4)).unwrap(),
            gens(-1, &[0])
        );
        assert_eq!(
            pair_rational_neg_half(Positive, 1, &rat(-1, 6, -6, 6)).unwrap(),
            gens(1, &[-1, 0, 1])
        );
        assert!(pair_rational_neg_half(Positive, 1, &rat(-1, 6, -4, 8)).is_err());
    }

    #[test]
    fn pos_half_examples() {
        let p = pair_rational_pos_half(Positive, 2, &rat(1, 2, -2, 2)).unwrap();
        assert_eq!(p, gens(1, &[-3, -2, -1, 0, 1, 2, 3]));
        assert_eq!(
            pair_rational_pos_half(Negative, 2, &rat(1, 2, -2, 2)).unwrap(),
            gens(3, &[-1, 0, 1])
        );
        assert_eq!(
            pair_rational_pos_half(Negative, 1, &rat(1, 6, -6, 6)).unwrap(),
            gens(1, &[-1, 0, 1])
        );
    }

    #[test]
    fn general_examples() {
        let s = ReducedSlope::new(-3, 10).unwrap();
        let p = pair_rational_general(Positive, 2, s, 4).unwrap();
        assert_eq!(p, gens(-1, &[0, -1, 0, 1, 0]));
        assert_eq!(p.rank(0, MINUS_HALF), 3);

        let p = pair_rational_general(Negative, 1, s, 4).unwrap();
        assert_eq!(p.total_rank(), 19);
        assert_eq!(p.deltas(), vec![HALF]);
        assert_eq!(p.alexander_support(HALF).first(), Some(&-3));
        assert_eq!(p.negated(), p);

        assert_eq!(pair_rational_general(Positive, 1, s, 4).unwrap(), gens(1, &[0]));
    }

    #[test]
    fn general_rejects_tie_and_bad_slopes() {
        // A(2c+1) = B with A = 1, c = 1
        let s = ReducedSlope::new(-1, 3).unwrap();
        assert_eq!(pair_rational_general(Positive, 1, s, 4), Err(PairingError::SlopeTie));
        let s = ReducedSlope::new(3, 10).unwrap();
        assert!(pair_rational_general(Positive, 1, s, 4).is_err());
    }

    #[test]
    fn block_pattern_truncates_mid_block() {
        assert_eq!(block_pattern(5, 3, 0, -1), vec![0, -1, 0, 1, 0]);
        assert_eq!(block_pattern(7, 3, 0, 1), vec![0, 1, 0, 1, 2, 1, 2]);
        assert!(block_pattern(0, 3, 0, 1).is_empty());
    }

    #[test]
    fn dispatch() {
        let s14 = GradedCurve::special14(1, -4);
        assert_eq!(
            pair_curve(Positive, 2, &s14).unwrap(),
            pair_special14(Positive, 2, &s14).unwrap()
        );
        let r = rat(1, 2, -2, 2);
        assert_eq!(
            pair_curve(Negative, 1, &r).unwrap(),
            pair_rational_pos_half(Negative, 1, &r).unwrap()
        );
        let g = rat(-3, 10, -4, 4);
        assert_eq!(
            pair_curve(Positive, 2, &g).unwrap(),
            pair_rational_general(Positive, 2, ReducedSlope::new(-3, 10).unwrap(), 4).unwrap()
        );
        assert!(matches!(
            pair_curve(Positive, 2, &rat(2, 3, -2, 2)),
            Err(PairingError::UnsupportedSlope(_))
        ));
    }
}
