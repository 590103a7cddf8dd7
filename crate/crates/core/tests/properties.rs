use num_bigint::BigInt;
use proptest::prelude::*;

use pretzel_hfk::pairing::reduce_generator_pairs;
use pretzel_hfk::{
    compute_hfk, pretzel_alexander, ClosureSign, Generator, GeneratorMultiset, HalfInteger, LaurentPolynomial,
    SmallLaurentPolynomial, TangleParams,
};

fn poly() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..8)
        .prop_map(|terms| LaurentPolynomial::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn closure() -> impl Strategy<Value = ClosureSign> {
    prop_oneof![Just(ClosureSign::Positive), Just(ClosureSign::Negative)]
}

proptest! {
    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        if !q.is_zero() {
            prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
        }
    }

    #[test]
    fn small_and_big_coefficients_agree(terms in prop::collection::vec((-5i64..=5, -9i64..=9), 0..6)) {
        let small = SmallLaurentPolynomial::from_terms(terms.iter().copied());
        let big = LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))));
        prop_assert_eq!(small.to_string(), big.to_string());
        prop_assert_eq!((&small * &small).to_string(), (&big * &big).to_string());
    }

    #[test]
    fn reduction_inverts_pair_expansion(gradings in prop::collection::vec(-15i64..=15, 0..20), d in -1i64..=3) {
        let delta = HalfInteger::from_twice(2 * d + 1);
        let reduced = GeneratorMultiset::from_gradings(delta, gradings.iter().copied());
        let expanded: GeneratorMultiset = gradings
            .iter()
            .flat_map(|&s| [2 * s - 1, 2 * s + 1])
            .map(|x| Generator::new(x, delta))
            .collect();
        prop_assert_eq!(reduce_generator_pairs(&expanded).unwrap(), reduced);
    }

    #[test]
    fn tables_match_fox_beyond_the_sweep(a in 1u32..=10, b in 1u32..=10, c in 1u32..=10, s in closure()) {
        let params = TangleParams::new(a, b, c, s).unwrap();
        let table = compute_hfk(params).unwrap();
        let (p, q, r) = params.pretzel_triple();
        prop_assert_eq!(table.euler_characteristic().unwrap(), pretzel_alexander(p, q, r).unwrap());
        prop_assert_eq!(table.generators.negated(), table.generators);
    }
}
