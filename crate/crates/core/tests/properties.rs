mod common;

use common::{gamma, pochhammer_valuations, small_primes_one_mod};
use hodge_core::genfun::{tau_set, weight_series};
use hodge_core::padic::primes_one_mod;
use hodge_core::{
    canonical_gammas, hodge_from_census, hodge_vector_zigzag, valuation_profile, weight_census,
    weight_w, ConeBasis, GammaVector, HypergeometricDatum, PadicContext, Rational,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// A canonical gamma vector with `L <= max_len` and an arbitrary reordering
/// of its positive and non-unit negative entries.
fn reordered_gamma(max_len: u64) -> impl Strategy<Value = GammaVector> {
    let all = canonical_gammas(max_len);
    (0..all.len(), any::<u64>()).prop_map(move |(i, seed)| {
        let g = &all[i];
        let mut pos = g.positives().to_vec();
        let mut neg = g.negatives().to_vec();
        let mut state = seed;
        let mut shuffle = |v: &mut Vec<u64>| {
            for k in (1..v.len()).rev() {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                v.swap(k, (state >> 33) as usize % (k + 1));
            }
        };
        shuffle(&mut pos);
        shuffle(&mut neg);
        GammaVector::new(pos, neg).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cone_hodge_independent_of_entry_order(g in reordered_gamma(7)) {
        let census = weight_census(&ConeBasis::new(&g), g.n());
        let h = hodge_from_census(&census, g.n()).unwrap();
        prop_assert_eq!(h, hodge_vector_zigzag(&g.canonical()));
        prop_assert!(ConeBasis::new(&g).relation_holds());
    }

    #[test]
    fn series_matches_census_any_order(g in reordered_gamma(6)) {
        let terms = g.n() + 2;
        let census: Vec<BigInt> = weight_census(&ConeBasis::new(&g), terms - 1)
            .into_iter()
            .map(BigInt::from)
            .collect();
        prop_assert_eq!(weight_series(&g, terms), census);
    }

    #[test]
    fn weight_is_periodic(g in reordered_gamma(10), num in 0i64..200, den in 1i64..60, shift in -3i64..3) {
        let t = Rational::new(num, den);
        let shifted = &t + &Rational::from(shift);
        prop_assert_eq!(weight_w(&g, &t), weight_w(&g, &shifted));
    }

    #[test]
    fn datum_text_roundtrip(g in reordered_gamma(10)) {
        let hd = g.to_datum();
        let parsed: HypergeometricDatum = hd.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &hd);
        prop_assert_eq!(parsed.to_gamma().unwrap().canonical(), g.canonical());
    }
}

#[test]
fn tau_set_size_is_distinct_alpha_values() {
    for g in canonical_gammas(10) {
        let mut alpha = g.to_datum().alpha().to_vec();
        alpha.dedup();
        assert_eq!(tau_set(&g), alpha, "{g}");
    }
}

#[test]
fn profile_matches_product_oracle_beyond_the_acceptance_range() {
    for text in [
        "4,4,2,-3,-6,-1",
        "5,2,-6,-1",
        "8,-4,-3,-1",
        "7,-1,-1,-1,-1,-1,-1,-1",
        "5,-4,-1",
        "4,2,-5,-1",
    ] {
        let g = gamma(text);
        for p in small_primes_one_mod(g.level(), 60).into_iter().take(2) {
            let ctx = PadicContext::of_gamma(&g, p).unwrap();
            assert_eq!(
                valuation_profile(&ctx).orders,
                pochhammer_valuations(ctx.datum(), p),
                "{g} p={p}"
            );
        }
    }
}

#[test]
fn prime_search_agrees_with_trial_division() {
    for level in 1..=40u64 {
        assert_eq!(
            primes_one_mod(level, 3),
            small_primes_one_mod(level, 2000)[..3],
            "{level}"
        );
    }
}
