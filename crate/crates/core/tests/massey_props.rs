use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use redei_core::magnus::sample::{random_depth2_word, random_depth3_word};
use redei_core::magnus::{mu2, FreeWord, MultiIndex};
use redei_core::massey::{
    coboundary, coboundary_value, degree_one_perturbations, massey2_cochain, triple_massey_pairing, CochainFunctional,
};
use redei_core::Error;

fn word(max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1usize..=3, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_len)
        .prop_map(|letters| FreeWord::from_letters(3, letters))
}

fn functional() -> impl Strategy<Value = CochainFunctional> {
    let basis: Vec<MultiIndex> = MultiIndex::all(3, 3).into_iter().filter(|i| !i.is_empty()).collect();
    prop::sample::subsequence(basis.clone(), 0..=basis.len()).prop_map(CochainFunctional::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn length_two_product_is_the_cup_product(v in word(8), w in word(8)) {
        for i in 1..=3 {
            for j in 1..=3 {
                let (a, b) = (CochainFunctional::kronecker(i), CochainFunctional::kronecker(j));
                prop_assert_eq!(massey2_cochain(&a, &b).eval(&v, &w), a.eval(&v) & b.eval(&w));
            }
        }
    }

    #[test]
    fn coboundary_evaluates_as_the_group_coboundary(f in functional(), v in word(6), w in word(6)) {
        prop_assert_eq!(coboundary(&f).eval(&v, &w), coboundary_value(&f, &v, &w));
    }

    #[test]
    fn pairing_is_independent_of_the_defining_system(seed in any::<u64>()) {
        let f = random_depth3_word(&mut StdRng::seed_from_u64(seed), 3);
        let base = mu2(&MultiIndex::new(&[1, 2, 3]), &f);
        let perts = degree_one_perturbations(3);
        for l1 in &perts {
            for l2 in &perts {
                prop_assert_eq!(triple_massey_pairing(&f, l1, l2).unwrap(), base);
            }
        }
    }
}

#[test]
fn pairing_rejects_words_outside_the_third_term() {
    let mut rng = StdRng::seed_from_u64(17);
    let zero = CochainFunctional::zero();
    let mut rejected = 0;
    for _ in 0..200 {
        let f = random_depth2_word(&mut rng, 3);
        let shallow = MultiIndex::all(3, 2).iter().any(|i| !i.is_empty() && mu2(i, &f));
        match triple_massey_pairing(&f, &zero, &zero) {
            Err(Error::HypothesisViolated(_)) => {
                assert!(shallow, "{f}");
                rejected += 1;
            }
            Ok(_) => assert!(!shallow, "{f}"),
            Err(e) => panic!("{f}: {e}"),
        }
    }
    assert!(rejected > 50, "{rejected}");
}
