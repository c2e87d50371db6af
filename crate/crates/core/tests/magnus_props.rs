use proptest::prelude::*;
use redei_core::magnus::{
    expand, milnor_triple, mu2, mu2_fox, relator_word, rho, zassenhaus_depth, Depth, FreeWord, MultiIndex,
    TruncatedSeries, UnipotentMatrix,
};

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=rank, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_len)
        .prop_map(move |letters| FreeWord::from_letters(rank, letters))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn expansion_of_inverse_is_inverse(w in word(3, 10), degree in 2usize..=5) {
        let one = TruncatedSeries::one(3, degree);
        prop_assert_eq!(expand(&w, degree).mul(&expand(&w.inverse(), degree)), one.clone());
        prop_assert_eq!(expand(&w.inverse(), degree).mul(&expand(&w, degree)), one);
    }

    #[test]
    fn expansion_is_multiplicative(v in word(3, 8), w in word(3, 8), degree in 2usize..=5) {
        prop_assert_eq!(expand(&v.mul(&w), degree), expand(&v, degree).mul(&expand(&w, degree)));
    }

    #[test]
    fn fox_route_matches_coefficients(w in word(3, 12)) {
        for idx in MultiIndex::all(3, 3).iter().filter(|i| !i.is_empty()) {
            prop_assert_eq!(mu2(idx, &w), mu2_fox(idx, &w), "μ({}; {})", idx, w);
        }
    }

    #[test]
    fn rho_is_a_homomorphism(v in word(2, 8), w in word(2, 8)) {
        prop_assert_eq!(rho(&v.mul(&w)), rho(&v).mul(&rho(&w)));
        prop_assert_eq!(rho(&v.inverse()), rho(&v).inverse());
    }

    #[test]
    fn conjugation_preserves_milnor_triple(a in word(3, 3), b in word(3, 3), g in word(3, 4), e in -3i64..=3) {
        let y = FreeWord::commutator(&a, &b).mul(&FreeWord::from_letters(3, [(3, e)]));
        prop_assert_eq!(milnor_triple(&y.conjugate_by(&g)).unwrap(), milnor_triple(&y).unwrap());
    }

    #[test]
    fn relators_are_killed_by_rho(a in word(3, 3), b in word(3, 3), i in 1usize..=3, k in 1u64..200) {
        let y = FreeWord::commutator(&a, &b).mul(&a.pow(2));
        let r = relator_word(i, 4 * k + 1, &y).unwrap();
        prop_assert_eq!(rho(&r), UnipotentMatrix::IDENTITY);
    }
}

/// (Z/4)² × Z/2 with (v, c)(v′, c′) = (v + v′, c + c′ + v₁v₂′). It is generated by
/// x₁ = ((1,0),0) and x₂ = ((0,1),0), has order 32 = |F/F₍₃₎| for rank two, and its
/// third Zassenhaus term is trivial, so the kernel of F → G is exactly F₍₃₎.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct G {
    v: [u8; 2],
    c: u8,
}

impl G {
    const ONE: G = G { v: [0, 0], c: 0 };

    fn mul(self, o: G) -> G {
        G {
            v: [(self.v[0] + o.v[0]) % 4, (self.v[1] + o.v[1]) % 4],
            c: (self.c + o.c + self.v[0] * o.v[1]) % 2,
        }
    }

    fn gen(i: usize, e: i64) -> G {
        let x = if i == 1 { G { v: [1, 0], c: 0 } } else { G { v: [0, 1], c: 0 } };
        (0..e.rem_euclid(4)).fold(G::ONE, |acc, _| acc.mul(x))
    }
}

fn all_words(max_len: usize) -> Vec<Vec<(usize, i64)>> {
    let letters = [(1, 1), (1, -1), (2, 1), (2, -1)];
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in letters {
                let mut w2: Vec<(usize, i64)> = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[test]
fn depth_matches_nilpotent_quotient() {
    let mut in_f3 = 0;
    for letters in all_words(6) {
        let image = letters.iter().fold(G::ONE, |acc, &(i, e)| acc.mul(G::gen(i, e)));
        let w = FreeWord::from_letters(2, letters);
        let expected = if image == G::ONE {
            in_f3 += 1;
            Depth::AtLeast(3)
        } else if image.v.iter().all(|x| x % 2 == 0) {
            Depth::Exact(2)
        } else {
            Depth::Exact(1)
        };
        assert_eq!(zassenhaus_depth(&w, 3), expected, "{w}");
    }
    assert!(in_f3 > 100, "{in_f3}");
}

#[test]
fn quotient_model_has_order_32() {
    let mut seen = vec![G::ONE];
    let mut i = 0;
    while i < seen.len() {
        for g in [G::gen(1, 1), G::gen(2, 1)] {
            let h = seen[i].mul(g);
            if !seen.contains(&h) {
                seen.push(h);
            }
        }
        i += 1;
    }
    assert_eq!(seen.len(), 32);
}
