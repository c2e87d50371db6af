use proptest::prelude::*;
use redei_core::arith::is_prime_u64;
use redei_core::residue::{
    dyadic_hilbert, hilbert_symbol, local_symbols, place_symbol, quad_symbol, reduce, splitting_type, sqrt_mod,
};
use redei_core::ring::{class_numbers, fundamental_unit};
use redei_core::{Place, PrimeIdeal, QuadField, RingElement};

fn ideals_up_to(k: QuadField, ell_bound: u64) -> Vec<PrimeIdeal> {
    (3..=ell_bound)
        .filter(|&l| is_prime_u64(l))
        .flat_map(|l| splitting_type(k, l).unwrap().1)
        .collect()
}

/// Every square in O_k/𝔭 has a root that squares back, over all ℓ ≤ 500.
/// Inert fields above ℓ > 60 are sampled rather than exhausted.
#[test]
fn square_roots_mod_primes() {
    let k = QuadField::new(5).unwrap();
    for ideal in ideals_up_to(k, 500) {
        let f = ideal.residue_field();
        let ell = f.ell;
        let (cs, ds): (Vec<u64>, Vec<u64>) = if !f.inert {
            ((0..ell).collect(), vec![0])
        } else if ell <= 60 {
            ((0..ell).collect(), (0..ell).collect())
        } else {
            ((0..ell).step_by(7).collect(), (0..ell).step_by(11).collect())
        };
        for &c in &cs {
            for &d in &ds {
                let a = f.elem(c, d);
                if a.is_zero() || a.euler() != 1 {
                    continue;
                }
                let r = sqrt_mod(&ideal, &a).unwrap();
                assert_eq!(r.mul(&r), a, "{ideal}: √{a}");
            }
        }
    }
}

#[test]
fn narrow_class_one_forces_unit_sign() {
    for p in (5..1000u64).filter(|&p| p % 4 == 1 && is_prime_u64(p)) {
        let k = QuadField::new(p).unwrap();
        if class_numbers(k).h_plus != 1 {
            continue;
        }
        let eps = fundamental_unit(k).fundamental_unit;
        assert_eq!(place_symbol(&eps, &Place::Infinite2).unwrap(), -1, "p = {p}");
    }
}

fn odd_element(p: u64) -> impl Strategy<Value = RingElement> {
    (-60i64..60, -60i64..60)
        .prop_map(move |(a, b)| QuadField::new(p).unwrap().elem(a, b))
        .prop_filter("odd and nonzero", |e| !e.is_zero() && !e.field().int(2).divides(e))
}

fn field_and_pair() -> impl Strategy<Value = (RingElement, RingElement)> {
    prop::sample::select(vec![5u64, 13, 29, 37]).prop_flat_map(|p| (odd_element(p), odd_element(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_formula((a, b) in field_and_pair()) {
        let prod: i8 = local_symbols(&a, &b).unwrap().iter().map(|s| s.value).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_bimultiplicative(a in odd_element(5), b in odd_element(5), c in odd_element(5)) {
        prop_assert_eq!(dyadic_hilbert(&a, &b).unwrap(), dyadic_hilbert(&b, &a).unwrap());
        prop_assert_eq!(
            dyadic_hilbert(&(&a * &c), &b).unwrap(),
            dyadic_hilbert(&a, &b).unwrap() * dyadic_hilbert(&c, &b).unwrap()
        );
        for place in [Place::Infinite1, Place::Infinite2] {
            prop_assert_eq!(hilbert_symbol(&a, &b, &place).unwrap(), hilbert_symbol(&b, &a, &place).unwrap());
        }
    }

    #[test]
    fn quad_symbol_is_multiplicative(idx in 0usize..200, a in -5000i64..5000, b in -5000i64..5000, c in -5000i64..5000, d in -5000i64..5000) {
        let k = QuadField::new(5).unwrap();
        let ideals = ideals_up_to(k, 400);
        let ideal = &ideals[idx % ideals.len()];
        let (x, y) = (k.elem(a, b), k.elem(c, d));
        prop_assume!(!ideal.contains(&x) && !ideal.contains(&y));
        prop_assert_eq!(
            quad_symbol(&(&x * &y), ideal).unwrap(),
            quad_symbol(&x, ideal).unwrap() * quad_symbol(&y, ideal).unwrap()
        );
    }

    #[test]
    fn symbol_of_a_square_is_one(idx in 0usize..200, a in -5000i64..5000, b in -5000i64..5000) {
        let k = QuadField::new(13).unwrap();
        let ideals = ideals_up_to(k, 400);
        let ideal = &ideals[idx % ideals.len()];
        let x = k.elem(a, b);
        prop_assume!(!ideal.contains(&x));
        prop_assert_eq!(quad_symbol(&(&x * &x), ideal).unwrap(), 1);
        prop_assert_eq!(reduce(&(&x * &x), ideal), reduce(&x, ideal).mul(&reduce(&x, ideal)));
    }
}
