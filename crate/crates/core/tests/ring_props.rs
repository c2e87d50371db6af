use num_bigint::BigInt;
use num_integer::Roots;
use proptest::prelude::*;
use redei_core::arith::{is_prime_u64, legendre};
use redei_core::ring::{class_numbers, fundamental_unit, sqrt_element};
use redei_core::{QuadField, RingElement};

const FIELDS: [u64; 6] = [5, 13, 17, 29, 41, 229];

fn element() -> impl Strategy<Value = RingElement> {
    (prop::sample::select(&FIELDS[..]), -100_000i64..100_000, -100_000i64..100_000)
        .prop_map(|(p, a, b)| QuadField::new(p).unwrap().elem(a, b))
}

fn pair() -> impl Strategy<Value = (RingElement, RingElement)> {
    (prop::sample::select(&FIELDS[..]), -50_000i64..50_000, -50_000i64..50_000, -50_000i64..50_000, -50_000i64..50_000)
        .prop_map(|(p, a, b, c, d)| {
            let k = QuadField::new(p).unwrap();
            (k.elem(a, b), k.elem(c, d))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn norm_is_multiplicative((e, f) in pair()) {
        prop_assert_eq!((&e * &f).norm(), e.norm() * f.norm());
    }

    #[test]
    fn conjugation_is_a_ring_involution((e, f) in pair()) {
        prop_assert_eq!(e.conj().conj(), e.clone());
        prop_assert_eq!((&e * &f).conj(), &e.conj() * &f.conj());
        prop_assert_eq!((&e + &f).conj(), &e.conj() + &f.conj());
    }

    #[test]
    fn signs_are_multiplicative((e, f) in pair()) {
        prop_assume!(!e.is_zero() && !f.is_zero());
        let (a1, a2) = e.real_signs().unwrap();
        let (b1, b2) = f.real_signs().unwrap();
        prop_assert_eq!((&e * &f).real_signs().unwrap(), (a1 * b1, a2 * b2));
    }

    #[test]
    fn square_roots_round_trip(s in element()) {
        let r = sqrt_element(&(&s * &s)).expect("a square has a root");
        prop_assert!(r == s || r == -&s);
    }

    #[test]
    fn text_and_json_round_trip(e in element()) {
        let k = e.field();
        prop_assert_eq!(k.parse(&e.to_string()).unwrap(), e.clone());
        let json = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::from_str::<RingElement>(&json).unwrap(), e);
    }
}

fn primes_1_mod_4(bound: u64) -> impl Iterator<Item = u64> {
    (5..=bound).filter(|&p| p % 4 == 1 && is_prime_u64(p))
}

/// Some (u + v√p)/2 with |v| ≤ vmax has norm n, i.e. u² − pv² = 4n.
fn has_norm(p: u64, n: i128, vmax: u64) -> bool {
    (0..=vmax).any(|v| {
        let t = p as i128 * v as i128 * v as i128 + 4 * n;
        if t < 0 {
            return false;
        }
        let u = t.sqrt();
        u * u == t && (u + v as i128) % 2 == 0
    })
}

#[test]
fn fundamental_unit_is_smallest() {
    for p in primes_1_mod_4(200) {
        let u = fundamental_unit(QuadField::new(p).unwrap());
        let eps = &u.fundamental_unit;
        check_unit_norm(eps, u.unit_norm);
        let (_, v_eps) = eps.half();
        let v_eps: u64 = v_eps.try_into().unwrap();
        assert!(v_eps > 0);
        // a smaller unit > 1 would be (u + v√p)/2 with 0 < v < v_ε
        for v in 1..v_eps {
            let pv2 = p as u128 * v as u128 * v as u128;
            for t in [pv2 + 4, pv2 - 4] {
                let r = t.sqrt();
                assert!(r * r != t || (r + v as u128) % 2 == 1, "p = {p}: unit with v = {v} below ε = {eps}");
            }
        }
    }
}

fn check_unit_norm(eps: &RingElement, norm: i8) {
    assert_eq!(eps.norm(), BigInt::from(norm));
    let k = eps.field();
    assert_eq!(eps * &eps.conj(), k.int(norm));
}

/// Class number oracle: the class group is generated by primes below the
/// Minkowski bound √p/2, so it is trivial iff each of them is principal.
#[test]
fn class_numbers_against_minkowski_oracle() {
    for p in primes_1_mod_4(200) {
        let k = QuadField::new(p).unwrap();
        let eps = fundamental_unit(k).fundamental_unit;
        let (u_eps, _) = eps.half();
        // ι₁(ε) < u_ε, so generators can be taken with |v| ≤ (ε + 1)·√(ℓ/p)
        let eps_bound: u64 = u_eps.try_into().unwrap();
        let minkowski = ((p as f64).sqrt() / 2.0).floor() as u64;
        let mut all_principal = true;
        for l in (2..=minkowski).filter(|&l| is_prime_u64(l)) {
            let splits = if l == 2 { p % 8 == 1 } else { legendre(p % l, l) == 1 };
            if !splits {
                continue;
            }
            let vmax = (eps_bound + 2) * ((l as f64 / p as f64).sqrt().ceil() as u64 + 1);
            if !has_norm(p, l as i128, vmax) && !has_norm(p, -(l as i128), vmax) {
                all_principal = false;
            }
        }
        let c = class_numbers(k);
        if all_principal {
            assert_eq!(c.h, 1, "p = {p}");
        } else {
            assert!(c.h > 1, "p = {p}");
        }
        // for prime p ≡ 1 mod 4 the equation u² − pv² = −4 is always solvable
        assert!(has_norm(p, -1, eps.half().1.try_into().unwrap()), "p = {p}");
        assert_eq!(c.h_plus, c.h, "p = {p}");
    }
}
