use redei_core::arith::legendre;
use redei_core::conic::{distinct_solutions, ConicOptions};
use redei_core::redei::{
    build_redei, build_redei_with, frobenius_class, normalized, pair_admissible, symbol_from_solution, triple_admissible,
    triple_report, triple_report_from,
};
use redei_core::residue::quad_symbol;
use redei_core::search::{search, usable_ideals, SearchOptions};
use redei_core::{Error, PrimeIdeal, QuadField};
use std::collections::BTreeMap;

fn q5() -> QuadField {
    QuadField::new(5).unwrap()
}

fn id(s: &str) -> PrimeIdeal {
    PrimeIdeal::from_generator(&q5().parse(s).unwrap()).unwrap()
}

#[test]
fn borromean_symbol_is_independent_of_the_solution() {
    let (p1, p2, p3) = (id("33+8√5"), id("17"), id("(23+5√5)/2"));
    let data = build_redei(&p1, &p2).unwrap();
    let p3n = p3.with_generator(normalized(&p3).unwrap()).unwrap();
    let opts = ConicOptions {
        avoid: Some(p3.clone()),
        ..ConicOptions::default()
    };
    let sols = distinct_solutions(&data.pi1, &data.pi2, 8, &opts).unwrap();
    assert!(sols.len() >= 5, "{}", sols.len());
    for s in &sols {
        for negate in [false, true] {
            assert_eq!(symbol_from_solution(s, &data.pi1, &p3n, negate).unwrap().0, -1, "{s:?}");
        }
    }
}

fn records(bound: u64) -> BTreeMap<(PrimeIdeal, PrimeIdeal), Vec<(PrimeIdeal, i8)>> {
    let opts = SearchOptions {
        norm_bound: bound,
        ..SearchOptions::default()
    };
    let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for r in search(q5(), &opts).unwrap() {
        out.entry((r.p1, r.p2)).or_default().push((r.p3, r.symbol));
    }
    out
}

#[test]
fn frobenius_corner_matches_symbol() {
    for ((p1, p2), rs) in records(500) {
        let data = build_redei(&p1, &p2).unwrap();
        for (p3, symbol) in rs {
            let m = frobenius_class(&data, &p3).unwrap().matrix;
            assert!(!m.e12 && !m.e23);
            assert_eq!(m.e13, symbol == -1, "[{p1}, {p2}, {p3}]");
            assert_eq!(m.is_identity(), symbol == 1);
        }
    }
}

#[test]
fn frobenius_linear_entries_follow_quadratic_symbols() {
    let (p1, p2) = (id("33+8√5"), id("17"));
    let data = build_redei(&p1, &p2).unwrap();
    let mut seen = [false; 3];
    for p3 in usable_ideals(q5(), 600).unwrap() {
        if p3 == p1 || p3 == p2 {
            assert_eq!(frobenius_class(&data, &p3), Err(Error::RamifiedPrime));
            continue;
        }
        let m = frobenius_class(&data, &p3).unwrap().matrix;
        let e12 = quad_symbol(&data.pi1, &p3).unwrap() == -1;
        let e23 = quad_symbol(&data.pi2, &p3).unwrap() == -1;
        assert_eq!((m.e12, m.e23), (e12, e23), "{p3}");
        if e12 || e23 {
            assert!(!m.e13, "representative should have e13 = 0 at {p3}");
            assert!(m.order() > 1);
        }
        seen[usize::from(e12) + usize::from(e23)] = true;
    }
    assert!(seen.iter().all(|&s| s), "{seen:?}");
}

/// For two inert primes ℓ₁, ℓ₂ with (ℓ₁/ℓ₂) = 1 the rational construction must
/// agree with the conic route; triple_report_from raises Inconsistent otherwise.
#[test]
fn composite_route_agrees_on_double_inert_pairs() {
    let inert: Vec<PrimeIdeal> = [13u64, 17, 37, 53, 73, 97]
        .iter()
        .map(|l| PrimeIdeal::parse(q5(), &l.to_string()).unwrap())
        .collect();
    let thirds = usable_ideals(q5(), 3000).unwrap();
    let (mut pairs, mut checked) = (0, 0);
    for p1 in &inert {
        for p2 in &inert {
            if p1 == p2 || !pair_admissible(p1, p2).ok {
                continue;
            }
            let data = build_redei_with(p1, p2, &ConicOptions::default()).unwrap();
            let (l1, l2) = (p1.ell(), p2.ell());
            assert_eq!(data.composite.is_some(), legendre(l1 % l2, l2) == 1, "({p1}, {p2})");
            if data.composite.is_none() {
                continue;
            }
            pairs += 1;
            for p3 in thirds.iter().filter(|p3| triple_admissible(p1, p2, p3).ok) {
                triple_report_from(&data, p3, &ConicOptions::default()).unwrap();
                checked += 1;
            }
        }
    }
    assert!(pairs >= 2 && checked >= 10, "{pairs} pairs, {checked} third primes");
}

#[test]
fn symbol_is_symmetric_in_the_first_two_primes() {
    for ((p1, p2), rs) in records(700) {
        for (p3, symbol) in rs {
            assert_eq!(triple_report(&p2, &p1, &p3).unwrap().symbol, symbol, "[{p1}, {p2}, {p3}]");
        }
    }
}

#[test]
fn admissibility_reasons() {
    let (p1, p2) = (id("33+8√5"), id("17"));
    assert!(pair_admissible(&p1, &p2).ok);
    let bad = pair_admissible(&p1, &p1);
    assert!(!bad.ok);
    assert!(bad.reasons.iter().any(|r| r.contains("repeated")));
    let p11 = PrimeIdeal::parse(q5(), "(11,split,4)").unwrap();
    let r = pair_admissible(&p11, &p2);
    assert!(!r.ok, "{:?}", r.reasons);
}

/// The normalized associates of π differ by powers of ε⁶ = 9+4√5, which is
/// totally positive and 1 mod 4. Re-solving with shifted generators must not
/// change the symbol.
#[test]
fn symbol_is_independent_of_the_normalized_generator() {
    let k = q5();
    let e6 = k.parse("9+4√5").unwrap();
    let shifts = [e6.unit_inverse().unwrap(), k.int(1), e6.clone()];
    let mut checked = 0;
    for ((p1, p2), rs) in records(400) {
        let data = build_redei(&p1, &p2).unwrap();
        for u in &shifts {
            for v in &shifts {
                let (pi1, pi2) = (&data.pi1 * u, &data.pi2 * v);
                assert!(pi1.is_totally_positive() && pi2.is_totally_positive());
                for (p3, symbol) in &rs {
                    let opts = ConicOptions {
                        avoid: Some(p3.clone()),
                        height_bound: 400,
                    };
                    let sol = distinct_solutions(&pi1, &pi2, 1, &opts).unwrap().remove(0);
                    let p3n = p3.with_generator(normalized(p3).unwrap()).unwrap();
                    let (s, _, _) = symbol_from_solution(&sol, &pi1, &p3n, false).unwrap();
                    assert_eq!(s, *symbol, "[{p1}, {p2}, {p3}] with π₁ = {pi1}, π₂ = {pi2}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 100, "{checked}");
}
