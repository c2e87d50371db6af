use super::{QuadField, RingElement};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitData {
    pub fundamental_unit: RingElement,
    pub unit_norm: i8,
}

/// Smallest unit ε > 1 (at ∞₁), read off the continued fraction of ω.
pub fn fundamental_unit(field: QuadField) -> UnitData {
    static CACHE: OnceLock<Mutex<HashMap<u64, UnitData>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(u) = cache.lock().unwrap().get(&field.p()) {
        return u.clone();
    }
    let u = compute(field);
    cache.lock().unwrap().insert(field.p(), u.clone());
    u
}

fn compute(field: QuadField) -> UnitData {
    let p = field.p() as i128;
    let s = (field.p()).sqrt() as i128;
    let m = field.m();
    // ω = (P + √p)/Q
    let (mut pp, mut qq) = (1i128, 2i128);
    let (mut h1, mut h2) = (BigInt::one(), BigInt::from(0));
    let (mut k1, mut k2) = (BigInt::from(0), BigInt::one());
    loop {
        let a = Integer::div_floor(&(pp + s), &qq);
        let h = &h1 * a + &h2;
        let k = &k1 * a + &k2;
        let n = &h * &h - &h * &k - &m * &k * &k;
        if n.abs().is_one() {
            // h − kω̄ = (h − k) + kω
            let eps = RingElement::new(field, &h - &k, k);
            let unit_norm = if n.is_positive() { 1 } else { -1 };
            return UnitData {
                fundamental_unit: eps,
                unit_norm,
            };
        }
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
        pp = a * qq - pp;
        qq = (p - pp * pp) / qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let k5 = QuadField::new(5).unwrap();
        let u = fundamental_unit(k5);
        assert_eq!(u.fundamental_unit, k5.omega());
        assert_eq!(u.unit_norm, -1);

        let k13 = QuadField::new(13).unwrap();
        let u = fundamental_unit(k13);
        assert_eq!(u.fundamental_unit, k13.half(3, 1).unwrap());
        assert_eq!(u.unit_norm, -1);

        let k29 = QuadField::new(29).unwrap();
        let u = fundamental_unit(k29);
        assert_eq!(u.fundamental_unit, k29.half(5, 1).unwrap());
        assert_eq!(u.unit_norm, -1);
    }

    #[test]
    fn larger_unit() {
        // Q(√181): ε = (1305 + 97√181)/2
        let k = QuadField::new(181).unwrap();
        let u = fundamental_unit(k);
        assert_eq!(u.fundamental_unit, k.half(1305, 97).unwrap());
        assert_eq!(u.unit_norm, -1);
    }
}
