//! Hilbert symbol at the dyadic place when 2 is inert (p ≡ 5 mod 8).
//!
//! With v(a), v(b) ∈ {0, 1} after removing even powers of 2, the form
//! z² = ax² + by² is isotropic over the completion iff it has a primitive
//! solution modulo 2⁶, searched over x, y, z mod 2⁵.

use crate::error::{Error, Result};
use crate::ring::RingElement;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

const BITS: u32 = 6;
const MOD: u64 = 1 << BITS;
const SIDE: u64 = 1 << (BITS - 1);

#[derive(Clone, Copy)]
struct Ring64 {
    m: u64,
}

impl Ring64 {
    fn mul(&self, x: (u64, u64), y: (u64, u64)) -> (u64, u64) {
        let bd = x.1 * y.1 % MOD;
        ((x.0 * y.0 + bd * self.m) % MOD, (x.0 * y.1 + x.1 * y.0 + bd) % MOD)
    }

    fn idx(v: (u64, u64)) -> usize {
        (v.0 * MOD + v.1) as usize
    }
}

struct Squares {
    all: Vec<bool>,
    unit: Vec<bool>,
    // (x², x is a unit) for x over (Z/2⁵)²
    table: Vec<((u64, u64), bool)>,
}

fn squares(ring: Ring64) -> Squares {
    let n = (MOD * MOD) as usize;
    let mut all = vec![false; n];
    let mut unit = vec![false; n];
    let mut table = Vec::with_capacity((SIDE * SIDE) as usize);
    for a in 0..SIDE {
        for b in 0..SIDE {
            let sq = ring.mul((a, b), (a, b));
            let is_unit = a % 2 == 1 || b % 2 == 1;
            all[Ring64::idx(sq)] = true;
            if is_unit {
                unit[Ring64::idx(sq)] = true;
            }
            table.push((sq, is_unit));
        }
    }
    Squares { all, unit, table }
}

/// Strip factors of 4 and reduce mod 2⁶.
fn prepare(e: &RingElement) -> (u64, u64) {
    let tz = match (e.a().trailing_zeros(), e.b().trailing_zeros()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => 0,
    };
    let k = BigInt::from(1u8) << (2 * (tz / 2));
    let red = |x: &BigInt| (x / &k).mod_floor(&BigInt::from(MOD)).to_u64().unwrap();
    (red(e.a()), red(e.b()))
}

fn value_set(ring: Ring64, sq: &Squares, a: (u64, u64)) -> Vec<((u64, u64), bool)> {
    let mut seen = HashMap::new();
    for &(s, unit) in &sq.table {
        let v = ring.mul(a, s);
        let e = seen.entry(v).or_insert(0u8);
        *e |= if unit { 1 } else { 2 };
    }
    let mut out = Vec::new();
    for (v, flags) in seen {
        if flags & 1 != 0 {
            out.push((v, true));
        }
        if flags & 2 != 0 {
            out.push((v, false));
        }
    }
    out
}

/// (a, b) at the prime above 2, for p ≡ 5 mod 8.
pub fn dyadic_hilbert(a: &RingElement, b: &RingElement) -> Result<i8> {
    let field = a.field();
    if !field.two_inert() {
        return Err(Error::PreconditionFailed(format!(
            "2 is not inert in {field}; the dyadic search needs p ≡ 5 mod 8"
        )));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (ra, rb) = (prepare(a), prepare(b));
    type Key = (u64, (u64, u64), (u64, u64));
    static MEMO: OnceLock<Mutex<HashMap<Key, i8>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (field.p(), ra.min(rb), ra.max(rb));
    if let Some(v) = memo.lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let ring = Ring64 {
        m: ((field.p() - 1) / 4) % MOD,
    };
    let sq = squares(ring);
    let va = value_set(ring, &sq, ra);
    let vb = value_set(ring, &sq, rb);
    let mut found = false;
    'outer: for &(x, xu) in &va {
        for &(y, yu) in &vb {
            let s = Ring64::idx(((x.0 + y.0) % MOD, (x.1 + y.1) % MOD));
            let ok = if xu || yu { sq.all[s] } else { sq.unit[s] };
            if ok {
                found = true;
                break 'outer;
            }
        }
    }
    let v = if found { 1 } else { -1 };
    memo.lock().unwrap().insert(key, v);
    Ok(v)
}
