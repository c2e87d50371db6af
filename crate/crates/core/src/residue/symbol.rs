use super::dyadic::dyadic_hilbert;
use super::ideal::{reduce, splitting_type, PrimeIdeal};
use crate::arith::{factor, to_u64};
use crate::error::{Error, Result};
use crate::ring::RingElement;
use num_bigint::BigInt;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Place {
    Finite(PrimeIdeal),
    Infinite1,
    Infinite2,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(i) => write!(f, "{i}"),
            Place::Infinite1 => f.write_str("inf1"),
            Place::Infinite2 => f.write_str("inf2"),
        }
    }
}

/// (a/𝔭) by Euler's criterion in O_k/𝔭.
pub fn quad_symbol(a: &RingElement, ideal: &PrimeIdeal) -> Result<i8> {
    match reduce(a, ideal).euler() {
        0 => Err(Error::NotCoprime),
        s => Ok(s),
    }
}

/// Sign of a at a real place.
pub fn place_symbol(a: &RingElement, place: &Place) -> Result<i8> {
    let (s1, s2) = a.real_signs()?;
    match place {
        Place::Infinite1 => Ok(s1),
        Place::Infinite2 => Ok(s2),
        Place::Finite(_) => Err(Error::FinitePlace),
    }
}

/// (a, b) at an odd finite place or a real place.
pub fn hilbert_symbol(a: &RingElement, b: &RingElement, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    match place {
        Place::Finite(ideal) => {
            let (alpha, u) = ideal.unit_part(a)?;
            let (beta, w) = ideal.unit_part(b)?;
            let field = a.field();
            let mut t = RingElement::one(field);
            if alpha * beta % 2 == 1 {
                t = -t;
            }
            if beta % 2 == 1 {
                t = &t * &u;
            }
            if alpha % 2 == 1 {
                t = &t * &w;
            }
            quad_symbol(&t, ideal)
        }
        _ => {
            let sa = place_symbol(a, place)?;
            let sb = place_symbol(b, place)?;
            Ok(if sa < 0 && sb < 0 { -1 } else { 1 })
        }
    }
}

/// One local factor of the product formula.
#[derive(Debug, Clone, Serialize)]
pub struct LocalSymbol {
    pub place: String,
    pub value: i8,
}

/// Every local symbol (a, b)_v for v | 2ab∞.
pub fn local_symbols(a: &RingElement, b: &RingElement) -> Result<Vec<LocalSymbol>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let field = a.field();
    let mut out = Vec::new();
    let n: BigInt = a.norm() * b.norm();
    for (q, _) in factor(&n) {
        let ell = to_u64(&q).ok_or_else(|| Error::PreconditionFailed("norm factor too large".into()))?;
        if ell == 2 {
            continue;
        }
        for ideal in splitting_type(field, ell)?.1 {
            let place = Place::Finite(ideal);
            out.push(LocalSymbol {
                value: hilbert_symbol(a, b, &place)?,
                place: place.to_string(),
            });
        }
    }
    out.push(LocalSymbol {
        place: "dyadic".into(),
        value: dyadic_hilbert(a, b)?,
    });
    for place in [Place::Infinite1, Place::Infinite2] {
        out.push(LocalSymbol {
            value: hilbert_symbol(a, b, &place)?,
            place: place.to_string(),
        });
    }
    Ok(out)
}

/// Product of all local Hilbert symbols equals 1.
pub fn product_formula_check(a: &RingElement, b: &RingElement) -> Result<bool> {
    let prod: i8 = local_symbols(a, b)?.iter().map(|s| s.value).product();
    Ok(prod == 1)
}
