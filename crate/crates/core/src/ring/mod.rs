//! The ring of integers of k = Q(√p), p ≡ 1 mod 4.
//!
//! Elements are stored in the integral basis {1, ω} with ω = (1+√p)/2, so
//! every algebraic integer has integer coordinates. Half-coordinates
//! (U, V) with a + bω = (U + V√p)/2 are used for display and for exact sign
//! tests at the two real places.

mod classno;
mod element;
mod parse;
mod unit;

pub use classno::{class_numbers, reduced_forms, ClassData};
pub use element::{congruent, sqrt_element, RingElement};
pub use unit::{fundamental_unit, UnitData};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// k = Q(√p) for a prime p ≡ 1 mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    p: u64,
}

impl QuadField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p % 4 != 1 {
            return Err(Error::InvalidField(format!("{p} is not 1 mod 4")));
        }
        // keep ω² = ω + m comfortably inside i64 intermediate ranges
        if p > (1 << 40) {
            return Err(Error::InvalidField(format!("{p} is too large")));
        }
        Ok(QuadField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Discriminant of O_k, equal to p.
    pub fn omega_disc(&self) -> u64 {
        self.p
    }

    /// m = (p−1)/4, so that ω² = ω + m.
    pub fn m(&self) -> BigInt {
        BigInt::from((self.p - 1) / 4)
    }

    /// 2 is inert exactly when p ≡ 5 mod 8.
    pub fn two_inert(&self) -> bool {
        self.p % 8 == 5
    }

    pub fn elem(&self, a: impl Into<BigInt>, b: impl Into<BigInt>) -> RingElement {
        RingElement::new(*self, a, b)
    }

    pub fn int(&self, a: impl Into<BigInt>) -> RingElement {
        RingElement::new(*self, a, 0)
    }

    /// Element (U + V√p)/2; `None` unless U ≡ V mod 2.
    pub fn half(&self, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Option<RingElement> {
        RingElement::from_half(*self, u.into(), v.into())
    }

    pub fn omega(&self) -> RingElement {
        self.elem(0, 1)
    }

    pub fn sqrt_p(&self) -> RingElement {
        self.elem(-1, 2)
    }

    pub fn parse(&self, s: &str) -> Result<RingElement> {
        parse::parse_element(*self, s)
    }
}

impl std::fmt::Display for QuadField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q(√{})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_gate() {
        assert!(QuadField::new(5).is_ok());
        assert!(QuadField::new(13).is_ok());
        assert!(matches!(QuadField::new(7), Err(Error::InvalidField(_))));
        assert!(matches!(QuadField::new(21), Err(Error::InvalidField(_))));
        assert!(matches!(QuadField::new(2), Err(Error::InvalidField(_))));
    }
}
