//! Residue fields O_k/𝔭 as F_ℓ or F_ℓ[θ]/(θ² − p).

use crate::arith::{inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};
use std::fmt;

/// Shape of a residue field: F_ℓ, or F_ℓ² with θ² = p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueField {
    pub ell: u64,
    pub inert: bool,
    /// p mod ℓ (the value of θ²).
    pub theta_sq: u64,
}

impl ResidueField {
    pub fn order(&self) -> u128 {
        if self.inert {
            self.ell as u128 * self.ell as u128
        } else {
            self.ell as u128
        }
    }

    pub fn elem(&self, c: u64, d: u64) -> ResidueElement {
        ResidueElement {
            c: c % self.ell,
            d: if self.inert { d % self.ell } else { 0 },
            field: *self,
        }
    }

    pub fn zero(&self) -> ResidueElement {
        self.elem(0, 0)
    }

    pub fn one(&self) -> ResidueElement {
        self.elem(1, 0)
    }

    fn nonresidue(&self) -> ResidueElement {
        let l = self.ell;
        if self.inert {
            for c in 0..l {
                let z = self.elem(c, 1);
                if z.euler() == -1 {
                    return z;
                }
            }
        } else {
            for c in 2..l {
                if pow_mod(c, (l - 1) / 2, l) == l - 1 {
                    return self.elem(c, 0);
                }
            }
        }
        unreachable!("every odd finite field has a nonresidue")
    }
}

/// c + dθ in a residue field (d = 0 when the field is F_ℓ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueElement {
    pub c: u64,
    pub d: u64,
    pub field: ResidueField,
}

impl ResidueElement {
    pub fn is_zero(&self) -> bool {
        self.c == 0 && self.d == 0
    }

    pub fn is_one(&self) -> bool {
        self.c == 1 && self.d == 0
    }

    pub fn add(&self, o: &Self) -> Self {
        let l = self.field.ell;
        self.field.elem((self.c + o.c) % l, (self.d + o.d) % l)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let l = self.field.ell;
        self.field.elem((self.c + l - o.c) % l, (self.d + l - o.d) % l)
    }

    pub fn neg(&self) -> Self {
        self.field.zero().sub(self)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let l = self.field.ell;
        if !self.field.inert {
            return self.field.elem(mul_mod(self.c, o.c, l), 0);
        }
        let dd = mul_mod(mul_mod(self.d, o.d, l), self.field.theta_sq, l);
        let c = (mul_mod(self.c, o.c, l) + dd) % l;
        let d = (mul_mod(self.c, o.d, l) + mul_mod(self.d, o.c, l)) % l;
        self.field.elem(c, d)
    }

    pub fn scale(&self, k: u64) -> Self {
        let l = self.field.ell;
        self.field.elem(mul_mod(self.c, k % l, l), mul_mod(self.d, k % l, l))
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut acc = self.field.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if !self.field.inert {
            return Some(self.field.elem(inv_mod(self.c, self.field.ell), 0));
        }
        Some(self.pow(self.field.order() - 2))
    }

    /// Euler criterion: 1 for nonzero squares, −1 for nonsquares, 0 for zero.
    pub fn euler(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.pow((self.field.order() - 1) / 2).is_one() {
            1
        } else {
            -1
        }
    }

    /// Multiplicative order (nonzero elements only).
    pub fn order(&self) -> u128 {
        assert!(!self.is_zero());
        let n = self.field.order() - 1;
        let mut ord = n;
        let mut m = n;
        let mut q = 2u128;
        while q * q <= m {
            if m % q == 0 {
                while m % q == 0 {
                    m /= q;
                }
                while ord % q == 0 && self.pow(ord / q).is_one() {
                    ord /= q;
                }
            }
            q += 1;
        }
        if m > 1 && self.pow(ord / m).is_one() {
            ord /= m;
        }
        ord
    }

    fn key(&self) -> (u64, u64) {
        (self.c, self.d)
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.field.inert || self.d == 0 {
            write!(f, "{}", self.c)
        } else if self.c == 0 {
            write!(f, "{}θ", self.d)
        } else {
            write!(f, "{}+{}θ", self.c, self.d)
        }
    }
}

/// Square root by Tonelli–Shanks; the lexicographically smaller of ±s.
pub fn sqrt_in(a: &ResidueElement) -> Result<ResidueElement> {
    let field = a.field;
    if a.is_zero() {
        return Ok(*a);
    }
    if a.euler() != 1 {
        return Err(Error::NonResidue);
    }
    let n = field.order() - 1;
    let s = n.trailing_zeros();
    let q = n >> s;
    let mut m = s;
    let mut c = field.nonresidue().pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow((q + 1) / 2);
    while !t.is_one() {
        let mut i = 0;
        let mut tt = t;
        while !tt.is_one() {
            tt = tt.mul(&tt);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = b.mul(&b);
        }
        m = i;
        c = b.mul(&b);
        t = t.mul(&c);
        r = r.mul(&b);
    }
    let neg = r.neg();
    Ok(if neg.key() < r.key() { neg } else { r })
}
