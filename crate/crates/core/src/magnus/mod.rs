//! Free words, the truncated mod-2 Magnus expansion and the map ρ onto N₃(F₂).

mod fox;
pub mod sample;
mod series;
mod word;

pub use fox::mu2_fox;
pub use series::{expand, mu2, MultiIndex, TruncatedSeries};
pub use word::{signed, FreeWord};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const DEFAULT_TRUNCATION: usize = 4;

/// μ₂(I; w) by both routes; fails if they disagree.
pub fn mu2_validated(idx: &MultiIndex, w: &FreeWord) -> Result<bool> {
    let a = mu2(idx, w);
    let b = mu2_fox(idx, w);
    if a != b {
        return Err(Error::Inconsistent(format!("Fox and Magnus routes disagree on μ({idx}; {w})")));
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Exact(n) => write!(f, "{n}"),
            Depth::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

impl Depth {
    /// True if the word lies in the q-th Zassenhaus term.
    pub fn reaches(&self, q: usize) -> bool {
        match *self {
            Depth::Exact(n) => n >= q,
            Depth::AtLeast(n) => n >= q,
        }
    }
}

/// Smallest |I| with μ₂(I; w) = 1.
pub fn zassenhaus_depth(w: &FreeWord, degree: usize) -> Depth {
    match expand(w, degree).valuation() {
        Some(n) => Depth::Exact(n),
        None => Depth::AtLeast(degree),
    }
}

/// Upper unitriangular 3×3 matrix over F₂.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnipotentMatrix {
    pub e12: bool,
    pub e23: bool,
    pub e13: bool,
}

impl UnipotentMatrix {
    pub const IDENTITY: UnipotentMatrix = UnipotentMatrix {
        e12: false,
        e23: false,
        e13: false,
    };

    pub fn new(e12: bool, e23: bool, e13: bool) -> Self {
        UnipotentMatrix { e12, e23, e13 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        UnipotentMatrix {
            e12: self.e12 ^ o.e12,
            e23: self.e23 ^ o.e23,
            e13: self.e13 ^ o.e13 ^ (self.e12 & o.e23),
        }
    }

    pub fn inverse(&self) -> Self {
        UnipotentMatrix {
            e13: self.e13 ^ (self.e12 & self.e23),
            ..*self
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn order(&self) -> u32 {
        let mut m = *self;
        let mut n = 1;
        while !m.is_identity() {
            m = m.mul(self);
            n += 1;
        }
        n
    }

    /// All eight elements.
    pub fn all() -> Vec<UnipotentMatrix> {
        (0..8u8)
            .map(|b| UnipotentMatrix::new(b & 1 != 0, b & 2 != 0, b & 4 != 0))
            .collect()
    }
}

impl fmt::Display for UnipotentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |x: bool| x as u8;
        write!(f, "[[1 {} {}] [0 1 {}] [0 0 1]]", b(self.e12), b(self.e13), b(self.e23))
    }
}

/// s^a t^b in ⟨s, t | s² = t⁴ = 1, sts⁻¹ = t⁻¹⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct D8Word {
    pub s: u8,
    pub t: u8,
}

impl D8Word {
    pub fn matrix(&self) -> UnipotentMatrix {
        let mut m = UnipotentMatrix::IDENTITY;
        for _ in 0..self.s {
            m = m.mul(&D8_S);
        }
        for _ in 0..self.t {
            m = m.mul(&D8_T);
        }
        m
    }
}

impl fmt::Display for D8Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.s == 1 {
            parts.push("s".to_string());
        }
        match self.t {
            0 => {}
            1 => parts.push("t".into()),
            n => parts.push(format!("t^{n}")),
        }
        f.write_str(&parts.join(" "))
    }
}

pub const D8_S: UnipotentMatrix = UnipotentMatrix {
    e12: false,
    e23: true,
    e13: false,
};
pub const D8_T: UnipotentMatrix = UnipotentMatrix {
    e12: true,
    e23: true,
    e13: false,
};

/// Normal form s^a t^b of a matrix.
pub fn d8_translate(m: &UnipotentMatrix) -> D8Word {
    for s in 0..2 {
        for t in 0..4 {
            let w = D8Word { s, t };
            if w.matrix() == *m {
                return w;
            }
        }
    }
    unreachable!("s and t generate N₃(F₂)")
}

/// ρ(w) = (μ₂(1), μ₂(2), μ₂(12)).
pub fn rho(w: &FreeWord) -> UnipotentMatrix {
    assert!(w.rank() >= 2, "ρ needs at least two generators");
    let e = expand(w, 3);
    UnipotentMatrix {
        e12: e.coeff(&MultiIndex::new(&[1])),
        e23: e.coeff(&MultiIndex::new(&[2])),
        e13: e.coeff(&MultiIndex::new(&[1, 2])),
    }
}

/// x_i^{Np−1}·[x_i, y].
pub fn relator_word(i: usize, np: u64, y: &FreeWord) -> Result<FreeWord> {
    if np % 4 != 1 {
        return Err(Error::PreconditionFailed(format!("norm {np} is not 1 mod 4")));
    }
    let x = FreeWord::gen(y.rank(), i);
    let head = FreeWord::from_letters(y.rank(), [(i, ((np - 1) % (1 << 16)) as i64)]);
    Ok(head.mul(&FreeWord::commutator(&x, y)))
}

/// μ₂(12; y₃), requiring the linear coefficients of y₃ to vanish.
pub fn milnor_triple(y3: &FreeWord) -> Result<bool> {
    let e = expand(y3, 3);
    for i in [1, 2] {
        if e.coeff(&MultiIndex::new(&[i])) {
            return Err(Error::HypothesisViolated(format!("μ({i}; y) ≠ 0")));
        }
    }
    Ok(e.coeff(&MultiIndex::new(&[1, 2])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(3, s).unwrap()
    }

    #[test]
    fn depth_examples() {
        assert_eq!(zassenhaus_depth(&w("x1 x2 x1^-1 x2^-1"), 4), Depth::Exact(2));
        assert_eq!(zassenhaus_depth(&w("x1^2"), 4), Depth::Exact(2));
        assert_eq!(zassenhaus_depth(&w("x1^4"), 4), Depth::AtLeast(4));
        assert_eq!(zassenhaus_depth(&FreeWord::identity(2), 4).to_string(), "≥4");
    }

    #[test]
    fn rho_and_d8() {
        assert_eq!(rho(&w("x1")), UnipotentMatrix::new(true, false, false));
        assert!(rho(&w("x3")).is_identity());
        assert_eq!(d8_translate(&D8_S).to_string(), "s");
        assert_eq!(d8_translate(&D8_T).to_string(), "t");
        assert_eq!(d8_translate(&UnipotentMatrix::IDENTITY).to_string(), "");
        // dihedral relations
        assert_eq!(D8_S.order(), 2);
        assert_eq!(D8_T.order(), 4);
        assert_eq!(D8_S.mul(&D8_T).mul(&D8_S.inverse()), D8_T.inverse());
        let mut seen: Vec<_> = UnipotentMatrix::all().iter().map(d8_translate).map(|d| (d.s, d.t)).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
        for m in UnipotentMatrix::all() {
            assert!(m.mul(&m.inverse()).is_identity());
            assert!(4 % m.order() == 0);
        }
    }

    #[test]
    fn relators_and_milnor() {
        let y = w("x2 x3 x2^-1 x3^-1");
        let r = relator_word(1, 29, &y).unwrap();
        assert!(rho(&r).is_identity());
        assert!(zassenhaus_depth(&r, 4).reaches(3));
        assert!(relator_word(1, 7, &y).is_err());
        let head = FreeWord::from_letters(3, [(1, 12)]);
        assert!(matches!(zassenhaus_depth(&head, 4), Depth::AtLeast(4)));
        assert!(milnor_triple(&w("x1 x2 x1^-1 x2^-1")).unwrap());
        assert!(!milnor_triple(&w("x1^2 x2^2")).unwrap());
        assert!(!milnor_triple(&FreeWord::identity(3)).unwrap());
        assert!(milnor_triple(&w("x1")).is_err());
    }

    #[test]
    fn routes_agree() {
        let f = w("x1^3 x2^-1 x3 x1^-2 x2^5 x3^-1");
        for idx in MultiIndex::all(3, 3) {
            mu2_validated(&idx, &f).unwrap();
        }
    }
}

