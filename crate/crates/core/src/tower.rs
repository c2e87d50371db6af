//! Exact arithmetic in a tower of quadratic extensions of Q.
//!
//! Level i adjoins √dᵢ where dᵢ lies in level i. An element of the full
//! tower of depth n is a vector of 2ⁿ rationals indexed by bit masks: bit i
//! set means the basis monomial contains √dᵢ.

use crate::ring::RingElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, Default)]
pub struct Tower {
    radicands: Vec<Vec<BigRational>>,
    labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElement {
    coeffs: Vec<BigRational>,
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Tower {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn depth(&self) -> usize {
        self.radicands.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Adjoin √d for d in the current top level; returns the radical's index.
    pub fn adjoin(&mut self, label: impl Into<String>, d: &TowerElement) -> usize {
        let n = 1usize << self.depth();
        assert!(d.coeffs.len() <= n, "radicand lives above the current top");
        let mut c = d.coeffs.clone();
        c.resize(n, BigRational::zero());
        self.radicands.push(c);
        self.labels.push(label.into());
        self.depth() - 1
    }

    fn size(&self) -> usize {
        1 << self.depth()
    }

    /// Element from coefficients over the current basis (shorter vectors are padded).
    pub fn element(&self, mut coeffs: Vec<BigRational>) -> TowerElement {
        assert!(coeffs.len() <= self.size());
        coeffs.resize(self.size(), BigRational::zero());
        TowerElement { coeffs }
    }

    pub fn rational(&self, c: BigRational) -> TowerElement {
        self.element(vec![c])
    }

    pub fn int(&self, n: i64) -> TowerElement {
        self.rational(q(n, 1))
    }

    pub fn radical(&self, i: usize) -> TowerElement {
        let mut c = vec![BigRational::zero(); self.size()];
        c[1 << i] = BigRational::one();
        TowerElement { coeffs: c }
    }

    /// Embed (U + V√p)/2 assuming radical 0 is √p.
    pub fn from_ring(&self, e: &RingElement) -> TowerElement {
        let (u, v) = e.half();
        let two = BigInt::from(2);
        self.element(vec![
            BigRational::new(u, two.clone()),
            BigRational::new(v, two),
        ])
    }

    /// Re-pad an element built at a lower depth.
    pub fn lift(&self, e: &TowerElement) -> TowerElement {
        self.element(e.coeffs.clone())
    }

    pub fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        TowerElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        TowerElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, a: &TowerElement, c: &BigRational) -> TowerElement {
        TowerElement {
            coeffs: a.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        TowerElement {
            coeffs: self.mul_level(&a.coeffs, &b.coeffs, self.depth()),
        }
    }

    fn mul_level(&self, a: &[BigRational], b: &[BigRational], level: usize) -> Vec<BigRational> {
        if level == 0 {
            return vec![&a[0] * &b[0]];
        }
        let h = 1 << (level - 1);
        let (a0, a1) = a.split_at(h);
        let (b0, b1) = b.split_at(h);
        let d = &self.radicands[level - 1][..h];
        let a1b1 = self.mul_level(a1, b1, level - 1);
        let mut lo = self.mul_level(a0, b0, level - 1);
        for (x, y) in lo.iter_mut().zip(self.mul_level(&a1b1, d, level - 1)) {
            *x += y;
        }
        let mut hi = self.mul_level(a0, b1, level - 1);
        for (x, y) in hi.iter_mut().zip(self.mul_level(a1, b0, level - 1)) {
            *x += y;
        }
        lo.extend(hi);
        lo
    }

    /// Conjugate over the level below the top: √d_top ↦ −√d_top.
    pub fn conj_top(&self, a: &TowerElement) -> TowerElement {
        let h = self.size() / 2;
        TowerElement {
            coeffs: a
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i >= h { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn pow(&self, a: &TowerElement, e: u32) -> TowerElement {
        let mut acc = self.int(1);
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Σ cᵢ xⁱ with integer coefficients listed from the constant term up.
    pub fn eval_poly(&self, coeffs: &[i64], x: &TowerElement) -> TowerElement {
        let mut acc = self.int(0);
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.int(*c));
        }
        acc
    }

    /// Evaluate a polynomial whose coefficients are tower elements (constant term first).
    pub fn eval_poly_elems(&self, coeffs: &[TowerElement], x: &TowerElement) -> TowerElement {
        let mut acc = self.int(0);
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }
}

impl TowerElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// True if only the first 2^level coefficients are nonzero.
    pub fn lies_in_level(&self, level: usize) -> bool {
        self.coeffs.iter().skip(1 << level).all(|c| c.is_zero())
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}·r{i:b}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
