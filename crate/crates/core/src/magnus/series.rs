use super::word::FreeWord;
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A multi-index (i₁, …, iₙ) over generators 1..s.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(pub Vec<u8>);

impl MultiIndex {
    pub fn new(idx: &[usize]) -> Self {
        MultiIndex(idx.iter().map(|&i| i as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All (J, K) with JK = self, both nonempty.
    pub fn proper_splits(&self) -> impl Iterator<Item = (MultiIndex, MultiIndex)> + '_ {
        (1..self.len()).map(move |c| (MultiIndex(self.0[..c].to_vec()), MultiIndex(self.0[c..].to_vec())))
    }

    pub fn concat(&self, o: &MultiIndex) -> MultiIndex {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        MultiIndex(v)
    }

    /// Every multi-index over 1..=s with length in 1..=max_len, in graded order.
    pub fn all(s: usize, max_len: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut layer = vec![MultiIndex(Vec::new())];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * s);
            for m in &layer {
                for i in 1..=s {
                    let mut v = m.0.clone();
                    v.push(i as u8);
                    next.push(MultiIndex(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Parse `1,2,3` or `123` (single-digit generators).
    pub fn parse(s: &str) -> Result<MultiIndex> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Parse(format!("bad multi-index {s:?}"));
        let parts: Vec<usize> = if t.contains(',') {
            t.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            t.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if parts.iter().any(|&i| i == 0 || i > 255) {
            return Err(bad());
        }
        Ok(MultiIndex::new(&parts))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Element of F₂⟨⟨X₁..X_s⟩⟩ modulo degree ≥ D, stored densely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    rank: usize,
    degree: usize,
    coeffs: Vec<bool>,
}

impl TruncatedSeries {
    fn offset(rank: usize, len: usize) -> usize {
        (0..len).map(|l| rank.pow(l as u32)).sum()
    }

    fn slot(&self, idx: &[u8]) -> usize {
        let mut k = 0;
        for &i in idx {
            k = k * self.rank + (i as usize - 1);
        }
        Self::offset(self.rank, idx.len()) + k
    }

    pub fn zero(rank: usize, degree: usize) -> Self {
        assert!(degree >= 1, "truncation degree must be positive");
        TruncatedSeries {
            rank,
            degree,
            coeffs: vec![false; Self::offset(rank, degree)],
        }
    }

    pub fn one(rank: usize, degree: usize) -> Self {
        let mut s = Self::zero(rank, degree);
        s.coeffs[0] = true;
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of X_I; zero for |I| ≥ D.
    pub fn coeff(&self, idx: &MultiIndex) -> bool {
        if idx.len() >= self.degree {
            return false;
        }
        assert!(idx.0.iter().all(|&i| i >= 1 && (i as usize) <= self.rank), "index outside rank");
        self.coeffs[self.slot(&idx.0)]
    }

    pub fn set(&mut self, idx: &MultiIndex, v: bool) {
        if idx.len() < self.degree {
            let k = self.slot(&idx.0);
            self.coeffs[k] = v;
        }
    }

    /// Nonzero terms in graded order.
    pub fn support(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if self.coeffs[0] {
            out.push(MultiIndex(Vec::new()));
        }
        out.extend(MultiIndex::all(self.rank, self.degree - 1).into_iter().filter(|m| self.coeff(m)));
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a ^ b).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let a = self.support();
        let b = o.support();
        let mut out = Self::zero(self.rank, self.degree);
        for j in &a {
            for k in &b {
                if j.len() + k.len() < self.degree {
                    let s = out.slot(&j.concat(k).0);
                    out.coeffs[s] ^= true;
                }
            }
        }
        out
    }

    fn check(&self, o: &Self) {
        assert!(self.rank == o.rank && self.degree == o.degree, "series shapes differ");
    }

    /// (1 + X_i)^e with e read mod 2¹⁶; C(e, k) is odd iff k's bits lie inside e's.
    pub fn generator_power(rank: usize, degree: usize, i: usize, e: u16) -> Self {
        let mut s = Self::zero(rank, degree);
        for k in 0..degree {
            if (k as u64) & !(e as u64) == 0 {
                s.set(&MultiIndex(vec![i as u8; k]), true);
            }
        }
        s
    }

    /// Lowest degree of a nonzero term of self − 1, if any below D.
    pub fn valuation(&self) -> Option<usize> {
        let one = Self::one(self.rank, self.degree);
        self.add(&one).support().first().map(|m| m.len())
    }

    /// Sorted `I:bit` lines for every index of length 0..D−1.
    pub fn dump(&self) -> String {
        let mut lines = vec![format!("():{}", self.coeffs[0] as u8)];
        for m in MultiIndex::all(self.rank, self.degree - 1) {
            lines.push(format!("({m}):{}", self.coeff(&m) as u8));
        }
        lines.join("\n")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.0.iter().map(|i| format!("X{i}")).collect::<String>()
                }
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// The mod-2 Magnus expansion of w, truncated below degree D.
pub fn expand(w: &FreeWord, degree: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(w.rank(), degree);
    for &(i, e) in w.letters() {
        acc = acc.mul(&TruncatedSeries::generator_power(w.rank(), degree, i as usize, e));
    }
    acc
}

/// μ₂(I; w).
pub fn mu2(idx: &MultiIndex, w: &FreeWord) -> bool {
    expand(w, idx.len() + 1).coeff(idx)
}
