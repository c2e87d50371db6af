use crate::error::{Error, Result};
use std::fmt;

/// A word in the free group on x₁..x_s, exponents taken mod 2¹⁶.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<(u8, u16)>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        assert!((1..=255).contains(&rank), "rank out of range");
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// x_i (1-based).
    pub fn gen(rank: usize, i: usize) -> Self {
        Self::from_letters(rank, [(i, 1)])
    }

    /// Build from (index, exponent) pairs, reducing to canonical form.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Self::identity(rank);
        for (i, e) in letters {
            assert!((1..=rank).contains(&i), "generator x{i} outside rank {rank}");
            w.push(i as u8, e.rem_euclid(1 << 16) as u16);
        }
        w
    }

    fn push(&mut self, i: u8, e: u16) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((j, f)) if *j == i => {
                let s = f.wrapping_add(e);
                if s == 0 {
                    self.letters.pop();
                } else {
                    *f = s;
                }
            }
            _ => self.letters.push((i, e)),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(u8, u16)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, o: &FreeWord) -> FreeWord {
        assert_eq!(self.rank, o.rank, "words over different alphabets");
        let mut w = self.clone();
        for &(i, e) in &o.letters {
            w.push(i, e);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        let mut w = Self::identity(self.rank);
        for &(i, e) in self.letters.iter().rev() {
            w.push(i, e.wrapping_neg());
        }
        w
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// [a, b] = a b a⁻¹ b⁻¹.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// g w g⁻¹.
    pub fn conjugate_by(&self, g: &FreeWord) -> FreeWord {
        g.mul(self).mul(&g.inverse())
    }

    /// Replace every occurrence of x_i by `r`.
    pub fn substitute(&self, i: usize, r: &FreeWord) -> FreeWord {
        let mut w = Self::identity(self.rank);
        for &(j, e) in &self.letters {
            if j as usize == i {
                w = w.mul(&r.pow(signed(e) as i64));
            } else {
                w.push(j, e);
            }
        }
        w
    }

    /// Parse `x1^3 x2^-1 x1`; `1` or the empty string is the identity.
    pub fn parse(rank: usize, s: &str) -> Result<FreeWord> {
        let err = |t: &str| Error::Parse(format!("bad letter {t:?} in word {s:?}"));
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let body = tok.strip_prefix('x').ok_or_else(|| err(tok))?;
            let (idx, exp) = match body.split_once('^') {
                Some((a, b)) => (a, b.parse::<i64>().map_err(|_| err(tok))?),
                None => (body, 1),
            };
            let i: usize = idx.parse().map_err(|_| err(tok))?;
            if i == 0 || i > rank {
                return Err(Error::Parse(format!("x{i} outside rank {rank}")));
            }
            letters.push((i, exp));
        }
        Ok(Self::from_letters(rank, letters))
    }
}

/// Exponent as a signed integer in [−2¹⁵, 2¹⁵).
pub fn signed(e: u16) -> i32 {
    e as i16 as i32
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, e)| match signed(e) {
                1 => format!("x{i}"),
                k => format!("x{i}^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
