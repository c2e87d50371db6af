//! Mod-2 Fox calculus on positive words.
//!
//! Over F₂ the Magnus coefficients of a word only see exponents modulo a
//! power of two exceeding |I|, so every word is first rewritten with
//! nonnegative exponents. Group ring elements are then sets of positive
//! words with F₂ multiplicities.

use super::series::MultiIndex;
use super::word::FreeWord;
use std::collections::HashSet;

type GroupRingElement = HashSet<Vec<u8>>;

fn toggle(set: &mut GroupRingElement, w: Vec<u8>) {
    if !set.remove(&w) {
        set.insert(w);
    }
}

/// Letters of w with exponents reduced into [0, 2^m), 2^m > n.
fn positive_letters(w: &FreeWord, n: usize) -> Vec<u8> {
    let mut m = 1u32;
    while (1usize << m) <= n {
        m += 1;
    }
    let modulus = 1u32 << m;
    let mut out = Vec::new();
    for &(i, e) in w.letters() {
        for _ in 0..(e as u32 % modulus) {
            out.push(i);
        }
    }
    out
}

/// D_i on a positive word: the sum of prefixes preceding each occurrence of x_i.
fn derive(set: &GroupRingElement, i: u8) -> GroupRingElement {
    let mut out = GroupRingElement::new();
    for w in set {
        for (t, &c) in w.iter().enumerate() {
            if c == i {
                toggle(&mut out, w[..t].to_vec());
            }
        }
    }
    out
}

/// μ₂(I; w) = ε(D_{i₁} ⋯ D_{iₙ} w) mod 2.
pub fn mu2_fox(idx: &MultiIndex, w: &FreeWord) -> bool {
    if idx.is_empty() {
        return true;
    }
    let mut cur = GroupRingElement::new();
    cur.insert(positive_letters(w, idx.len()));
    for &i in idx.0.iter().rev() {
        cur = derive(&cur, i);
    }
    // the augmentation sends every group element to 1
    cur.len() % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_coefficients() {
        let w = FreeWord::parse(2, "x1 x2 x1^-1 x2^-1").unwrap();
        assert!(mu2_fox(&MultiIndex::new(&[1, 2]), &w));
        assert!(mu2_fox(&MultiIndex::new(&[2, 1]), &w));
        assert!(!mu2_fox(&MultiIndex::new(&[1]), &w));
        assert!(!mu2_fox(&MultiIndex::new(&[1, 1]), &w));
    }
}
