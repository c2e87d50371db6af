use super::{fundamental_unit, QuadField};
use num_integer::Roots;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub h: u64,
    pub h_plus: u64,
}

/// Reduced forms (a, b, c) of discriminant p: 0 < b < √p and
/// √p − b < 2|a| < √p + b.
pub fn reduced_forms(field: QuadField) -> Vec<(i64, i64, i64)> {
    let d = field.p() as i64;
    let s = (d as u64).sqrt() as i64;
    let mut out = Vec::new();
    let mut b = 1;
    while b <= s {
        let n = (d - b * b) / 4;
        for q in 1..=n {
            if n % q != 0 {
                continue;
            }
            for a in [q, -q] {
                let c = -n / a;
                let lo = 2 * q + b;
                let hi = 2 * q - b;
                if lo * lo > d && (hi <= 0 || hi * hi < d) {
                    out.push((a, b, c));
                }
            }
        }
        b += 2;
    }
    out
}

/// Right neighbour of a reduced form in its cycle.
fn rho(f: (i64, i64, i64), d: i64, s: i64) -> (i64, i64, i64) {
    let (_, b, c) = f;
    let m = 2 * c.abs();
    let b2 = s - (s + b).rem_euclid(m);
    (c, b2, (b2 * b2 - d) / (4 * c))
}

/// h from cycles of reduced forms, with f and −f identified; h⁺ from N(ε).
pub fn class_numbers(field: QuadField) -> ClassData {
    let d = field.p() as i64;
    let s = (d as u64).sqrt() as i64;
    let forms = reduced_forms(field);
    let index: HashMap<_, _> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut cycle_of = vec![usize::MAX; forms.len()];
    let mut cycles = 0;
    for start in 0..forms.len() {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let mut i = start;
        while cycle_of[i] == usize::MAX {
            cycle_of[i] = cycles;
            i = index[&rho(forms[i], d, s)];
        }
        cycles += 1;
    }
    // wide classes: orbits of cycles under (a, b, c) ↦ (−a, b, −c)
    let mut parent: Vec<usize> = (0..cycles).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (i, &(a, b, c)) in forms.iter().enumerate() {
        let j = index[&(-a, b, -c)];
        let (x, y) = (find(&mut parent, cycle_of[i]), find(&mut parent, cycle_of[j]));
        parent[x] = y;
    }
    let h = (0..cycles).filter(|&c| find(&mut parent, c) == c).count() as u64;
    let h_plus = if fundamental_unit(field).unit_norm == -1 { h } else { 2 * h };
    ClassData { h, h_plus }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        for (p, h) in [(5, 1), (13, 1), (17, 1), (229, 3), (257, 3), (401, 5)] {
            let k = QuadField::new(p).unwrap();
            let c = class_numbers(k);
            assert_eq!(c.h, h, "h({p})");
            assert_eq!(c.h_plus, h, "h+({p})");
        }
    }

    #[test]
    fn cycle_count_matches_narrow_number() {
        // the number of cycles alone is h⁺
        for p in [5u64, 13, 29, 229, 401] {
            let k = QuadField::new(p).unwrap();
            let d = p as i64;
            let s = (p).sqrt() as i64;
            let forms = reduced_forms(k);
            let mut seen = std::collections::HashSet::new();
            let mut cycles = 0;
            for f in &forms {
                if seen.contains(f) {
                    continue;
                }
                cycles += 1;
                let mut g = *f;
                while seen.insert(g) {
                    g = rho(g, d, s);
                }
            }
            assert_eq!(cycles, class_numbers(k).h_plus, "p = {p}");
        }
    }
}
