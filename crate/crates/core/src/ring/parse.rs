//! Text input for ring elements.
//!
//! Accepts the canonical ω-form (`25+16w`, `-9-28w`, `w`, `17`) and the
//! radical form used for display (`33+8√5`, `(23+5√5)/2`, `sqrt5`).

use super::{QuadField, RingElement};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub(super) fn parse_element(field: QuadField, input: &str) -> Result<RingElement> {
    let err = || Error::Parse(format!("cannot read {input:?} as an element of {field}"));
    let s: String = input
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace("sqrt", "√")
        .replace('ω', "w");
    if s.is_empty() {
        return Err(err());
    }
    let (body, denom) = match s.strip_prefix('(').and_then(|r| r.strip_suffix(")/2")) {
        Some(inner) => (inner.to_string(), 2),
        None => (s.clone(), 1),
    };

    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in body.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);

    let mut rat = BigInt::zero();
    let mut w = BigInt::zero();
    let mut rad = BigInt::zero();
    for t in terms {
        let (neg, t) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let coef = |c: &str| -> Result<BigInt> {
            if c.is_empty() {
                Ok(BigInt::from(1))
            } else {
                c.trim_end_matches('*').parse().map_err(|_| err())
            }
        };
        let mut val;
        let slot;
        if let Some(c) = t.strip_suffix('w') {
            val = coef(c)?;
            slot = &mut w;
        } else if let Some(idx) = t.find('√') {
            let radicand: u64 = t[idx + '√'.len_utf8()..].parse().map_err(|_| err())?;
            if radicand != field.p() {
                return Err(err());
            }
            val = coef(&t[..idx])?;
            slot = &mut rad;
        } else {
            val = t.parse().map_err(|_| err())?;
            slot = &mut rat;
        }
        if neg {
            val = -val;
        }
        *slot += val;
    }

    // value = rat + w·ω + rad·√p, over `denom`
    let u: BigInt = &rat * 2 + &w;
    let v: BigInt = &w + &rad * 2;
    let d = BigInt::from(denom);
    if !u.is_multiple_of(&d) || !v.is_multiple_of(&d) {
        return Err(err());
    }
    RingElement::from_half(field, u / &d, v / &d).ok_or_else(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_notations() {
        let k = QuadField::new(5).unwrap();
        assert_eq!(k.parse("25+16w").unwrap(), k.elem(25, 16));
        assert_eq!(k.parse("-9-28w").unwrap(), k.elem(-9, -28));
        assert_eq!(k.parse("33+8√5").unwrap(), k.elem(25, 16));
        assert_eq!(k.parse("(23+5√5)/2").unwrap(), k.elem(9, 5));
        assert_eq!(k.parse("(1 + sqrt5)/2").unwrap(), k.omega());
        assert_eq!(k.parse("w").unwrap(), k.omega());
        assert_eq!(k.parse("-23-14√5").unwrap(), k.elem(-9, -28));
        assert_eq!(k.parse("17").unwrap(), k.int(17));
        assert_eq!(k.parse("√5").unwrap(), k.sqrt_p());
        assert!(k.parse("(1+2√5)/2").is_err());
        assert!(k.parse("3+√7").is_err());
        assert!(k.parse("").is_err());
        for e in [k.elem(25, 16), k.elem(-9, -28), k.elem(0, -1), k.elem(4, 0)] {
            assert_eq!(k.parse(&e.to_canonical()).unwrap(), e);
            assert_eq!(k.parse(&e.to_string()).unwrap(), e);
        }
    }
}
