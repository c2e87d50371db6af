use super::QuadField;
use crate::arith::{exact_sqrt, sign_of};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// a + bω in O_k.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct RingElement {
    a: BigInt,
    b: BigInt,
    field: QuadField,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    a: String,
    b: String,
    p: u64,
}

impl From<RingElement> for ElementRepr {
    fn from(e: RingElement) -> Self {
        ElementRepr {
            a: e.a.to_string(),
            b: e.b.to_string(),
            p: e.field.p(),
        }
    }
}

impl TryFrom<ElementRepr> for RingElement {
    type Error = Error;
    fn try_from(r: ElementRepr) -> Result<Self> {
        let field = QuadField::new(r.p)?;
        let a: BigInt = r.a.parse().map_err(|_| Error::Parse(r.a.clone()))?;
        let b: BigInt = r.b.parse().map_err(|_| Error::Parse(r.b.clone()))?;
        Ok(RingElement { a, b, field })
    }
}

impl RingElement {
    pub fn new(field: QuadField, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        RingElement {
            a: a.into(),
            b: b.into(),
            field,
        }
    }

    pub fn from_half(field: QuadField, u: BigInt, v: BigInt) -> Option<Self> {
        let diff: BigInt = &u - &v;
        if diff.is_odd() {
            return None;
        }
        Some(RingElement {
            a: diff / 2,
            b: v,
            field,
        })
    }

    pub fn zero(field: QuadField) -> Self {
        Self::new(field, 0, 0)
    }

    pub fn one(field: QuadField) -> Self {
        Self::new(field, 1, 0)
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// (U, V) with self = (U + V√p)/2.
    pub fn half(&self) -> (BigInt, BigInt) {
        (&self.a * 2 + &self.b, self.b.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - self.field.m() * &self.b * &self.b
    }

    pub fn trace(&self) -> BigInt {
        &self.a * 2 + &self.b
    }

    /// Image under √p ↦ −√p.
    pub fn conj(&self) -> Self {
        RingElement {
            a: &self.a + &self.b,
            b: -&self.b,
            field: self.field,
        }
    }

    pub fn norm_trace_conj(&self) -> (BigInt, BigInt, RingElement) {
        (self.norm(), self.trace(), self.conj())
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Signs of ι∞₁ and ι∞₂ where ι∞₁(√p) > 0.
    pub fn real_signs(&self) -> Result<(i8, i8)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let (u, v) = self.half();
        Ok((half_sign(&u, &v, self.field.p()), half_sign(&u, &(-v), self.field.p())))
    }

    /// Sign at ∞₁; panics on zero.
    pub fn sign1(&self) -> i8 {
        self.real_signs().expect("nonzero").0
    }

    pub fn is_totally_positive(&self) -> bool {
        matches!(self.real_signs(), Ok((1, 1)))
    }

    /// U² + pV², four times the sum of squared embeddings.
    pub fn t2(&self) -> BigInt {
        let (u, v) = self.half();
        &u * &u + BigInt::from(self.field.p()) * &v * &v
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit, `None` otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_one() {
            Some(self.conj())
        } else if (-&n).is_one() {
            Some(-self.conj())
        } else {
            None
        }
    }

    /// Integer power of a unit; negative exponents use the inverse.
    pub fn unit_pow(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.unit_inverse()
                .expect("unit_pow on a non-unit")
                .pow(e.unsigned_abs() as u32)
        }
    }

    /// self / d if the quotient lies in O_k.
    pub fn div_exact(&self, d: &RingElement) -> Option<Self> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let q = self * &d.conj();
        if q.a.is_multiple_of(&n) && q.b.is_multiple_of(&n) {
            Some(RingElement {
                a: q.a / &n,
                b: q.b / &n,
                field: self.field,
            })
        } else {
            None
        }
    }

    pub fn divides(&self, other: &RingElement) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        RingElement {
            a: &self.a * k,
            b: &self.b * k,
            field: self.field,
        }
    }

    /// Divide both coordinates by the rational integer k; `None` if inexact.
    pub fn div_int(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() || !self.a.is_multiple_of(k) || !self.b.is_multiple_of(k) {
            return None;
        }
        Some(RingElement {
            a: &self.a / k,
            b: &self.b / k,
            field: self.field,
        })
    }

    /// gcd of the two coordinates (the largest rational integer dividing self).
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }

    /// `<a>+<b>w` in the ω-basis.
    pub fn to_canonical(&self) -> String {
        if self.b.is_negative() {
            format!("{}-{}w", self.a, -&self.b)
        } else {
            format!("{}+{}w", self.a, self.b)
        }
    }

    fn check(&self, other: &RingElement) {
        assert_eq!(self.field, other.field, "elements of different fields");
    }
}

fn half_sign(u: &BigInt, v: &BigInt, p: u64) -> i8 {
    // sign of u + v√p
    let su = sign_of(u);
    let sv = sign_of(v);
    if sv == 0 || su == sv {
        return su;
    }
    if su == 0 {
        return sv;
    }
    let lhs = u * u;
    let rhs = v * v * BigInt::from(p);
    if lhs > rhs {
        su
    } else {
        sv
    }
}

/// (e1 − e2)/m ∈ O_k.
pub fn congruent(e1: &RingElement, e2: &RingElement, m: &RingElement) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    Ok((e1 - e2).div_exact(m).is_some())
}

/// A square root in O_k, normalized positive at ∞₁, if one exists.
pub fn sqrt_element(t: &RingElement) -> Option<RingElement> {
    let field = t.field;
    if t.is_zero() {
        return Some(t.clone());
    }
    let n = exact_sqrt(&t.norm())?;
    let (u_t, v_t) = t.half();
    let p = BigInt::from(field.p());
    for cand in [&u_t + &n * 2, &u_t - &n * 2] {
        let Some(u) = exact_sqrt(&cand) else { continue };
        let v = if u.is_zero() {
            if !v_t.is_zero() {
                continue;
            }
            let q: BigInt = &u_t * 2;
            if !q.is_multiple_of(&p) {
                continue;
            }
            match exact_sqrt(&(q / &p)) {
                Some(v) => v,
                None => continue,
            }
        } else {
            if !v_t.is_multiple_of(&u) {
                continue;
            }
            &v_t / &u
        };
        let Some(s) = RingElement::from_half(field, u, v) else { continue };
        if &(&s * &s) == t {
            return Some(if s.sign1() < 0 { -s } else { s });
        }
    }
    None
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.half();
        let p = self.field.p();
        if u.is_even() && v.is_even() {
            f.write_str(&sqrt_form(&(u / 2), &(v / 2), p))
        } else {
            write!(f, "({})/2", sqrt_form(&u, &v, p))
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.to_canonical())
    }
}

fn sqrt_form(x: &BigInt, y: &BigInt, p: u64) -> String {
    let root = |c: &BigInt| -> String {
        if c.is_one() {
            format!("√{p}")
        } else if (-c).is_one() {
            format!("-√{p}")
        } else {
            format!("{c}√{p}")
        }
    };
    if y.is_zero() {
        return x.to_string();
    }
    if x.is_zero() {
        return root(y);
    }
    let r = root(y);
    if r.starts_with('-') {
        format!("{x}{r}")
    } else {
        format!("{x}+{r}")
    }
}

impl<'b> Add<&'b RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, o: &'b RingElement) -> RingElement {
        self.check(o);
        RingElement {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            field: self.field,
        }
    }
}

impl<'b> Sub<&'b RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, o: &'b RingElement) -> RingElement {
        self.check(o);
        RingElement {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            field: self.field,
        }
    }
}

impl<'b> Mul<&'b RingElement> for &RingElement {
    type Output = RingElement;
    fn mul(self, o: &'b RingElement) -> RingElement {
        self.check(o);
        let bd = &self.b * &o.b;
        RingElement {
            a: &self.a * &o.a + &bd * self.field.m(),
            b: &self.a * &o.b + &self.b * &o.a + bd,
            field: self.field,
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            a: -&self.a,
            b: -&self.b,
            field: self.field,
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $m(self, o: RingElement) -> RingElement {
                (&self).$m(&o)
            }
        }
        impl<'b> $tr<&'b RingElement> for RingElement {
            type Output = RingElement;
            fn $m(self, o: &'b RingElement) -> RingElement {
                (&self).$m(o)
            }
        }
        impl $tr<RingElement> for &RingElement {
            type Output = RingElement;
            fn $m(self, o: RingElement) -> RingElement {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> QuadField {
        QuadField::new(5).unwrap()
    }

    #[test]
    fn norms_of_named_elements() {
        let k = k5();
        let pi1 = k.half(66, 16).unwrap();
        assert_eq!(pi1, k.elem(25, 16));
        assert_eq!(pi1.norm(), BigInt::from(769));
        let pi3 = k.half(23, 5).unwrap();
        assert_eq!(pi3.norm(), BigInt::from(101));
        let (n, t, c) = k.int(1).norm_trace_conj();
        assert_eq!((n, t, c), (BigInt::from(1), BigInt::from(2), k.int(1)));
    }

    #[test]
    fn signs() {
        let k = k5();
        assert_eq!(k.omega().real_signs().unwrap(), (1, -1));
        assert_eq!(k.half(23, 5).unwrap().real_signs().unwrap(), (1, 1));
        assert_eq!(k.int(-1).real_signs().unwrap(), (-1, -1));
        assert_eq!(k.int(0).real_signs(), Err(Error::ZeroInput));
        assert_eq!(k.sqrt_p().real_signs().unwrap(), (1, -1));
    }

    #[test]
    fn congruences() {
        let k = k5();
        let four = k.int(4);
        assert!(congruent(&k.half(66, 16).unwrap(), &k.int(1), &four).unwrap());
        assert!(congruent(&k.half(-50, -28).unwrap(), &k.int(1), &four).unwrap());
        assert!(!congruent(&k.omega(), &k.int(1), &four).unwrap());
        assert_eq!(congruent(&four, &four, &k.int(0)), Err(Error::ZeroModulus));
    }

    #[test]
    fn square_roots() {
        let k = k5();
        let t = k.half(162, 72).unwrap();
        assert_eq!(sqrt_element(&t), Some(k.half(12, 6).unwrap()));
        assert_eq!(sqrt_element(&k.int(4)), Some(k.int(2)));
        assert_eq!(sqrt_element(&k.half(2, 2).unwrap()), None);
        assert_eq!(sqrt_element(&k.int(5)), Some(k.sqrt_p()));
        let w2 = &k.omega() * &k.omega();
        assert_eq!(sqrt_element(&w2), Some(k.omega()));
    }

    #[test]
    fn display_forms() {
        let k = k5();
        assert_eq!(k.half(66, 16).unwrap().to_string(), "33+8√5");
        assert_eq!(k.half(23, 5).unwrap().to_string(), "(23+5√5)/2");
        assert_eq!(k.omega().to_string(), "(1+√5)/2");
        assert_eq!(k.half(-46, -28).unwrap().to_string(), "-23-14√5");
        assert_eq!(k.sqrt_p().to_string(), "√5");
        assert_eq!(k.int(17).to_string(), "17");
        assert_eq!(k.elem(25, 16).to_canonical(), "25+16w");
        assert_eq!(k.elem(-9, -28).to_canonical(), "-9-28w");
    }

    #[test]
    fn json_round_trip() {
        let k = k5();
        let e = k.elem(-9, -28);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"a":"-9","b":"-28","p":5}"#);
        let back: RingElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn unit_powers() {
        let k = k5();
        let eps = k.omega();
        assert_eq!(&eps.unit_pow(3) * &eps.unit_pow(-3), k.int(1));
        assert_eq!(eps.unit_pow(-1), k.elem(-1, 1));
        assert_eq!(k.half(66, 16).unwrap().div_exact(&k.int(2)), None);
    }
}
