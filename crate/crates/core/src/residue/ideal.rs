use super::field::{sqrt_in, ResidueElement, ResidueField};
use crate::arith::{big_mod_u64, exact_sqrt, inv_mod, is_prime_u64, legendre};
use crate::error::{Error, Result};
use crate::ring::{congruent, fundamental_unit, QuadField, RingElement};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Split => "split",
            Kind::Inert => "inert",
            Kind::Ramified => "ramified",
        })
    }
}

/// A prime of O_k above a rational prime ℓ, described by the image t of ω
/// in O_k/𝔭 (`None` when ℓ is inert). Works for ℓ = 2 as well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct LocalPrime {
    pub ell: u64,
    pub omega_root: Option<u64>,
}

impl LocalPrime {
    pub fn contains(&self, e: &RingElement) -> bool {
        match self.omega_root {
            None => big_mod_u64(e.a(), self.ell) == 0 && big_mod_u64(e.b(), self.ell) == 0,
            Some(t) => {
                let l = self.ell as u128;
                let a = big_mod_u64(e.a(), self.ell) as u128;
                let b = big_mod_u64(e.b(), self.ell) as u128;
                (a + b * t as u128) % l == 0
            }
        }
    }

    /// A generator, searching by |V| where the generator is (U + V√p)/2.
    pub fn generator(&self, field: QuadField) -> Option<RingElement> {
        if self.omega_root.is_none() {
            return Some(field.int(self.ell));
        }
        let p = BigInt::from(field.p());
        let four_l = BigInt::from(self.ell) * 4;
        let (ue, ve) = fundamental_unit(field).fundamental_unit.half();
        // ι∞₁(ε) < eps_ceil
        let eps_ceil: BigInt = (&ue + &ve * BigInt::from(field.p().sqrt() + 1)) / 2 + 1;
        let limit = &four_l * &eps_ceil;
        let mut v = BigInt::zero();
        while &p * &v * &v <= limit {
            for t in [&p * &v * &v + &four_l, &p * &v * &v - &four_l] {
                let Some(u) = exact_sqrt(&t) else { continue };
                for vv in [v.clone(), -v.clone()] {
                    if let Some(g) = field.half(u.clone(), vv) {
                        if self.contains(&g) {
                            return Some(g);
                        }
                    }
                }
            }
            v += 1;
        }
        None
    }
}

/// All primes of O_k above the rational prime ℓ.
pub(crate) fn primes_above(field: QuadField, ell: u64) -> Vec<LocalPrime> {
    let p = field.p();
    let lp = |t| LocalPrime {
        ell,
        omega_root: Some(t),
    };
    if ell == 2 {
        return if field.two_inert() {
            vec![LocalPrime {
                ell,
                omega_root: None,
            }]
        } else {
            vec![lp(0), lp(1)]
        };
    }
    let inv2 = inv_mod(2, ell);
    if ell == p {
        return vec![lp(inv2)];
    }
    match legendre(p, ell) {
        1 => sqrt_roots(p % ell, ell)
            .into_iter()
            .map(|r| lp(((1 + r) as u128 * inv2 as u128 % ell as u128) as u64))
            .collect(),
        _ => vec![LocalPrime {
            ell,
            omega_root: None,
        }],
    }
}

/// Both square roots of a nonzero residue mod an odd prime, ascending.
fn sqrt_roots(a: u64, ell: u64) -> Vec<u64> {
    let f = ResidueField {
        ell,
        inert: false,
        theta_sq: a,
    };
    let r = sqrt_in(&f.elem(a, 0)).expect("residue").c;
    let mut v = vec![r, ell - r];
    v.sort();
    v
}

/// An odd prime ideal of O_k with a chosen generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct PrimeIdeal {
    field: QuadField,
    ell: u64,
    kind: Kind,
    root: Option<u64>,
    generator: RingElement,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    ell: String,
    kind: Kind,
    root: Option<String>,
    norm: String,
    generator: RingElement,
}

impl From<PrimeIdeal> for IdealRepr {
    fn from(i: PrimeIdeal) -> Self {
        IdealRepr {
            ell: i.ell.to_string(),
            kind: i.kind,
            root: i.root.filter(|_| i.kind == Kind::Split).map(|r| r.to_string()),
            norm: i.norm().to_string(),
            generator: i.generator,
        }
    }
}

impl TryFrom<IdealRepr> for PrimeIdeal {
    type Error = Error;
    fn try_from(r: IdealRepr) -> Result<Self> {
        let ideal = PrimeIdeal::from_generator(&r.generator)?;
        let root_ok = match (&r.root, ideal.kind) {
            (Some(s), Kind::Split) => Some(s.as_str()) == ideal.root.map(|x| x.to_string()).as_deref(),
            (None, k) => k != Kind::Split,
            _ => false,
        };
        if ideal.ell.to_string() != r.ell || ideal.kind != r.kind || !root_ok {
            return Err(Error::Parse("ideal fields disagree with its generator".into()));
        }
        Ok(ideal)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}
impl Eq for PrimeIdeal {}

impl std::hash::Hash for PrimeIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Ordered by norm, then by the split root.
impl Ord for PrimeIdeal {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl PrimeIdeal {
    fn key(&self) -> (u128, u64, u64, u64) {
        (self.norm(), self.ell, self.root.unwrap_or(0), self.field.p())
    }

    fn from_local(field: QuadField, lp: LocalPrime) -> Result<Self> {
        let ell = lp.ell;
        let kind = if ell == field.p() {
            Kind::Ramified
        } else if lp.omega_root.is_some() {
            Kind::Split
        } else {
            Kind::Inert
        };
        let root = lp.omega_root.map(|t| ((2 * t as u128 + ell as u128 - 1) % ell as u128) as u64);
        let generator = if kind == Kind::Ramified {
            field.sqrt_p()
        } else {
            lp.generator(field).ok_or(Error::NonPrincipal(ell))?
        };
        Ok(PrimeIdeal {
            field,
            ell,
            kind,
            root,
            generator,
        })
    }

    pub(crate) fn local(&self) -> LocalPrime {
        LocalPrime {
            ell: self.ell,
            omega_root: self.root.map(|r| {
                let inv2 = inv_mod(2, self.ell) as u128;
                ((1 + r as u128) * inv2 % self.ell as u128) as u64
            }),
        }
    }

    /// The prime ideal generated by π; π must generate a prime ideal over an odd prime.
    pub fn from_generator(pi: &RingElement) -> Result<Self> {
        let field = pi.field();
        let n = pi.norm().abs();
        if n.is_zero() {
            return Err(Error::ZeroInput);
        }
        let not_prime = || Error::NotPrime(pi.to_string());
        let (ell, inert) = match n.to_u64() {
            Some(v) if is_prime_u64(v) => (v, false),
            Some(v) => {
                let r = v.sqrt();
                if r * r == v && is_prime_u64(r) {
                    (r, true)
                } else {
                    return Err(not_prime());
                }
            }
            None => return Err(not_prime()),
        };
        if ell == 2 {
            return Err(Error::EvenPrime(2));
        }
        let lp = primes_above(field, ell)
            .into_iter()
            .find(|lp| lp.contains(pi))
            .ok_or_else(not_prime)?;
        if inert != lp.omega_root.is_none() || (inert && ell == field.p()) {
            return Err(not_prime());
        }
        let mut ideal = PrimeIdeal::from_local(field, lp)?;
        ideal.generator = pi.clone();
        Ok(ideal)
    }

    /// Parse `(<ell>,<kind>,<root-or-dash>)` or a generator.
    pub fn parse(field: QuadField, s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() == 3 {
                let ell: u64 = parts[0].parse().map_err(|_| Error::Parse(s.into()))?;
                let (_, ideals) = splitting_type(field, ell)?;
                let want_root = parts[2];
                return ideals
                    .into_iter()
                    .find(|i| {
                        i.kind.to_string() == parts[1]
                            && (i.kind != Kind::Split || i.root.map(|r| r.to_string()).as_deref() == Some(want_root))
                    })
                    .ok_or_else(|| Error::Parse(format!("no prime ideal matches {s}")));
            }
        }
        PrimeIdeal::from_generator(&field.parse(s)?)
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Image of √p in O_k/𝔭 (split and ramified primes).
    pub fn root(&self) -> Option<u64> {
        self.root
    }

    pub fn generator(&self) -> &RingElement {
        &self.generator
    }

    pub fn with_generator(&self, g: RingElement) -> Result<Self> {
        let other = PrimeIdeal::from_generator(&g)?;
        if other != *self {
            return Err(Error::PreconditionFailed(format!("{g} does not generate {self}")));
        }
        Ok(other)
    }

    pub fn norm(&self) -> u128 {
        match self.kind {
            Kind::Inert => self.ell as u128 * self.ell as u128,
            _ => self.ell as u128,
        }
    }

    pub fn contains(&self, e: &RingElement) -> bool {
        self.local().contains(e)
    }

    pub fn residue_field(&self) -> ResidueField {
        ResidueField {
            ell: self.ell,
            inert: self.kind == Kind::Inert,
            theta_sq: self.field.p() % self.ell,
        }
    }

    pub fn to_text(&self) -> String {
        match (self.kind, self.root) {
            (Kind::Split, Some(r)) => format!("({},{},{})", self.ell, self.kind, r),
            _ => format!("({},{},-)", self.ell, self.kind),
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Decomposition of an odd rational prime in O_k.
pub fn splitting_type(field: QuadField, ell: u64) -> Result<(Kind, Vec<PrimeIdeal>)> {
    if ell % 2 == 0 {
        return Err(Error::EvenPrime(ell));
    }
    if !is_prime_u64(ell) {
        return Err(Error::NotPrime(ell.to_string()));
    }
    if ell >= 1 << 31 {
        return Err(Error::PreconditionFailed(format!("{ell} exceeds the supported range")));
    }
    let ideals = primes_above(field, ell)
        .into_iter()
        .map(|lp| PrimeIdeal::from_local(field, lp))
        .collect::<Result<Vec<_>>>()?;
    Ok((ideals[0].kind, ideals))
}

/// Requested properties of a normalized generator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormFlags {
    pub require_one_mod4: bool,
    pub require_totally_positive: bool,
}

impl NormFlags {
    pub const BOTH: NormFlags = NormFlags {
        require_one_mod4: true,
        require_totally_positive: true,
    };
    pub const NONE: NormFlags = NormFlags {
        require_one_mod4: false,
        require_totally_positive: false,
    };
}

/// Unit exponents in search order 0, 1, −1, 2, −2, … up to ±8.
pub(crate) fn unit_window() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=8).flat_map(|j| [j, -j]))
}

/// Search ±ε^j·π for a generator satisfying `flags`.
pub fn normalized_generator(ideal: &PrimeIdeal, flags: NormFlags) -> Result<RingElement> {
    let field = ideal.field;
    let eps = fundamental_unit(field).fundamental_unit;
    let one = field.int(1);
    let four = field.int(4);
    for j in unit_window() {
        let base = &eps.unit_pow(j) * &ideal.generator;
        for c in [base.clone(), -base] {
            if flags.require_one_mod4 && !congruent(&c, &one, &four)? {
                continue;
            }
            if flags.require_totally_positive && !c.is_totally_positive() {
                continue;
            }
            return Ok(c);
        }
    }
    Err(Error::NormalizationUnreachable)
}

/// Reduction O_k → O_k/𝔭.
pub fn reduce(e: &RingElement, ideal: &PrimeIdeal) -> ResidueElement {
    let f = ideal.residue_field();
    let l = ideal.ell;
    let (u, v) = e.half();
    let (u, v) = (big_mod_u64(&u, l), big_mod_u64(&v, l));
    let half = f.elem(inv_mod(2, l), 0);
    let image = match ideal.kind {
        Kind::Inert => f.elem(u, v),
        _ => {
            let r = ideal.root.unwrap_or(0);
            f.elem(((u as u128 + v as u128 * r as u128) % l as u128) as u64, 0)
        }
    };
    image.mul(&half)
}

/// Square root in O_k/𝔭 (canonical choice: the smaller of ±s).
pub fn sqrt_mod(ideal: &PrimeIdeal, a: &ResidueElement) -> Result<ResidueElement> {
    if a.field != ideal.residue_field() {
        return Err(Error::PreconditionFailed("residue from a different prime".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    sqrt_in(a)
}

impl PrimeIdeal {
    /// Largest e with π^e | x, for x ≠ 0.
    pub fn valuation(&self, x: &RingElement) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut e = 0;
        let mut cur = x.clone();
        while self.contains(&cur) {
            cur = cur
                .div_exact(&self.generator)
                .ok_or_else(|| Error::Inconsistent("generator does not divide a member".into()))?;
            e += 1;
        }
        Ok(e)
    }

    /// x / π^v(x), the unit part with respect to the chosen generator.
    pub fn unit_part(&self, x: &RingElement) -> Result<(u32, RingElement)> {
        let v = self.valuation(x)?;
        let mut cur = x.clone();
        for _ in 0..v {
            cur = cur.div_exact(&self.generator).expect("checked by valuation");
        }
        Ok((v, cur))
    }
}
