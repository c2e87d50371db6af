//! Rédei-type D₈ extensions and the triple quadratic residue symbol.
//!
//! For an admissible pair (𝔭₁, 𝔭₂) with normalized generators π₁, π₂ a
//! normalized solution of x² = π₁y² + π₂z² gives α₁ = x + y√π₁ and
//! K = k(√π₁, √π₂, √α₁). A third prime 𝔭₃ with (π₁/𝔭₃) = (π₂/𝔭₃) = 1 splits
//! in k(√π₁) through √π₁ ↦ s, and the triple symbol is the residue symbol of
//! the image of α₁ at that prime.

use crate::arith::legendre;
use crate::conic::{distinct_solutions, solve_integer_conic, ConicOptions, ConicSolution};
use crate::error::{Error, Result};
use crate::magnus::{d8_translate, D8Word, UnipotentMatrix};
use crate::residue::{normalized_generator, quad_symbol, reduce, sqrt_mod, Kind, NormFlags, PrimeIdeal, ResidueElement};
use crate::ring::{class_numbers, congruent, fundamental_unit, RingElement};
use crate::tower::{q, Tower, TowerElement};
use num_bigint::BigInt;
use serde::Serialize;
use std::fmt;

/// Outcome of an admissibility test with the failed conditions spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub ok: bool,
    pub reasons: Vec<String>,
}

impl Admissibility {
    fn from_reasons(reasons: Vec<String>) -> Self {
        Admissibility {
            ok: reasons.is_empty(),
            reasons,
        }
    }

    fn into_result(self) -> Result<()> {
        if self.ok {
            Ok(())
        } else {
            Err(Error::PreconditionFailed(self.reasons.join("; ")))
        }
    }
}

/// The generator used in symbols: ≡ 1 mod 4 and totally positive.
pub fn normalized(ideal: &PrimeIdeal) -> Result<RingElement> {
    normalized_generator(ideal, NormFlags::BOTH)
}

fn symbol_is_one(a: &RingElement, ideal: &PrimeIdeal) -> bool {
    matches!(quad_symbol(a, ideal), Ok(1))
}

fn single_prime_reasons(ideal: &PrimeIdeal, tag: &str, out: &mut Vec<String>) {
    if ideal.norm() % 4 != 1 {
        out.push(format!("norm of {tag} not 1 mod 4"));
    }
    let eps = fundamental_unit(ideal.field()).fundamental_unit;
    if !symbol_is_one(&eps, ideal) {
        out.push(format!("unit symbol at {tag}"));
    }
    if normalized(ideal).is_err() {
        out.push(format!("no normalized generator for {tag}"));
    }
}

/// N𝔭ᵢ ≡ 1 mod 4, (π₁/𝔭₂) = (π₂/𝔭₁) = 1 and (ε/𝔭ᵢ) = 1 over a field with h⁺ = 1.
pub fn pair_admissible(p1: &PrimeIdeal, p2: &PrimeIdeal) -> Admissibility {
    let mut reasons = Vec::new();
    let field = p1.field();
    if p2.field() != field {
        return Admissibility::from_reasons(vec!["ideals over different fields".into()]);
    }
    if class_numbers(field).h_plus != 1 {
        reasons.push("narrow class number".into());
    }
    if p1 == p2 {
        reasons.push("repeated ideal".into());
    }
    single_prime_reasons(p1, "𝔭₁", &mut reasons);
    single_prime_reasons(p2, "𝔭₂", &mut reasons);
    if reasons.is_empty() {
        let (pi1, pi2) = (normalized(p1).expect("checked"), normalized(p2).expect("checked"));
        if !symbol_is_one(&pi1, p2) || !symbol_is_one(&pi2, p1) {
            reasons.push("pair symbol".into());
        }
    }
    Admissibility::from_reasons(reasons)
}

/// Pairwise admissibility of all three primes.
pub fn triple_admissible(p1: &PrimeIdeal, p2: &PrimeIdeal, p3: &PrimeIdeal) -> Admissibility {
    if p1 == p3 || p2 == p3 || p1 == p2 {
        return Admissibility::from_reasons(vec!["repeated ideal".into()]);
    }
    let mut reasons = pair_admissible(p1, p2).reasons;
    if p3.field() != p1.field() {
        reasons.push("ideals over different fields".into());
        return Admissibility::from_reasons(reasons);
    }
    single_prime_reasons(p3, "𝔭₃", &mut reasons);
    if reasons.is_empty() {
        let pis: Vec<RingElement> = [p1, p2, p3].iter().map(|p| normalized(p).expect("checked")).collect();
        let ideals = [p1, p2, p3];
        for i in 0..3 {
            for j in 0..3 {
                if i != j && !symbol_is_one(&pis[i], ideals[j]) {
                    reasons.push(format!("pair symbol (π{}/𝔭{})", i + 1, j + 1));
                }
            }
        }
    }
    Admissibility::from_reasons(reasons)
}

/// α₁ = x + y√π₁.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alpha1 {
    pub x: RingElement,
    pub y: RingElement,
}

impl fmt::Display for Alpha1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})√π₁", self.x, self.y)
    }
}

/// The rational construction Q(√p₁, √p₂, √(x + y√p₁)) for two inert primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositeRoute {
    pub p1: u64,
    pub p2: u64,
    #[serde(serialize_with = "decimal")]
    pub x: BigInt,
    #[serde(serialize_with = "decimal")]
    pub y: BigInt,
    #[serde(serialize_with = "decimal")]
    pub z: BigInt,
}

fn decimal<S: serde::Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct RedeiData {
    pub p1: PrimeIdeal,
    pub p2: PrimeIdeal,
    pub pi1: RingElement,
    pub pi2: RingElement,
    pub solution: ConicSolution,
    pub alpha1: Alpha1,
    pub composite: Option<CompositeRoute>,
}

impl RedeiData {
    /// Labels of the quadratic steps k ⊂ k(√π₁) ⊂ K.
    pub fn tower(&self) -> Vec<String> {
        let p = self.pi1.field().p();
        vec![
            format!("k = Q(√{p})"),
            format!("k(√π₁), π₁ = {}", self.pi1),
            format!("K = k(√π₁, √π₂, √α₁), π₂ = {}, α₁ = {}", self.pi2, self.alpha1),
        ]
    }
}

fn composite_route(p1: &PrimeIdeal, p2: &PrimeIdeal, options: &ConicOptions) -> Result<Option<CompositeRoute>> {
    let (l1, l2) = (p1.ell(), p2.ell());
    if p1.kind() != Kind::Inert || p2.kind() != Kind::Inert || l1 % 4 != 1 || l2 % 4 != 1 || legendre(l1, l2) != 1 {
        return Ok(None);
    }
    let avoid = options.avoid.as_ref().map(|i| i.ell());
    let (x, y, z) = solve_integer_conic(l1, l2, options.height_bound, avoid)?;
    Ok(Some(CompositeRoute { p1: l1, p2: l2, x, y, z }))
}

pub fn build_redei(p1: &PrimeIdeal, p2: &PrimeIdeal) -> Result<RedeiData> {
    build_redei_with(p1, p2, &ConicOptions::default())
}

/// Solve and normalize the conic for (π₁, π₂); `options.avoid` keeps z prime to a third ideal.
pub fn build_redei_with(p1: &PrimeIdeal, p2: &PrimeIdeal, options: &ConicOptions) -> Result<RedeiData> {
    pair_admissible(p1, p2).into_result()?;
    let field = p1.field();
    if !field.two_inert() {
        return Err(Error::PreconditionFailed(format!("the conic route needs p ≡ 5 mod 8, got {}", field.p())));
    }
    let (pi1, pi2) = (normalized(p1)?, normalized(p2)?);
    let solution = distinct_solutions(&pi1, &pi2, 1, options)?.remove(0);
    let alpha1 = Alpha1 {
        x: solution.x.clone(),
        y: solution.y.clone(),
    };
    Ok(RedeiData {
        p1: p1.with_generator(pi1.clone())?,
        p2: p2.with_generator(pi2.clone())?,
        composite: composite_route(p1, p2, options)?,
        pi1,
        pi2,
        solution,
        alpha1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub name: String,
    pub ok: bool,
}

fn check(name: impl Into<String>, ok: bool) -> WitnessCheck {
    WitnessCheck { name: name.into(), ok }
}

fn all_pass(checks: Vec<WitnessCheck>) -> Result<Vec<WitnessCheck>> {
    match checks.iter().find(|c| !c.ok) {
        Some(c) => Err(Error::WitnessFailed(c.name.clone())),
        None => Ok(checks),
    }
}

/// Integrality of θ = (1+√α₁)/2 and N(α₁) = π₂z² for a constructed extension.
pub fn integrality_witnesses(data: &RedeiData) -> Result<Vec<WitnessCheck>> {
    let field = data.pi1.field();
    let Alpha1 { x, y } = &data.alpha1;
    let z = &data.solution.z;
    let one = field.int(1);
    let mut checks = vec![
        check("y ∈ 2O_k", field.int(2).divides(y)),
        check("x − y ≡ 1 mod 4", congruent(&(x - y), &one, &field.int(4))?),
    ];
    // θ² − θ + β = 0 with β = (1 − α₁)/4; β is integral iff its trace and norm over k are
    let one_minus_x = &one - x;
    let trace = one_minus_x.div_exact(&field.int(2));
    let norm = (&(&one_minus_x * &one_minus_x) - &(&data.pi1 * &(y * y))).div_exact(&field.int(16));
    checks.push(check("Tr(β) ∈ O_k", trace.is_some()));
    checks.push(check("N(β) ∈ O_k", norm.is_some()));
    let rel_norm = &(x * x) - &(&data.pi1 * &(y * y));
    checks.push(check("N(α₁) = π₂z²", rel_norm == &data.pi2 * &(z * z)));
    all_pass(checks)
}

/// A printed example whose α₁ is given directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReferenceExample {
    /// π₁ = (11+√5)/2, π₂ = 13 in Q(√5).
    Norm29Norm13,
    /// π₁ = (11+√5)/2, π₂ = (19+√5)/2 in Q(√5).
    Norm29Norm89,
}

impl ReferenceExample {
    pub const ALL: [ReferenceExample; 2] = [ReferenceExample::Norm29Norm13, ReferenceExample::Norm29Norm89];

    pub fn name(&self) -> &'static str {
        match self {
            ReferenceExample::Norm29Norm13 => "(29, 13)",
            ReferenceExample::Norm29Norm89 => "(29, 89)",
        }
    }

    /// α₁ as text.
    pub fn alpha1(&self) -> &'static str {
        match self {
            ReferenceExample::Norm29Norm13 => "(−1−9√5+6√π₁)/4",
            ReferenceExample::Norm29Norm89 => "(6√5+(1−√5)√π₁)/4",
        }
    }
}

/// Tower Q(√5, √π) with π = (u + √5)/2.
fn tower_over(u: i64, label: &str) -> Tower {
    let mut t = Tower::new();
    let five = t.int(5);
    t.adjoin("√5", &five);
    let pi = t.element(vec![q(u, 2), q(1, 2)]);
    t.adjoin(label, &pi);
    t
}

/// Checks the quadratic polynomial of a root: x² + b x + c with discriminant `disc`.
fn quadratic_checks(t: &Tower, root: &TowerElement, b: &TowerElement, c: &TowerElement, disc: &TowerElement, tag: &str) -> Vec<WitnessCheck> {
    let val = t.eval_poly_elems(&[c.clone(), b.clone(), t.int(1)], root);
    let d = t.sub(&t.mul(b, b), &t.scale(c, &q(4, 1)));
    vec![check(format!("{tag} is a root of its quadratic"), val.is_zero()), check(format!("discriminant of {tag}"), &d == disc)]
}

/// Exact verification of a printed example's witnesses.
pub fn reference_witnesses(example: ReferenceExample) -> Result<Vec<WitnessCheck>> {
    let tag = example.name();
    let mut checks = Vec::new();
    // coefficient vectors over the basis 1, √5, √π₁, √5√π₁ (and √α₁ at index 4)
    let (alpha, lambda1_u, lambda1_c, poly, root, pi2_elem): (Vec<_>, i64, i64, Vec<i64>, Vec<_>, Vec<_>) = match example {
        ReferenceExample::Norm29Norm13 => (
            vec![q(-1, 4), q(-9, 4), q(6, 4), q(0, 1)],
            11,
            -1,
            vec![-1, -13, -18, -1, 11, 3, -2, 1, 1],
            vec![q(-1, 8), q(1, 8), q(-1, 8), q(-1, 8), q(1, 2)],
            vec![q(13, 1)],
        ),
        ReferenceExample::Norm29Norm89 => (
            vec![q(0, 1), q(6, 4), q(1, 4), q(-1, 4)],
            19,
            -2,
            vec![-1, 5, 2, 12, -2, 3, 0, -4, 1],
            vec![q(1, 2), q(1, 4), q(-3, 8), q(-1, 8), q(1, 2)],
            vec![q(19, 2), q(1, 2)],
        ),
    };

    // first-layer root over k: (1+√5+2√π)/4 with π = π₁ for (29,13) and π₂ for (29,89)
    let t1 = tower_over(lambda1_u, "√π");
    let root1 = t1.element(vec![q(1, 4), q(1, 4), q(1, 2)]);
    let b = t1.element(vec![q(-1, 2), q(-1, 2)]);
    let c = t1.int(lambda1_c);
    let disc = t1.element(vec![q(lambda1_u, 2), q(1, 2)]);
    checks.extend(quadratic_checks(&t1, &root1, &b, &c, &disc, &format!("{tag} first-layer root")));

    // relative norm of α₁ from k(√π₁) to k
    let mut t = tower_over(11, "√π₁");
    let a = t.element(alpha.clone());
    let norm = t.mul(&a, &t.conj_top(&a));
    checks.push(check(format!("{tag} N(α₁) = π₂"), norm == t.element(pi2_elem)));

    // second-layer root of the degree-8 polynomial
    t.adjoin("√α₁", &a);
    let r = t.element(root);
    checks.push(check(format!("{tag} degree-8 polynomial"), t.eval_poly(&poly, &r).is_zero()));
    let conj = t.conj_top(&r);
    let tr = t.add(&r, &conj);
    let nm = t.mul(&r, &conj);
    let minus_tr = t.scale(&tr, &q(-1, 1));
    let disc = t.lift(&a);
    checks.push(check(format!("{tag} second-layer coefficients lie in k(√π₁)"), tr.lies_in_level(2) && nm.lies_in_level(2)));
    checks.extend(quadratic_checks(&t, &r, &minus_tr, &nm, &disc, &format!("{tag} second-layer root")));
    all_pass(checks)
}

/// Result of the residue route for one triple.
#[derive(Debug, Clone, Serialize)]
pub struct TripleReport {
    pub p1: PrimeIdeal,
    pub p2: PrimeIdeal,
    pub p3: PrimeIdeal,
    pub symbol: i8,
    pub s: String,
    pub u: String,
    pub solution: ConicSolution,
}

/// Residue-route values (symbol, s, u) for a given solution.
///
/// `negate_s` replaces the canonical square root of π₁ mod 𝔭₃ by its negative.
pub fn symbol_from_solution(
    sol: &ConicSolution,
    pi1: &RingElement,
    p3: &PrimeIdeal,
    negate_s: bool,
) -> Result<(i8, ResidueElement, ResidueElement)> {
    let mut s = sqrt_mod(p3, &reduce(pi1, p3))?;
    if negate_s {
        s = s.neg();
    }
    let (x, y) = (reduce(&sol.x, p3), reduce(&sol.y, p3));
    let mut u = x.add(&y.mul(&s));
    if u.is_zero() {
        u = x.sub(&y.mul(&s));
    }
    if u.is_zero() {
        return Err(Error::DegenerateSolution);
    }
    Ok((u.euler(), s, u))
}

fn composite_symbol(c: &CompositeRoute, p3: &PrimeIdeal, height_bound: u32) -> Result<i8> {
    let field = p3.field();
    let fresh;
    let c = if p3.contains(&field.int(c.z.clone())) {
        let (x, y, z) = solve_integer_conic(c.p1, c.p2, height_bound, Some(p3.ell()))?;
        fresh = CompositeRoute { x, y, z, ..c.clone() };
        &fresh
    } else {
        c
    };
    let s = sqrt_mod(p3, &reduce(&field.int(c.p1), p3))?;
    let (x, y) = (reduce(&field.int(c.x.clone()), p3), reduce(&field.int(c.y.clone()), p3));
    let mut u = x.add(&y.mul(&s));
    if u.is_zero() {
        u = x.sub(&y.mul(&s));
    }
    match u.euler() {
        0 => Err(Error::DegenerateSolution),
        v => Ok(v),
    }
}

/// Full report for [𝔭₁, 𝔭₂, 𝔭₃].
pub fn triple_report(p1: &PrimeIdeal, p2: &PrimeIdeal, p3: &PrimeIdeal) -> Result<TripleReport> {
    triple_report_with(p1, p2, p3, &ConicOptions::default())
}

pub fn triple_report_with(p1: &PrimeIdeal, p2: &PrimeIdeal, p3: &PrimeIdeal, options: &ConicOptions) -> Result<TripleReport> {
    triple_admissible(p1, p2, p3).into_result()?;
    let opts = ConicOptions {
        avoid: Some(p3.clone()),
        ..options.clone()
    };
    let data = build_redei_with(p1, p2, &opts)?;
    triple_report_from(&data, p3, options)
}

/// Report for a third prime reusing an already built extension.
///
/// The stored solution is used unless 𝔭₃ divides its z, in which case the
/// conic is re-solved avoiding 𝔭₃. Admissibility of 𝔭₃ is the caller's job.
pub fn triple_report_from(data: &RedeiData, p3: &PrimeIdeal, options: &ConicOptions) -> Result<TripleReport> {
    let solution = if p3.contains(&data.solution.z) {
        let opts = ConicOptions {
            avoid: Some(p3.clone()),
            ..options.clone()
        };
        distinct_solutions(&data.pi1, &data.pi2, 1, &opts)?.remove(0)
    } else {
        data.solution.clone()
    };
    let p3n = p3.with_generator(normalized(p3)?)?;
    let (symbol, s, u) = symbol_from_solution(&solution, &data.pi1, &p3n, false)?;
    if let Some(c) = &data.composite {
        let other = composite_symbol(c, &p3n, options.height_bound)?;
        if other != symbol {
            return Err(Error::Inconsistent(format!(
                "composite route gives {other}, conic route gives {symbol}"
            )));
        }
    }
    Ok(TripleReport {
        p1: data.p1.clone(),
        p2: data.p2.clone(),
        p3: p3n,
        symbol,
        s: s.to_string(),
        u: u.to_string(),
        solution,
    })
}

/// [𝔭₁, 𝔭₂, 𝔭₃] ∈ {±1}.
pub fn triple_symbol(p1: &PrimeIdeal, p2: &PrimeIdeal, p3: &PrimeIdeal) -> Result<i8> {
    Ok(triple_report(p1, p2, p3)?.symbol)
}

/// A conjugacy-class representative of Frobenius in Gal(K/k) ≅ N₃(F₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct D8Class {
    pub matrix: UnipotentMatrix,
}

impl D8Class {
    pub fn word(&self) -> D8Word {
        d8_translate(&self.matrix)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

impl fmt::Display for D8Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Frobenius at 𝔭₃; when either linear entry is 1 the representative has e13 = 0.
pub fn frobenius_class(data: &RedeiData, p3: &PrimeIdeal) -> Result<D8Class> {
    if p3 == &data.p1 || p3 == &data.p2 {
        return Err(Error::RamifiedPrime);
    }
    if p3.field() != data.pi1.field() {
        return Err(Error::PreconditionFailed("ideal from another field".into()));
    }
    let e12 = quad_symbol(&data.pi1, p3)? == -1;
    let e23 = quad_symbol(&data.pi2, p3)? == -1;
    let mut e13 = false;
    if !e12 && !e23 {
        e13 = triple_report_from(data, p3, &ConicOptions::default())?.symbol == -1;
    }
    Ok(D8Class {
        matrix: UnipotentMatrix::new(e12, e23, e13),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuadField;

    fn borromean() -> (PrimeIdeal, PrimeIdeal, PrimeIdeal) {
        let k = QuadField::new(5).unwrap();
        let id = |s: &str| PrimeIdeal::from_generator(&k.parse(s).unwrap()).unwrap();
        (id("33+8√5"), id("17"), id("(23+5√5)/2"))
    }

    #[test]
    fn borromean_triple() {
        let (p1, p2, p3) = borromean();
        assert!(pair_admissible(&p1, &p2).ok);
        assert!(triple_admissible(&p1, &p2, &p3).ok);
        let r = triple_report(&p1, &p2, &p3).unwrap();
        assert_eq!(r.symbol, -1);
        assert_eq!(r.s, "28");
        assert_eq!(r.u, "57");
        let data = build_redei(&p1, &p2).unwrap();
        let k = p1.field();
        assert_eq!(data.alpha1.x, k.parse("-23-14√5").unwrap());
        assert_eq!(data.alpha1.y, k.int(2));
        assert!(integrality_witnesses(&data).unwrap().iter().all(|c| c.ok));
        let f = frobenius_class(&data, &p3).unwrap();
        assert_eq!(f.matrix, UnipotentMatrix::new(false, false, true));
        assert_eq!(frobenius_class(&data, &p1), Err(Error::RamifiedPrime));
    }

    #[test]
    fn repeated_ideal_rejected() {
        let (p1, p2, _) = borromean();
        let a = triple_admissible(&p1, &p2, &p1);
        assert!(!a.ok);
        assert_eq!(a.reasons, ["repeated ideal"]);
    }

    #[test]
    fn reference_examples() {
        for ex in ReferenceExample::ALL {
            let checks = reference_witnesses(ex).unwrap();
            assert!(checks.len() >= 6);
        }
    }

    #[test]
    fn second_example_pair() {
        let k = QuadField::new(5).unwrap();
        let p29 = PrimeIdeal::parse(k, "(29,split,18)").unwrap();
        let p13 = PrimeIdeal::from_generator(&k.int(13)).unwrap();
        assert!(pair_admissible(&p29, &p13).ok);
    }
}
