//! Solutions of x² − π₁y² − π₂z² = 0 over O_k.

use crate::arith::{exact_sqrt, factor, to_u64};
use crate::error::{Error, Result};
use crate::residue::{primes_above, quad_symbol, unit_window, PrimeIdeal};
use crate::ring::{congruent, fundamental_unit, sqrt_element, QuadField, RingElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicSolution {
    pub x: RingElement,
    pub y: RingElement,
    pub z: RingElement,
    pub primitive: bool,
    pub y_even: bool,
    pub xy_normalized: bool,
}

impl ConicSolution {
    /// Wrap a triple, computing its flags.
    pub fn new(x: RingElement, y: RingElement, z: RingElement) -> Self {
        let field = x.field();
        let primitive = is_primitive(&x, &y, &z);
        let two = field.int(2);
        let y_even = two.divides(&y);
        let xy_normalized = congruent(&(&x - &y), &field.int(1), &field.int(4)).expect("nonzero modulus");
        ConicSolution {
            x,
            y,
            z,
            primitive,
            y_even,
            xy_normalized,
        }
    }

    pub fn field(&self) -> QuadField {
        self.x.field()
    }

    pub fn is_trivial(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn satisfies(&self, pi1: &RingElement, pi2: &RingElement) -> bool {
        let lhs = &self.x * &self.x;
        let rhs = pi1 * &(&self.y * &self.y) + pi2 * &(&self.z * &self.z);
        lhs == rhs
    }

    pub fn fully_normalized(&self) -> bool {
        self.primitive && self.y_even && self.xy_normalized
    }

    /// Same projective point.
    pub fn projectively_equal(&self, o: &ConicSolution) -> bool {
        &self.x * &o.z == &o.x * &self.z && &self.y * &o.z == &o.y * &self.z && &self.x * &o.y == &o.x * &self.y
    }

    fn scaled(&self, u: &RingElement) -> Self {
        ConicSolution::new(&self.x * u, &self.y * u, &self.z * u)
    }
}

fn is_primitive(x: &RingElement, y: &RingElement, z: &RingElement) -> bool {
    if x.is_zero() && y.is_zero() && z.is_zero() {
        return false;
    }
    let g = x.norm().gcd(&y.norm()).gcd(&z.norm());
    if g.is_one() {
        return true;
    }
    let field = x.field();
    for (q, _) in factor(&g) {
        let Some(ell) = to_u64(&q) else { return false };
        for lp in primes_above(field, ell) {
            if lp.contains(x) && lp.contains(y) && lp.contains(z) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct ConicOptions {
    pub height_bound: u32,
    pub avoid: Option<PrimeIdeal>,
}

impl Default for ConicOptions {
    fn default() -> Self {
        ConicOptions {
            height_bound: 200,
            avoid: None,
        }
    }
}

/// Hypotheses on (π₁, π₂): normalized prime generators with trivial mutual and unit symbols.
pub fn check_conic_hypotheses(pi1: &RingElement, pi2: &RingElement) -> Result<()> {
    let field = pi1.field();
    let one = field.int(1);
    let four = field.int(4);
    let eps = fundamental_unit(field).fundamental_unit;
    let fail = |m: String| Err(Error::PreconditionFailed(m));
    for (name, pi) in [("π₁", pi1), ("π₂", pi2)] {
        if !congruent(pi, &one, &four)? {
            return fail(format!("{name} = {pi} is not 1 mod 4"));
        }
        if !pi.is_totally_positive() {
            return fail(format!("{name} = {pi} is not totally positive"));
        }
    }
    let p1 = PrimeIdeal::from_generator(pi1)?;
    let p2 = PrimeIdeal::from_generator(pi2)?;
    if p1 == p2 {
        return fail("π₁ and π₂ generate the same prime".into());
    }
    if quad_symbol(pi1, &p2)? != 1 || quad_symbol(pi2, &p1)? != 1 {
        return fail("(π₁/π₂) or (π₂/π₁) is −1".into());
    }
    if quad_symbol(&eps, &p1)? != 1 || quad_symbol(&eps, &p2)? != 1 {
        return fail("(ε/πᵢ) is −1".into());
    }
    Ok(())
}

/// Raw solutions in search order: shells of growing height over y = 2t,
/// z with coordinates in [−h, h], lexicographic inside a shell.
pub struct ConicSearch {
    pi1: RingElement,
    pi2: RingElement,
    bound: i64,
    avoid: Option<PrimeIdeal>,
    h: i64,
    cursor: [i64; 4],
    done: bool,
}

impl ConicSearch {
    pub fn new(pi1: &RingElement, pi2: &RingElement, options: &ConicOptions) -> Self {
        ConicSearch {
            pi1: pi1.clone(),
            pi2: pi2.clone(),
            bound: options.height_bound as i64,
            avoid: options.avoid.clone(),
            h: 1,
            cursor: [-1, -1, -1, -1],
            done: options.height_bound == 0,
        }
    }

    /// Height of the shell currently being scanned.
    pub fn height(&self) -> i64 {
        self.h
    }

    fn advance(&mut self) {
        let h = self.h;
        loop {
            let mut i = 3;
            loop {
                if self.cursor[i] < h {
                    self.cursor[i] += 1;
                    break;
                }
                self.cursor[i] = -h;
                if i == 0 {
                    self.h += 1;
                    let nh = self.h;
                    self.cursor = [-nh; 4];
                    return;
                }
                i -= 1;
            }
            if self.cursor.iter().any(|c| c.abs() == h) {
                return;
            }
        }
    }

    fn test(&self) -> Option<ConicSolution> {
        let [ta, tb, za, zb] = self.cursor;
        if (ta == 0 && tb == 0) || (za == 0 && zb == 0) {
            return None;
        }
        let field = self.pi1.field();
        let z = field.elem(za, zb);
        if let Some(ideal) = &self.avoid {
            if ideal.contains(&z) {
                return None;
            }
        }
        let y = field.elem(2 * ta, 2 * tb);
        let t = &self.pi1 * &(&y * &y) + &self.pi2 * &(&z * &z);
        sqrt_element(&t).map(|x| ConicSolution::new(x, y, z))
    }
}

impl Iterator for ConicSearch {
    type Item = ConicSolution;

    fn next(&mut self) -> Option<ConicSolution> {
        while !self.done {
            let hit = self.test();
            self.advance();
            if self.h > self.bound {
                self.done = true;
            }
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}

/// First raw solution in search order.
pub fn solve_conic(pi1: &RingElement, pi2: &RingElement, options: &ConicOptions) -> Result<ConicSolution> {
    check_conic_hypotheses(pi1, pi2)?;
    ConicSearch::new(pi1, pi2, options)
        .next()
        .ok_or(Error::HeightExhausted(options.height_bound))
}

/// Exponent j making T2(ε^j·y) minimal; ties go to the larger j.
fn balancing_exponent(y: &RingElement, eps: &RingElement) -> i64 {
    if y.is_zero() {
        return 0;
    }
    let inv = eps.unit_inverse().expect("unit");
    let mut j = 0i64;
    let mut cur = y.clone();
    loop {
        let up = &cur * eps;
        if up.t2() < cur.t2() {
            cur = up;
            j += 1;
        } else {
            break;
        }
    }
    loop {
        let down = &cur * &inv;
        if down.t2() < cur.t2() {
            cur = down;
            j -= 1;
        } else {
            break;
        }
    }
    // T2 is strictly convex along the orbit, so a tie can only be with j + 1
    if (&cur * eps).t2() == cur.t2() {
        j += 1;
    }
    j
}

/// Reduce a solution to a primitive representative with y ∈ 2O_k and
/// x − y ≡ 1 mod 4O_k.
pub fn normalize_solution(sol: &ConicSolution, pi1: &RingElement, pi2: &RingElement) -> Result<ConicSolution> {
    if sol.is_trivial() || !sol.satisfies(pi1, pi2) {
        return Err(Error::PreconditionFailed("not a nontrivial solution".into()));
    }
    let field = sol.field();
    let (mut x, mut y, mut z) = (sol.x.clone(), sol.y.clone(), sol.z.clone());

    let g = x.content().gcd(&y.content()).gcd(&z.content());
    if !g.is_one() {
        x = x.div_int(&g).expect("content");
        y = y.div_int(&g).expect("content");
        z = z.div_int(&g).expect("content");
    }
    let gn = x.norm().gcd(&y.norm()).gcd(&z.norm());
    for (q, _) in factor(&gn) {
        let ell = to_u64(&q).ok_or(Error::NormalizationUnreachable)?;
        for lp in primes_above(field, ell) {
            while lp.contains(&x) && lp.contains(&y) && lp.contains(&z) {
                let gen = lp.generator(field).ok_or(Error::NormalizationUnreachable)?;
                x = x.div_exact(&gen).expect("member");
                y = y.div_exact(&gen).expect("member");
                z = z.div_exact(&gen).expect("member");
            }
        }
    }

    let eps = fundamental_unit(field).fundamental_unit;
    let u = eps.unit_pow(balancing_exponent(&y, &eps));
    let base = ConicSolution::new(&x * &u, &y * &u, &z * &u);
    if !base.primitive {
        return Err(Error::NormalizationUnreachable);
    }
    for j in unit_window() {
        let c = base.scaled(&eps.unit_pow(j));
        let z = if !c.z.is_zero() && c.z.sign1() < 0 { -&c.z } else { c.z.clone() };
        for y in [c.y.clone(), -&c.y] {
            for x in [c.x.clone(), -&c.x] {
                let cand = ConicSolution::new(x, y.clone(), z.clone());
                if cand.fully_normalized() {
                    return Ok(cand);
                }
            }
        }
    }
    Err(Error::NormalizationUnreachable)
}

/// Exact re-check of the equation and of every flag.
pub fn verify_solution(sol: &ConicSolution, pi1: &RingElement, pi2: &RingElement) -> bool {
    if sol.is_trivial() || !sol.satisfies(pi1, pi2) {
        return false;
    }
    let fresh = ConicSolution::new(sol.x.clone(), sol.y.clone(), sol.z.clone());
    fresh.primitive == sol.primitive && fresh.y_even == sol.y_even && fresh.xy_normalized == sol.xy_normalized
}

/// Up to `count` projectively distinct normalized solutions, in search order.
pub fn distinct_solutions(
    pi1: &RingElement,
    pi2: &RingElement,
    count: usize,
    options: &ConicOptions,
) -> Result<Vec<ConicSolution>> {
    check_conic_hypotheses(pi1, pi2)?;
    let mut out: Vec<ConicSolution> = Vec::new();
    for raw in ConicSearch::new(pi1, pi2, options) {
        let Ok(sol) = normalize_solution(&raw, pi1, pi2) else { continue };
        if out.iter().any(|s| s.projectively_equal(&sol)) {
            continue;
        }
        out.push(sol);
        if out.len() == count {
            break;
        }
    }
    if out.is_empty() {
        return Err(Error::HeightExhausted(options.height_bound));
    }
    Ok(out)
}

/// Rational solution of x² − p₁y² − p₂z² = 0 with gcd 1, y even, x − y ≡ 1 mod 4,
/// optionally with z prime to `avoid`.
pub fn solve_integer_conic(
    p1: u64,
    p2: u64,
    height_bound: u32,
    avoid: Option<u64>,
) -> Result<(BigInt, BigInt, BigInt)> {
    let (bp1, bp2) = (BigInt::from(p1), BigInt::from(p2));
    for h in 1..=height_bound as i64 {
        for t in 1..=h {
            for z in 1..=h {
                if t.max(z) != h || avoid.is_some_and(|q| z as u64 % q == 0) {
                    continue;
                }
                let y = BigInt::from(2 * t);
                let z = BigInt::from(z);
                let Some(x) = exact_sqrt(&(&bp1 * &y * &y + &bp2 * &z * &z)) else { continue };
                if !x.gcd(&y).gcd(&z).is_one() {
                    continue;
                }
                let four = BigInt::from(4);
                let normalized = |x: &BigInt| -> bool {
                    let d: BigInt = x - &y - 1;
                    d.mod_floor(&four).is_zero()
                };
                let x = if normalized(&x) { x } else { -x };
                if normalized(&x) {
                    return Ok((x, y, z));
                }
            }
        }
    }
    Err(Error::HeightExhausted(height_bound))
}

/// (x + y·s)(x − y·s) − π₂z², for checking the norm identity downstream.
pub fn norm_defect(sol: &ConicSolution, pi1: &RingElement, pi2: &RingElement) -> RingElement {
    &(&sol.x * &sol.x) - &(pi1 * &(&sol.y * &sol.y)) - pi2 * &(&sol.z * &sol.z)
}
