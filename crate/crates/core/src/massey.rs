//! Cochains on the free group spanned by mod-2 Magnus coefficients.
//!
//! A 1-cochain is an F₂-combination of μ(I; ·); a 2-cochain is a combination of
//! cup products μ(J; ·) ∪ μ(K; ·). The product rule
//! μ(I; vw) = μ(I; v) + μ(I; w) + Σ_{I=JK} μ(J; v)μ(K; w) makes the
//! coboundary d(μ_I) = Σ_{I=JK, J,K≠∅} μ_J ∪ μ_K, so every identity below is
//! a finite linear-algebra statement.

use crate::error::{Error, Result};
use crate::magnus::{expand, mu2, FreeWord, MultiIndex, TruncatedSeries};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

fn toggle<T: Ord>(set: &mut BTreeSet<T>, t: T) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

fn max_index(ms: impl Iterator<Item = u8>) -> usize {
    ms.max().unwrap_or(1) as usize
}

/// F₂-linear combination of the functionals μ(I; ·), |I| ≥ 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CochainFunctional {
    terms: BTreeSet<MultiIndex>,
}

impl CochainFunctional {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: MultiIndex) -> Self {
        assert!(!idx.is_empty(), "μ(∅) is not a cochain");
        CochainFunctional {
            terms: BTreeSet::from([idx]),
        }
    }

    /// χᵢ = μ((i); ·).
    pub fn kronecker(i: usize) -> Self {
        Self::basis(MultiIndex::new(&[i]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = MultiIndex>) -> Self {
        let mut f = Self::zero();
        for t in terms {
            assert!(!t.is_empty(), "μ(∅) is not a cochain");
            toggle(&mut f.terms, t);
        }
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&o.terms).cloned())
    }

    fn rank(&self) -> usize {
        max_index(self.terms.iter().flat_map(|m| m.0.iter().copied()))
    }

    /// Evaluate on a single expansion (the series must cover every term).
    pub fn eval_series(&self, e: &TruncatedSeries) -> bool {
        self.terms.iter().fold(false, |acc, m| acc ^ e.coeff(m))
    }

    pub fn eval(&self, w: &FreeWord) -> bool {
        if self.is_zero() {
            return false;
        }
        assert!(self.rank() <= w.rank(), "functional uses generators beyond the word's rank");
        self.eval_series(&expand(w, self.degree() + 1))
    }

    /// Parse `mu[1,2,3]+mu[1]`; `0` is the zero functional.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for part in t.split('+') {
            let p = part.trim();
            let inner = p
                .strip_prefix("mu[")
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad functional term {p:?}")))?;
            let idx = MultiIndex::parse(inner)?;
            if idx.is_empty() {
                return Err(Error::Parse("empty multi-index".into()));
            }
            terms.push(idx);
        }
        Ok(Self::from_terms(terms))
    }
}

impl fmt::Display for CochainFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|m| format!("mu[{m}]")).collect();
        f.write_str(&parts.join("+"))
    }
}

/// F₂-combination of cup products μ_J ∪ μ_K.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoCochain {
    terms: BTreeSet<(MultiIndex, MultiIndex)>,
}

impl TwoCochain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(MultiIndex, MultiIndex)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        for p in &o.terms {
            toggle(&mut t, p.clone());
        }
        TwoCochain { terms: t }
    }

    /// (f ∪ g)(v, w) = f(v)·g(w), expanded bilinearly.
    pub fn cup(f: &CochainFunctional, g: &CochainFunctional) -> Self {
        let mut t = BTreeSet::new();
        for j in &f.terms {
            for k in &g.terms {
                toggle(&mut t, (j.clone(), k.clone()));
            }
        }
        TwoCochain { terms: t }
    }

    fn degree(&self) -> usize {
        self.terms.iter().map(|(j, k)| j.len().max(k.len())).max().unwrap_or(0)
    }

    pub fn eval(&self, v: &FreeWord, w: &FreeWord) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.degree() + 1;
        let (ev, ew) = (expand(v, d), expand(w, d));
        self.terms.iter().fold(false, |acc, (j, k)| acc ^ (ev.coeff(j) & ew.coeff(k)))
    }
}

impl fmt::Display for TwoCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(j, k)| format!("mu[{j}]∪mu[{k}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Combination of triple cup products, the target of the second coboundary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThreeCochain {
    terms: BTreeSet<(MultiIndex, MultiIndex, MultiIndex)>,
}

impl ThreeCochain {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// d f, symbolically.
pub fn coboundary(f: &CochainFunctional) -> TwoCochain {
    let mut t = BTreeSet::new();
    for i in &f.terms {
        for split in i.proper_splits() {
            toggle(&mut t, split);
        }
    }
    TwoCochain { terms: t }
}

/// (df)(v, w) = f(v) + f(w) + f(vw), evaluated directly.
pub fn coboundary_value(f: &CochainFunctional, v: &FreeWord, w: &FreeWord) -> bool {
    f.eval(v) ^ f.eval(w) ^ f.eval(&v.mul(w))
}

/// d(a ∪ b) = da ∪ b + a ∪ db over F₂.
pub fn coboundary2(c: &TwoCochain) -> ThreeCochain {
    let mut t = BTreeSet::new();
    for (j, k) in &c.terms {
        for (a, b) in j.proper_splits() {
            toggle(&mut t, (a, b, k.clone()));
        }
        for (a, b) in k.proper_splits() {
            toggle(&mut t, (j.clone(), a, b));
        }
    }
    ThreeCochain { terms: t }
}

/// One b with db = z, choosing zero on every free coordinate.
///
/// Columns are the basis functionals μ_I with |I| up to the degree of z over
/// the generators z mentions; rows are the cup-product pairs.
pub fn solve_primitive(z: &TwoCochain) -> Result<CochainFunctional> {
    if z.is_zero() {
        return Ok(CochainFunctional::zero());
    }
    let s = max_index(z.terms.iter().flat_map(|(j, k)| j.0.iter().chain(&k.0).copied()));
    let top = z.terms.iter().map(|(j, k)| j.len() + k.len()).max().unwrap_or(1);
    // graded order, highest degree first so pivots land on the longest indices
    let mut cols = MultiIndex::all(s, top);
    cols.reverse();
    let mut row_of: BTreeMap<(MultiIndex, MultiIndex), usize> = BTreeMap::new();
    let mut col_rows: Vec<Vec<usize>> = Vec::with_capacity(cols.len());
    for c in &cols {
        let rows = c
            .proper_splits()
            .map(|p| {
                let n = row_of.len();
                *row_of.entry(p).or_insert(n)
            })
            .collect();
        col_rows.push(rows);
    }
    for p in &z.terms {
        if !row_of.contains_key(p) {
            return Err(Error::NotACoboundary);
        }
    }
    let nrows = row_of.len();
    let ncols = cols.len();
    let words = (ncols + 1).div_ceil(64);
    // augmented rows as bitsets; the last bit holds the right-hand side
    let mut m = vec![vec![0u64; words]; nrows];
    for (c, rows) in col_rows.iter().enumerate() {
        for &r in rows {
            m[r][c / 64] ^= 1 << (c % 64);
        }
    }
    for p in &z.terms {
        let r = row_of[p];
        m[r][ncols / 64] ^= 1 << (ncols % 64);
    }
    let bit = |row: &Vec<u64>, c: usize| row[c / 64] >> (c % 64) & 1 == 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| bit(&m[i], c)) else { continue };
        m.swap(r, pr);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    if m[r..].iter().any(|row| bit(row, ncols)) {
        return Err(Error::NotACoboundary);
    }
    let terms = pivots
        .into_iter()
        .filter(|&(row, _)| bit(&m[row], ncols))
        .map(|(_, c)| cols[c].clone());
    Ok(CochainFunctional::from_terms(terms))
}

/// (ω₁₃, ω₂₄) with dω₁₃ = χ₁∪χ₂ and dω₂₄ = χ₂∪χ₃.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    pub omega13: CochainFunctional,
    pub omega24: CochainFunctional,
}

/// The canonical defining system shifted by λ₁, λ₂.
pub fn defining_system(
    chi: [&CochainFunctional; 3],
    lambda1: &CochainFunctional,
    lambda2: &CochainFunctional,
) -> Result<DefiningSystem> {
    let c12 = TwoCochain::cup(chi[0], chi[1]);
    let c23 = TwoCochain::cup(chi[1], chi[2]);
    let omega13 = solve_primitive(&c12)?.add(lambda1);
    let omega24 = solve_primitive(&c23)?.add(lambda2);
    if coboundary(&omega13) != c12 {
        return Err(Error::InvalidPerturbation(format!("d({omega13}) ≠ χ₁∪χ₂")));
    }
    if coboundary(&omega24) != c23 {
        return Err(Error::InvalidPerturbation(format!("d({omega24}) ≠ χ₂∪χ₃")));
    }
    Ok(DefiningSystem { omega13, omega24 })
}

/// z = χ₁∪ω₂₄ + ω₁₃∪χ₃.
pub fn massey_cochain(chi: [&CochainFunctional; 3], system: &DefiningSystem) -> TwoCochain {
    TwoCochain::cup(chi[0], &system.omega24).add(&TwoCochain::cup(&system.omega13, chi[2]))
}

/// The length-2 product ⟨χ₁, χ₂⟩ as a 2-cochain; its defining system is (χ₁, χ₂) itself.
pub fn massey2_cochain(chi1: &CochainFunctional, chi2: &CochainFunctional) -> TwoCochain {
    TwoCochain::cup(chi1, chi2)
}

/// Every degree-1 functional over x₁..x_s, zero first.
pub fn degree_one_perturbations(s: usize) -> Vec<CochainFunctional> {
    (0..1u32 << s)
        .map(|mask| CochainFunctional::from_terms((0..s).filter(|i| mask >> i & 1 == 1).map(|i| MultiIndex::new(&[i + 1]))))
        .collect()
}

/// Σ_I χ₁(x_{i₁})χ₂(x_{i₂})χ₃(x_{i₃})·μ(I; f).
pub fn direct_triple_formula(chi: [&CochainFunctional; 3], f: &FreeWord) -> bool {
    let e = expand(f, 4);
    let s = f.rank();
    let gens: Vec<FreeWord> = (1..=s).map(|i| FreeWord::gen(s, i)).collect();
    let vals: Vec<Vec<bool>> = chi.iter().map(|c| gens.iter().map(|g| c.eval(g)).collect()).collect();
    let mut acc = false;
    for idx in MultiIndex::all(s, 3).into_iter().filter(|m| m.len() == 3) {
        let [a, b, c] = [idx.0[0], idx.0[1], idx.0[2]].map(|i| i as usize - 1);
        if vals[0][a] && vals[1][b] && vals[2][c] {
            acc ^= e.coeff(&idx);
        }
    }
    acc
}

/// ⟨χ₁, χ₂, χ₃⟩ paired with f for χᵢ = μ((i); ·), cross-checked against
/// the direct formula and μ((123); f).
pub fn triple_massey_pairing(f: &FreeWord, lambda1: &CochainFunctional, lambda2: &CochainFunctional) -> Result<bool> {
    if f.rank() < 3 {
        return Err(Error::PreconditionFailed("the triple pairing needs three generators".into()));
    }
    let e = expand(f, 3);
    if let Some(m) = e.support().into_iter().find(|m| !m.is_empty()) {
        return Err(Error::HypothesisViolated(format!("μ({m}; f) ≠ 0, f is not in the third Zassenhaus term")));
    }
    let chis = [1, 2, 3].map(CochainFunctional::kronecker);
    let chi = [&chis[0], &chis[1], &chis[2]];
    let system = defining_system(chi, lambda1, lambda2)?;
    let b = solve_primitive(&massey_cochain(chi, &system))?;
    let value = b.eval(f);
    let direct = direct_triple_formula(chi, f);
    let milnor = mu2(&MultiIndex::new(&[1, 2, 3]), f);
    if value != direct || value != milnor {
        return Err(Error::Inconsistent(format!(
            "pairing {value}, direct formula {direct}, μ(123) {milnor} on {f}"
        )));
    }
    Ok(value)
}
