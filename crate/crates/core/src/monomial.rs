//! Monomials as exponent vectors and monomial ideals as their minimal
//! generating sets.
//!
//! A [`MonomialIdeal`] always holds its minimal generators, sorted by degree
//! and then lexicographically with `x_1 > x_2 > ...` (so `x1x2` precedes
//! `x2x3`). The zero ideal has no generators; the unit ideal has the single
//! generator `1`, the zero exponent vector. Both are explicit states that
//! callers must test for via [`MonomialIdeal::is_zero`] and
//! [`MonomialIdeal::is_unit`].

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sets::{VertexSet, MAX_VARS};

/// Exponent vector `a` of the monomial `x^a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVec(Vec<u32>);

impl ExponentVec {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVec(vec![0; n])
    }

    /// The squarefree monomial `x_F`.
    pub fn indicator(n: usize, set: VertexSet) -> Self {
        ExponentVec((0..n).map(|i| set.contains(i) as u32).collect())
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        ExponentVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// `|a|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `supp a`.
    pub fn support(&self) -> VertexSet {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// `x^self | x^other`.
    #[inline]
    pub fn divides(&self, other: &ExponentVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVec) -> ExponentVec {
        ExponentVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &ExponentVec) -> ExponentVec {
        ExponentVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &ExponentVec) -> ExponentVec {
        ExponentVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `x^self / gcd(x^self, x^other)`.
    pub fn saturating_sub(&self, other: &ExponentVec) -> ExponentVec {
        ExponentVec(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Entries outside `set` set to zero.
    pub fn restrict(&self, set: VertexSet) -> ExponentVec {
        ExponentVec(self.0.iter().enumerate().map(|(i, &e)| if set.contains(i) { e } else { 0 }).collect())
    }

    fn graded_key(&self) -> (u32, Reverse<&[u32]>) {
        (self.degree(), Reverse(self.0.as_slice()))
    }
}

impl std::ops::Index<usize> for ExponentVec {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Debug for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExponentVec {
    /// Monomial notation with 1-based variable names, e.g. `x1^2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl From<Vec<u32>> for ExponentVec {
    fn from(v: Vec<u32>) -> Self {
        ExponentVec(v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<ExponentVec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealJson {
    vars: usize,
    gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Minimal generating set of the ideal generated by `gens`; duplicate and
    /// divisible generators are dropped.
    pub fn minimalize(n: usize, gens: Vec<ExponentVec>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        if let Some(bad) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(Self::from_gens_unchecked(n, gens))
    }

    pub(crate) fn from_gens_unchecked(n: usize, mut gens: Vec<ExponentVec>) -> Self {
        gens.sort_unstable_by(|a, b| a.graded_key().cmp(&b.graded_key()));
        gens.dedup();
        let mut kept: Vec<ExponentVec> = Vec::with_capacity(gens.len());
        for g in gens {
            // kept generators have degree <= deg g, so only they can divide g
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        MonomialIdeal { n, gens: kept }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![ExponentVec::zeros(n)] }
    }

    /// The edge ideal `I(G)`.
    pub fn edge_ideal(g: &Graph) -> Self {
        let n = g.n();
        let gens =
            g.edges().into_iter().map(|(i, j)| ExponentVec::indicator(n, VertexSet::from_slice(&[i, j]))).collect();
        Self::from_gens_unchecked(n, gens)
    }

    /// `(x_i : i ∈ set)`.
    pub fn variables(n: usize, set: VertexSet) -> Self {
        Self::from_gens_unchecked(n, set.iter().map(|i| ExponentVec::unit(n, i)).collect())
    }

    /// Squarefree ideal generated by `x_F` for each listed support.
    pub fn from_supports(n: usize, supports: &[VertexSet]) -> Self {
        Self::from_gens_unchecked(n, supports.iter().map(|&s| ExponentVec::indicator(n, s)).collect())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: IdealJson = serde_json::from_str(text)?;
        Self::minimalize(raw.vars, raw.gens.into_iter().map(ExponentVec).collect())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = IdealJson { vars: self.n, gens: self.gens.iter().map(|g| g.0.clone()).collect() };
        serde_json::to_value(raw).expect("ideal serializes")
    }

    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(&self.to_json_value())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[ExponentVec] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].degree() == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(ExponentVec::is_squarefree)
    }

    /// Supports of the generators; for squarefree ideals this determines the
    /// ideal.
    pub fn supports(&self) -> Vec<VertexSet> {
        self.gens.iter().map(ExponentVec::support).collect()
    }

    fn check(&self, a: &ExponentVec) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: a.len() });
        }
        Ok(())
    }

    fn check_ideal(&self, other: &MonomialIdeal) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// `x^a ∈ I`.
    pub fn contains(&self, a: &ExponentVec) -> Result<bool> {
        self.check(a)?;
        Ok(self.contains_unchecked(a))
    }

    #[inline]
    pub(crate) fn contains_unchecked(&self, a: &ExponentVec) -> bool {
        self.gens.iter().any(|g| g.divides(a))
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ideal(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ideal(other)?;
        if self.is_unit() || other.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.add(g));
            }
        }
        Ok(Self::from_gens_unchecked(self.n, gens))
    }

    /// `I^s` by repeated multiplication, minimalizing after each step.
    pub fn power(&self, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroPower);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ideal(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_gens_unchecked(self.n, gens))
    }

    /// `I + (x^g : g ∈ extra)`.
    pub fn with_generators(&self, extra: &[ExponentVec]) -> Result<Self> {
        for g in extra {
            self.check(g)?;
        }
        let gens = self.gens.iter().chain(extra).cloned().collect();
        Ok(Self::from_gens_unchecked(self.n, gens))
    }

    /// `I ∩ J`, generated by the pairwise lcms.
    pub fn intersection(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ideal(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.lcm(g));
            }
        }
        Ok(Self::from_gens_unchecked(self.n, gens))
    }

    /// `I : x^a`.
    pub fn colon(&self, a: &ExponentVec) -> Result<Self> {
        self.check(a)?;
        Ok(Self::from_gens_unchecked(self.n, self.gens.iter().map(|g| g.saturating_sub(a)).collect()))
    }

    /// `√I`, generated by the supports of the generators.
    pub fn radical(&self) -> Self {
        let supports: Vec<VertexSet> = self.supports();
        Self::from_supports(self.n, &supports)
    }

    /// `√(I : x^a)`, generated by `√(f / gcd(f, x^a))` over the generators
    /// `f`. The unit ideal comes back exactly when `x^a ∈ I`.
    pub fn radical_colon(&self, a: &ExponentVec) -> Result<Self> {
        self.check(a)?;
        Ok(Self::from_supports(self.n, &self.radical_colon_supports(a)))
    }

    /// Minimal supports of `√(I : x^a)`: `{j : f_j > a_j}` per generator,
    /// minimalized. Contains the empty set iff `x^a ∈ I`.
    pub(crate) fn radical_colon_supports(&self, a: &ExponentVec) -> Vec<VertexSet> {
        let mut sups = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut s = 0u64;
            for (j, (&gj, &aj)) in g.0.iter().zip(&a.0).enumerate() {
                if gj > aj {
                    s |= 1 << j;
                }
            }
            if s == 0 {
                return vec![VertexSet::EMPTY];
            }
            sups.push(VertexSet(s));
        }
        crate::sets::minimal_sets(sups)
    }

    /// `I_V`: the minimal generators supported inside `set`.
    pub fn restriction(&self, set: VertexSet) -> Self {
        MonomialIdeal { n: self.n, gens: self.gens.iter().filter(|g| g.support().is_subset(set)).cloned().collect() }
    }

    /// `ρ_j(I)`: the largest exponent of `x_j` among the minimal generators.
    pub fn rho(&self, j: usize) -> Result<u32> {
        if j >= self.n {
            return Err(Error::VertexOutOfRange { vertex: j, n: self.n });
        }
        Ok(self.gens.iter().map(|g| g.0[j]).max().unwrap_or(0))
    }

    pub fn rho_vector(&self) -> Vec<u32> {
        (0..self.n).map(|j| self.gens.iter().map(|g| g.0[j]).max().unwrap_or(0)).collect()
    }

    /// `ord_I(f) = max { t : x^f ∈ I^t }`.
    ///
    /// Exact branch and bound: peel a generator dividing `f` and recurse,
    /// memoizing on the remaining exponent. The degree bound
    /// `|f| / min deg` stops the search as soon as it is met.
    pub fn ord(&self, f: &ExponentVec) -> Result<u32> {
        self.check(f)?;
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let min_deg = self.gens.iter().map(ExponentVec::degree).min().unwrap_or(1).max(1);
        let mut memo = HashMap::new();
        Ok(self.ord_rec(f, min_deg, &mut memo))
    }

    fn ord_rec(&self, f: &ExponentVec, min_deg: u32, memo: &mut HashMap<ExponentVec, u32>) -> u32 {
        if let Some(&v) = memo.get(f) {
            return v;
        }
        let bound = f.degree() / min_deg;
        let mut best = 0;
        for g in &self.gens {
            if best == bound {
                break;
            }
            if g.divides(f) {
                let rest = f.saturating_sub(g);
                best = best.max(1 + self.ord_rec(&rest, min_deg, memo));
            }
        }
        memo.insert(f.clone(), best);
        best
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
