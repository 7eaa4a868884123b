//! Degree complexes, the exponent box Γ(I) and Castelnuovo–Mumford
//! regularity of monomial ideals through Takayama's formula
//!
//! `reg(S/I) = max { |a| + i : a ∈ ℕ^n, H̃_{i-1}(lk_{Δ_a(I)} F) ≠ 0 for some
//! face F of Δ_a(I) with F ∩ supp a = ∅ }`,
//!
//! where `a` may be restricted to `a_j < ρ_j(I)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicI64, Ordering};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::FieldSpec;
use crate::monomial::{ExponentVec, MonomialIdeal};
use crate::sets::VertexSet;
use crate::simplicial::SimplicialComplex;

/// `Δ_a(I)`, the complex with `I_{Δ_a(I)} = √(I : x^a)`; void when
/// `x^a ∈ I`.
pub fn degree_complex(ideal: &MonomialIdeal, a: &ExponentVec) -> Result<SimplicialComplex> {
    if a.len() != ideal.ambient() {
        return Err(Error::DimensionMismatch { expected: ideal.ambient(), found: a.len() });
    }
    Ok(SimplicialComplex::from_nonfaces(ideal.ambient(), &ideal.radical_colon_supports(a)))
}

/// Lexicographic walk over the box `0 <= a_j < bound_j`.
#[derive(Clone, Debug)]
pub struct ExponentBox {
    bounds: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl ExponentBox {
    pub fn new(bounds: Vec<u32>) -> Self {
        let next = bounds.iter().all(|&b| b > 0).then(|| vec![0; bounds.len()]);
        ExponentBox { bounds, next }
    }

    /// Number of points in the box.
    pub fn cardinality(&self) -> u128 {
        self.bounds.iter().map(|&b| b as u128).product()
    }
}

impl Iterator for ExponentBox {
    type Item = ExponentVec;

    fn next(&mut self) -> Option<ExponentVec> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for j in (0..succ.len()).rev() {
            succ[j] += 1;
            if succ[j] < self.bounds[j] {
                self.next = Some(succ);
                break;
            }
            succ[j] = 0;
        }
        Some(ExponentVec::new(current))
    }
}

/// The exponents of Γ(I) outside `I`, in lexicographic order. With
/// `extended`, the box grows to `a_j <= ρ_j`.
pub fn gamma_box(ideal: &MonomialIdeal, extended: bool) -> Result<impl Iterator<Item = ExponentVec> + '_> {
    check_proper(ideal)?;
    let bounds = ideal.rho_vector().into_iter().map(|r| if extended { r + 1 } else { r.max(1) }).collect();
    // ρ_j = 0 still admits a_j = 0, hence the max(1) above
    Ok(ExponentBox::new(bounds).filter(move |a| !ideal.contains_unchecked(a)))
}

fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegOptions {
    /// Skip cones: degree complexes coning over a vertex of `supp a`, and
    /// links that are cones.
    pub prune: bool,
    /// Search `a_j <= ρ_j` instead of `a_j < ρ_j`.
    pub extended_box: bool,
}

impl Default for RegOptions {
    fn default() -> Self {
        RegOptions { prune: true, extended_box: false }
    }
}

/// A witness `(a, i, F)` for `reg(S/I) = |a| + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegCertificate {
    pub a: ExponentVec,
    pub i: u32,
    pub face: VertexSet,
    /// `dim H̃_{i-1}(lk F)`, always positive.
    pub hom_dim: usize,
    pub field: FieldSpec,
}

impl RegCertificate {
    /// Value of `|a| + i`, i.e. `reg(S/I)`.
    pub fn quotient_reg(&self) -> u32 {
        self.a.degree() + self.i
    }

    /// Recomputes the homology behind the certificate.
    pub fn verify(&self, ideal: &MonomialIdeal) -> Result<bool> {
        let delta = degree_complex(ideal, &self.a)?;
        if delta.is_void() || !delta.contains_face(self.face) || !self.face.is_disjoint(self.a.support()) {
            return Ok(false);
        }
        let h = delta.link_unchecked(self.face).reduced_homology_dims(self.field);
        Ok(h.get(&(self.i as i32 - 1)) == Some(&self.hom_dim) && self.hom_dim > 0)
    }

    /// `{"reg", "a", "i", "face", "field"}` with 1-based face labels.
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "reg": self.quotient_reg() + 1,
            "a": self.a.as_slice(),
            "i": self.i,
            "face": self.face.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "field": self.field.label(),
        })
    }
}

/// `reg(I) = reg(S/I) + 1` with a certificate, default options.
pub fn takayama_regularity(ideal: &MonomialIdeal, field: FieldSpec) -> Result<(u32, RegCertificate)> {
    takayama_regularity_with(ideal, field, RegOptions::default())
}

/// `reg(I)` with its certificate: lexicographically least `a`, then least
/// face `F` (by sorted vertex list).
///
/// The maximum is found by a parallel sweep over Γ(I) sharing the best value
/// so far; a sequential rescan in lex order then fixes the certificate.
pub fn takayama_regularity_with(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    opts: RegOptions,
) -> Result<(u32, RegCertificate)> {
    let exps: Vec<ExponentVec> = gamma_box(ideal, opts.extended_box)?.collect();
    let best = AtomicI64::new(-1);
    exps.par_iter().for_each(|a| {
        let mut sweep = Sweep::new(ideal, a, field, opts);
        sweep.maximize(&best);
    });
    let max = best.load(Ordering::SeqCst);
    // x^0 ∉ I for a proper ideal, and Δ_0 is nonvoid, so something was found
    assert!(max >= 0, "a proper ideal has a degree complex with homology");
    let max = max as u32;
    let cert = exps
        .par_iter()
        .find_map_first(|a| Sweep::new(ideal, a, field, opts).certificate(max))
        .expect("the maximizing exponent is revisited");
    Ok((max + 1, cert))
}

/// One certificate (least face) for every `a` in Γ(I) achieving the maximum,
/// in lex order of `a`.
///
/// Each returned `Δ_a(I)` is checked not to be a cone over a vertex of
/// `supp a`; the sweep runs without that pruning so the check has teeth.
pub fn extremal_exponents(ideal: &MonomialIdeal, field: FieldSpec) -> Result<Vec<RegCertificate>> {
    let (reg, _) = takayama_regularity(ideal, field)?;
    let max = reg - 1;
    let opts = RegOptions { prune: false, extended_box: false };
    let exps: Vec<ExponentVec> = gamma_box(ideal, false)?.collect();
    let certs: Vec<RegCertificate> =
        exps.par_iter().filter_map(|a| Sweep::new(ideal, a, field, opts).certificate(max)).collect();
    for c in &certs {
        let delta = degree_complex(ideal, &c.a)?;
        assert!(delta.apexes().is_disjoint(c.a.support()), "extremal degree complex is a cone over a vertex of supp a");
    }
    Ok(certs)
}

/// Search state for a single exponent `a`.
struct Sweep {
    a: ExponentVec,
    delta: SimplicialComplex,
    supp: VertexSet,
    deg: i64,
    field: FieldSpec,
    opts: RegOptions,
    /// top degree `d` with `H̃_d ≠ 0` and its dimension, keyed by link facets
    memo: HashMap<Vec<VertexSet>, Option<(i32, usize)>>,
}

impl Sweep {
    fn new(ideal: &MonomialIdeal, a: &ExponentVec, field: FieldSpec, opts: RegOptions) -> Self {
        let delta = SimplicialComplex::from_nonfaces(ideal.ambient(), &ideal.radical_colon_supports(a));
        Sweep { a: a.clone(), delta, supp: a.support(), deg: a.degree() as i64, field, opts, memo: HashMap::new() }
    }

    fn skip_exponent(&self) -> bool {
        self.delta.is_void() || (self.opts.prune && !self.delta.apexes().is_disjoint(self.supp))
    }

    /// Largest `d` with `H̃_d(lk F) ≠ 0`, if any.
    fn top_homology(&mut self, face: VertexSet) -> Option<(i32, usize)> {
        let lk = self.delta.link_unchecked(face);
        if self.opts.prune && !lk.apexes().is_empty() {
            return None;
        }
        let key = lk.facets().to_vec();
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let h = lk.reduced_homology_dims(self.field);
        let top = h.iter().rev().find(|(_, &dim)| dim > 0).map(|(&d, &dim)| (d, dim));
        self.memo.insert(key, top);
        top
    }

    /// Faces disjoint from `supp a` with at most `max_size` vertices,
    /// grouped by size.
    fn face_levels(&self, max_size: i64) -> Vec<Vec<VertexSet>> {
        let facets: Vec<VertexSet> = self.delta.facets().iter().map(|f| f.difference(self.supp)).collect();
        let mut levels = vec![vec![VertexSet::EMPTY]];
        let mut k = 0;
        while (k as i64) < max_size {
            let mut next = Vec::new();
            for &f in &levels[k] {
                let above = match f.iter().last() {
                    Some(m) => m + 1,
                    None => 0,
                };
                let room = facets
                    .iter()
                    .filter(|b| f.is_subset(**b))
                    .fold(VertexSet::EMPTY, |acc, b| acc.union(*b))
                    .difference(f);
                for v in room.iter().filter(|&v| v >= above) {
                    let g = f.with(v);
                    if facets.iter().any(|b| g.is_subset(*b)) {
                        next.push(g);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
            k += 1;
        }
        levels
    }

    /// Raises `best` to the best `|a| + i` found here, skipping faces whose
    /// link is too small to beat it.
    fn maximize(&mut self, best: &AtomicI64) {
        if self.skip_exponent() {
            return;
        }
        let dim = self.delta.dim().expect("nonvoid") as i64;
        // i - 1 <= dim lk F <= dim - |F|
        let deg = self.deg;
        let ceiling = move |k: i64| deg + dim + 1 - k;
        let floor = best.load(Ordering::Relaxed);
        if ceiling(0) <= floor {
            return;
        }
        let levels = self.face_levels(dim + 1);
        for (k, level) in levels.iter().enumerate() {
            if ceiling(k as i64) <= best.load(Ordering::Relaxed) {
                break;
            }
            for &f in level {
                let floor = best.load(Ordering::Relaxed);
                if ceiling(k as i64) <= floor {
                    break;
                }
                if let Some((d, _)) = self.top_homology(f) {
                    best.fetch_max(self.deg + d as i64 + 1, Ordering::Relaxed);
                }
            }
        }
    }

    /// The least face `F` with `|a| + i = target`, if any.
    fn certificate(&mut self, target: u32) -> Option<RegCertificate> {
        if self.skip_exponent() {
            return None;
        }
        let i = target as i64 - self.deg;
        let dim = self.delta.dim().expect("nonvoid") as i64;
        if i < 0 || i > dim + 1 {
            return None;
        }
        // a face of size k has a link of dimension at most dim - k, so i - 1 <= dim - k
        let mut faces: Vec<VertexSet> = self.face_levels(dim + 1 - i).into_iter().flatten().collect();
        faces.sort_by_key(|f| f.lex_key());
        for f in faces {
            let lk = self.delta.link_unchecked(f);
            if self.opts.prune && !lk.apexes().is_empty() {
                continue;
            }
            let h = lk.reduced_homology_dims(self.field);
            if let Some(&dim) = h.get(&(i as i32 - 1)) {
                if dim > 0 {
                    return Some(RegCertificate {
                        a: self.a.clone(),
                        i: i as u32,
                        face: f,
                        hom_dim: dim,
                        field: self.field,
                    });
                }
            }
        }
        None
    }
}

/// Evaluates `Σ_{j ∈ N(F)} a_j + ord_I(∏_{u ∉ N[F]} x_u^{a_u}) >= s` for
/// `I = I(G)`, which holds iff `x_F ∈ √(I^s : x^a)`.
pub fn criterion_in_power_check(g: &Graph, s: u32, a: &ExponentVec, face: VertexSet) -> Result<bool> {
    if a.len() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), found: a.len() });
    }
    if !g.is_independent(face) {
        return Err(Error::NotIndependent(format!("{:?}", face.iter().map(|v| v + 1).collect::<Vec<_>>())));
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let open = g.open_neighborhood(face)?;
    let closed = g.closed_neighborhood(face)?;
    let near: u32 = open.iter().map(|j| a[j]).sum();
    let far = a.restrict(VertexSet::full(g.n()).difference(closed));
    let ord = MonomialIdeal::edge_ideal(g).ord(&far)?;
    Ok(near + ord >= s)
}

/// `reg (I + J)^s` for ideals in disjoint variables from `reg I^k` and
/// `reg J^k`, `k = 1..s` (`regs_a[k - 1] = reg I^k`):
///
/// `max_{i ∈ [1, s-1], j ∈ [1, s]} { reg I^{s-i} + reg J^i, reg I^{s-j+1} + reg J^j - 1 }`.
pub fn mixed_sum_regularity(regs_a: &[u32], regs_b: &[u32], s: u32) -> Result<u32> {
    if s == 0 {
        return Err(Error::ZeroPower);
    }
    let s = s as usize;
    for regs in [regs_a, regs_b] {
        if regs.len() < s {
            return Err(Error::ListTooShort { needed: s, found: regs.len() });
        }
    }
    let ra = |k: usize| regs_a[k - 1];
    let rb = |k: usize| regs_b[k - 1];
    let first = (1..s).map(|i| ra(s - i) + rb(i));
    let second = (1..=s).map(|j| ra(s - j + 1) + rb(j) - 1);
    Ok(first.chain(second).max().expect("s >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVec {
        ExponentVec::new(v.to_vec())
    }

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::minimalize(n, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    fn edge_power(g: &Graph, s: u32) -> MonomialIdeal {
        MonomialIdeal::edge_ideal(g).power(s).unwrap()
    }

    #[test]
    fn box_order_and_size() {
        let b: Vec<_> = ExponentBox::new(vec![2, 3]).map(|a| a.into_vec()).collect();
        assert_eq!(b, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        assert_eq!(ExponentBox::new(vec![3; 6]).cardinality(), 729);
        let sq = ideal(2, &[&[2, 2]]);
        assert_eq!(gamma_box(&sq, false).unwrap().count(), 4);
        let c3 = MonomialIdeal::edge_ideal(&Graph::complete(3).unwrap());
        assert_eq!(gamma_box(&c3, false).unwrap().collect::<Vec<_>>(), vec![ev(&[0, 0, 0])]);
    }

    #[test]
    fn degree_complex_examples() {
        let c3 = Graph::complete(3).unwrap();
        let i1 = MonomialIdeal::edge_ideal(&c3);
        // Δ_0 of a triangle's edge ideal is three points
        let d = degree_complex(&i1, &ev(&[0, 0, 0])).unwrap();
        assert_eq!(d.facets(), &[VertexSet::singleton(0), VertexSet::singleton(1), VertexSet::singleton(2)]);
        // √(I² : x1x2) = (x3, x1x2): two points
        let d = degree_complex(&edge_power(&c3, 2), &ev(&[1, 1, 0])).unwrap();
        assert_eq!(d.facets(), &[VertexSet::singleton(0), VertexSet::singleton(1)]);
        assert!(degree_complex(&i1, &ev(&[1, 1, 0])).unwrap().is_void());
        // a_j >= ρ_j: cone over j or void
        let i = ideal(3, &[&[2, 1, 0], &[0, 1, 1]]);
        let d = degree_complex(&i, &ev(&[2, 0, 0])).unwrap();
        assert!(d.is_cone(0).unwrap());
    }

    #[test]
    fn single_quadric() {
        let i = ideal(2, &[&[1, 1]]);
        let (r, c) = takayama_regularity(&i, FieldSpec::RATIONALS).unwrap();
        assert_eq!(r, 2);
        assert_eq!((c.a.clone(), c.i), (ev(&[0, 0]), 1));
        assert!(c.verify(&i).unwrap());
        let j = ideal(3, &[&[1, 1, 0]]);
        assert_eq!(takayama_regularity(&j, FieldSpec::GF2).unwrap().0, 2);
    }

    #[test]
    fn powers_of_monomials_and_variables() {
        // (x1^3): reg 3; (x1, x2)^2: reg 2; (x1^2, x2^3): reg 4
        assert_eq!(takayama_regularity(&ideal(1, &[&[3]]), FieldSpec::RATIONALS).unwrap().0, 3);
        let m = MonomialIdeal::variables(2, VertexSet::full(2)).power(2).unwrap();
        assert_eq!(takayama_regularity(&m, FieldSpec::RATIONALS).unwrap().0, 2);
        assert_eq!(takayama_regularity(&ideal(2, &[&[2, 0], &[0, 3]]), FieldSpec::GF3).unwrap().0, 4);
    }

    #[test]
    fn two_edges_cubed() {
        let k = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let i3 = edge_power(&k, 3);
        let (r, c) = takayama_regularity(&i3, FieldSpec::RATIONALS).unwrap();
        assert_eq!(r, 7);
        assert!(c.verify(&i3).unwrap());
        let unpruned = RegOptions { prune: false, extended_box: false };
        assert_eq!(takayama_regularity_with(&i3, FieldSpec::RATIONALS, unpruned).unwrap(), (r, c));
    }

    #[test]
    fn triangle_powers() {
        let c3 = Graph::complete(3).unwrap();
        for s in 1..=3 {
            let (r, _) = takayama_regularity(&edge_power(&c3, s), FieldSpec::GF2).unwrap();
            assert_eq!(r, 2 * s);
        }
    }

    #[test]
    fn rp2_field_dependence() {
        // the Stanley–Reisner ideal of the 6-vertex projective plane
        let rp2 = crate::simplicial::tests::rp2();
        let i = rp2.sr_ideal().unwrap();
        assert_eq!(takayama_regularity(&i, FieldSpec::GF2).unwrap().0, 4);
        assert_eq!(takayama_regularity(&i, FieldSpec::RATIONALS).unwrap().0, 3);
        assert_eq!(takayama_regularity(&i, FieldSpec::GF3).unwrap().0, 3);
    }

    #[test]
    fn errors() {
        assert_eq!(takayama_regularity(&MonomialIdeal::zero(2), FieldSpec::GF2), Err(Error::ZeroIdeal));
        assert_eq!(takayama_regularity(&MonomialIdeal::unit(2), FieldSpec::GF2), Err(Error::UnitIdeal));
        assert!(degree_complex(&ideal(2, &[&[1, 1]]), &ev(&[1])).is_err());
    }

    #[test]
    fn extremal_exponents_of_a_squarefree_ideal() {
        let i = MonomialIdeal::edge_ideal(&Graph::cycle(5).unwrap());
        let certs = extremal_exponents(&i, FieldSpec::RATIONALS).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].a, ExponentVec::zeros(5));
        assert_eq!(certs[0].quotient_reg() + 1, 3);
    }

    #[test]
    fn certificate_json() {
        let i = ideal(2, &[&[1, 1]]);
        let (_, c) = takayama_regularity(&i, FieldSpec::GF2).unwrap();
        let text = crate::json::to_canonical_string(&c.to_json_value());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["reg"], 2);
        assert_eq!(v["field"], "f2");
        assert_eq!(v["a"], json!([0, 0]));
    }

    #[test]
    fn criterion_examples() {
        let p = Graph::path(3).unwrap();
        let a = ev(&[0, 1, 0]);
        assert!(criterion_in_power_check(&p, 1, &a, VertexSet::singleton(0)).unwrap());
        assert!(!criterion_in_power_check(&p, 2, &a, VertexSet::singleton(0)).unwrap());
        assert!(criterion_in_power_check(&p, 1, &a, VertexSet::from_slice(&[0, 1])).is_err());
        let e = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(criterion_in_power_check(&e, 1, &ev(&[1, 1, 0]), VertexSet::singleton(2)).unwrap());
    }

    #[test]
    fn mixed_sum() {
        assert_eq!(mixed_sum_regularity(&[2, 4, 6], &[2, 4, 6], 3).unwrap(), 7);
        assert_eq!(mixed_sum_regularity(&[5], &[2], 1).unwrap(), 6);
        assert_eq!(mixed_sum_regularity(&[2, 4], &[2, 4, 6], 3), Err(Error::ListTooShort { needed: 3, found: 2 }));
        // matches the engine on two disjoint triangles
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        let (r, _) = takayama_regularity(&edge_power(&g, 3), FieldSpec::RATIONALS).unwrap();
        assert_eq!(r, 7);
    }
}
