//! Simplicial complexes given by their facets, the Stanley–Reisner
//! dictionary, links, cones and reduced homology over a field.
//!
//! The void complex (no faces) and the empty complex `{∅}` are different
//! states and behave differently everywhere: the void complex has no
//! homology at all, while `{∅}` has `H̃_{-1} = k`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{FieldSpec, SparseMatrix};
use crate::monomial::MonomialIdeal;
use crate::sets::{maximal_sets, minimal_transversals, VertexSet, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexState {
    /// No faces at all.
    Void,
    /// Only the empty face.
    Empty,
    /// At least one vertex.
    Facets,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    /// `None` for the void complex; otherwise a sorted antichain, `[∅]` for `{∅}`.
    facets: Option<Vec<VertexSet>>,
}

/// `dim H̃_d` for `d = -1 ..= dim Δ`; empty for the void complex.
pub type HomologyDims = BTreeMap<i32, usize>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    n: usize,
    facets: Vec<Vec<usize>>,
    state: ComplexState,
}

impl SimplicialComplex {
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: None }
    }

    /// `{∅}`.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex { n, facets: Some(vec![VertexSet::EMPTY]) }
    }

    /// The full simplex on `set`.
    pub fn simplex(n: usize, set: VertexSet) -> Self {
        SimplicialComplex { n, facets: Some(vec![set]) }
    }

    /// Complex generated by `facets`; non-maximal entries are dropped and an
    /// empty list gives the void complex.
    pub fn from_facets(n: usize, facets: Vec<VertexSet>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        if let Some(v) = facets.iter().flat_map(|f| f.iter()).find(|&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        Ok(Self::from_facets_unchecked(n, facets))
    }

    pub(crate) fn from_facets_unchecked(n: usize, facets: Vec<VertexSet>) -> Self {
        if facets.is_empty() {
            return Self::void(n);
        }
        SimplicialComplex { n, facets: Some(maximal_sets(facets)) }
    }

    /// The complex whose minimal non-faces are (contained in) `nonfaces`:
    /// facets are the complements of the minimal transversals.
    pub(crate) fn from_nonfaces(n: usize, nonfaces: &[VertexSet]) -> Self {
        let full = VertexSet::full(n);
        let facets: Vec<VertexSet> = minimal_transversals(nonfaces).into_iter().map(|t| full.difference(t)).collect();
        Self::from_facets_unchecked(n, facets)
    }

    /// `Δ(J) = { F : x_F ∉ J }` for a squarefree ideal `J`.
    pub fn sr_complex(ideal: &MonomialIdeal) -> Result<Self> {
        if !ideal.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        Ok(Self::from_nonfaces(ideal.ambient(), &ideal.supports()))
    }

    /// `I_Δ = (x_F : F ∉ Δ)`, generated by the minimal non-faces. A set is
    /// a non-face iff it meets the complement of every facet, so these are
    /// the minimal transversals of the facet complements.
    pub fn sr_ideal(&self) -> Result<MonomialIdeal> {
        let facets = self.facets.as_ref().ok_or(Error::VoidComplex)?;
        let full = VertexSet::full(self.n);
        let complements: Vec<VertexSet> = facets.iter().map(|f| full.difference(*f)).collect();
        Ok(MonomialIdeal::from_supports(self.n, &minimal_transversals(&complements)))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn state(&self) -> ComplexState {
        match &self.facets {
            None => ComplexState::Void,
            Some(f) if f.len() == 1 && f[0].is_empty() => ComplexState::Empty,
            Some(_) => ComplexState::Facets,
        }
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_none()
    }

    /// Facets; empty for the void complex and `[∅]` for `{∅}`.
    pub fn facets(&self) -> &[VertexSet] {
        self.facets.as_deref().unwrap_or(&[])
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<i32> {
        self.facets.as_ref().map(|f| f.iter().map(|s| s.len() as i32).max().unwrap_or(0) - 1)
    }

    pub fn vertices(&self) -> VertexSet {
        self.facets().iter().fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        self.facets().iter().any(|f| face.is_subset(*f))
    }

    /// All faces, including `∅` when the complex is not void, ordered by
    /// size and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for f in self.facets() {
            seen.extend(f.subsets());
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort_by_key(|f| (f.len(), f.lex_key()));
        out
    }

    /// `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let Some(d) = self.dim() else { return Vec::new() };
        let mut counts = vec![0usize; (d + 2) as usize];
        for f in self.faces() {
            counts[f.len()] += 1;
        }
        counts
    }

    /// `lk_Δ F`, with facets `B \ F` over the facets `B ⊇ F`.
    pub fn link(&self, face: VertexSet) -> Result<SimplicialComplex> {
        if !self.contains_face(face) {
            return Err(Error::NotAFace(format!("{:?}", face.iter().map(|v| v + 1).collect::<Vec<_>>())));
        }
        Ok(self.link_unchecked(face))
    }

    pub(crate) fn link_unchecked(&self, face: VertexSet) -> SimplicialComplex {
        let facets: Vec<VertexSet> =
            self.facets().iter().filter(|b| face.is_subset(**b)).map(|b| b.difference(face)).collect();
        // the B \ F are already pairwise incomparable
        let mut facets = facets;
        facets.sort_unstable();
        SimplicialComplex { n: self.n, facets: (!facets.is_empty()).then_some(facets) }
    }

    /// Vertices lying in every facet; nonempty iff the complex is a cone.
    pub fn apexes(&self) -> VertexSet {
        let mut it = self.facets().iter();
        let first = it.next().copied().unwrap_or(VertexSet::EMPTY);
        it.fold(first, |acc, f| acc.intersection(*f))
    }

    /// Whether every facet contains `v`.
    pub fn is_cone(&self, v: usize) -> Result<bool> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        Ok(self.apexes().contains(v))
    }

    /// Checks that a cone over `v` has vanishing reduced homology over `field`.
    pub fn cone_acyclicity_check(&self, v: usize, field: FieldSpec) -> Result<bool> {
        if !self.is_cone(v)? {
            return Err(Error::NotACone(v));
        }
        Ok(self.reduced_homology_dims(field).values().all(|&d| d == 0))
    }

    /// The 1-skeleton as a graph on the ambient vertex set.
    pub fn one_skeleton(&self) -> Graph {
        let mut edges = HashSet::new();
        for f in self.facets() {
            let vs = f.to_vec();
            for (i, &u) in vs.iter().enumerate() {
                for &w in &vs[i + 1..] {
                    edges.insert((u, w));
                }
            }
        }
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        Graph::new(self.n, &edges).expect("skeleton edges are simple")
    }

    /// `dim_k H̃_d(Δ; k)` for `d = -1 ..= dim Δ`.
    ///
    /// Dominated vertices are deleted first (a strong collapse, which keeps
    /// the homotopy type), then the ranks of the boundary maps of the reduced
    /// complex give `dim H̃_d = f_d - rank ∂_d - rank ∂_{d+1}`, with the
    /// augmentation as `∂_0`.
    pub fn reduced_homology_dims(&self, field: FieldSpec) -> HomologyDims {
        let Some(dim) = self.dim() else { return HomologyDims::new() };
        let mut out: HomologyDims = (-1..=dim).map(|d| (d, 0)).collect();
        let core = strong_collapse(self.facets().to_vec());
        if core.len() == 1 && core[0].len() == 1 {
            // collapsed to a point
            return out;
        }
        for (d, h) in homology_of_facets(&core, field) {
            out.insert(d, h);
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        let mut facets = Vec::with_capacity(raw.facets.len());
        for f in &raw.facets {
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > raw.n) {
                return Err(Error::VertexOutOfRange { vertex: v, n: raw.n });
            }
            facets.push(f.iter().map(|v| v - 1).collect::<VertexSet>());
        }
        let c = Self::from_facets(raw.n, facets)?;
        if c.state() != raw.state {
            return Err(Error::Json(format!("state {:?} does not match the facet list", raw.state)));
        }
        Ok(c)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = ComplexJson {
            n: self.n,
            facets: self.facets().iter().map(|f| f.iter().map(|v| v + 1).collect()).collect(),
            state: self.state(),
        };
        serde_json::to_value(raw).expect("complex serializes")
    }

    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(&self.to_json_value())
    }
}

/// Repeatedly deletes a vertex `v` whose star lies in the star of another
/// vertex (every facet containing `v` contains some fixed `w ≠ v`).
fn strong_collapse(mut facets: Vec<VertexSet>) -> Vec<VertexSet> {
    loop {
        let verts = facets.iter().fold(VertexSet::EMPTY, |acc, f| acc.union(*f));
        if verts.len() <= 1 {
            return facets;
        }
        let dominated = verts.iter().find(|&v| {
            let star = facets.iter().filter(|f| f.contains(v)).fold(verts, |acc, f| acc.intersection(*f));
            star.len() > 1
        });
        let Some(v) = dominated else { return facets };
        facets = maximal_sets(facets.into_iter().map(|f| f.without(v)).collect());
    }
}

fn homology_of_facets(facets: &[VertexSet], field: FieldSpec) -> Vec<(i32, usize)> {
    let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    // levels[k] = faces with k vertices, sorted
    let mut levels: Vec<Vec<VertexSet>> = vec![Vec::new(); top + 1];
    let mut seen: HashSet<VertexSet> = HashSet::new();
    for f in facets {
        for s in f.subsets() {
            if seen.insert(s) {
                levels[s.len()].push(s);
            }
        }
    }
    for level in levels.iter_mut() {
        level.sort_unstable();
    }
    // rank of ∂ from faces of size k to faces of size k - 1, for k >= 1
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<VertexSet, u32> = levels[k - 1].iter().enumerate().map(|(i, f)| (*f, i as u32)).collect();
        let mut m = SparseMatrix::new(levels[k - 1].len());
        for face in &levels[k] {
            let row = face
                .iter()
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (index[&face.without(v)], sign)
                })
                .collect();
            m.push_row(row);
        }
        ranks[k] = m.rank(field);
    }
    (0..=top).map(|k| (k as i32 - 1, levels[k].len() - ranks[k] - ranks[k + 1])).collect()
}
