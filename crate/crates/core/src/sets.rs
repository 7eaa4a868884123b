//! Subsets of `{0, .., n-1}` packed into a machine word.

use std::fmt;

/// Largest ambient dimension supported by [`VertexSet`].
pub const MAX_VARS: usize = 64;

/// A set of vertices (equivalently, variable indices) stored as a bitmask.
///
/// Indices are 0-based. The derived `Ord` compares raw masks; use
/// [`VertexSet::lex_key`] when a lexicographic order on the sorted element
/// lists is needed.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VARS);
        if n == MAX_VARS {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        vs.iter().fold(VertexSet::EMPTY, |s, &v| s.with(v))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_VARS && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Sorted element list, for lexicographic comparison of faces.
    pub fn lex_key(self) -> Vec<usize> {
        self.to_vec()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Subset enumeration by the usual `(sub - mask) & mask` walk.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask { None } else { Some(cur.wrapping_sub(self.mask) & self.mask) };
        Some(VertexSet(cur))
    }
}

/// All inclusion-minimal sets meeting every hyperedge, sorted by mask.
///
/// Branches on the lowest-index hyperedge not yet met by the partial
/// transversal. An empty hyperedge can never be met, so the result is then
/// empty; an empty hyperedge list has the single transversal `{}`.
pub fn minimal_transversals(edges: &[VertexSet]) -> Vec<VertexSet> {
    if edges.iter().any(|e| e.is_empty()) {
        return Vec::new();
    }
    let edges = minimal_sets(edges.to_vec());
    let mut out = Vec::new();
    branch_transversals(&edges, VertexSet::EMPTY, VertexSet::EMPTY, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

fn branch_transversals(edges: &[VertexSet], chosen: VertexSet, forbidden: VertexSet, out: &mut Vec<VertexSet>) {
    let Some(edge) = edges.iter().find(|e| e.is_disjoint(chosen)) else {
        if is_minimal_transversal(edges, chosen) {
            out.push(chosen);
        }
        return;
    };
    // Each vertex of the edge is tried in turn; vertices already tried are
    // forbidden in later branches so every transversal is reached once.
    let mut forbid = forbidden;
    for v in edge.difference(forbidden) {
        let next = chosen.with(v);
        // a chosen vertex must keep a private edge, otherwise the branch
        // cannot end in a minimal transversal
        if chosen.iter().all(|u| has_private_edge(edges, next, u)) {
            branch_transversals(edges, next, forbid, out);
        }
        forbid = forbid.with(v);
    }
}

fn has_private_edge(edges: &[VertexSet], set: VertexSet, v: usize) -> bool {
    let rest = set.without(v);
    edges.iter().any(|e| e.contains(v) && e.is_disjoint(rest))
}

fn is_minimal_transversal(edges: &[VertexSet], set: VertexSet) -> bool {
    set.iter().all(|v| has_private_edge(edges, set, v))
}

/// Inclusion-minimal members of `sets`, deduplicated and sorted by mask.
pub fn minimal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable_by_key(|s| (s.len(), s.0));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Inclusion-maximal members of `sets`, deduplicated and sorted by mask.
pub fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_unstable_by_key(|s| (std::cmp::Reverse(s.len()), s.0));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}
