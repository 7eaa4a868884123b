//! Simple undirected graphs on `{0, .., n-1}` and the combinatorics the
//! regularity and closure computations lean on.
//!
//! Vertices are 0-based in the API. The JSON form uses 1-based labels:
//! `{"n": 5, "edges": [[1, 2], [2, 3]]}`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{minimal_transversals, VertexSet, MAX_VARS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n] })
    }

    /// Builds a graph from 0-based edges, rejecting loops, repeated edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{}, {}}}", u + 1, v + 1)));
            }
            g.adj[u] = g.adj[u].with(v);
            g.adj[v] = g.adj[v].with(u);
        }
        Ok(g)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for [i, j] in raw.edges {
            if i == 0 || j == 0 {
                return Err(Error::InvalidGraph("vertex labels start at 1".into()));
            }
            edges.push((i - 1, j - 1));
        }
        Graph::new(raw.n, &edges)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = GraphJson { n: self.n, edges: self.edges().into_iter().map(|(i, j)| [i + 1, j + 1]).collect() };
        serde_json::to_value(raw).expect("graph serializes")
    }

    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(&self.to_json_value())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.adj[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    fn check_set(&self, set: VertexSet) -> Result<()> {
        match set.difference(self.vertices()).first() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    /// `N(U)`: vertices adjacent to some member of `U`.
    pub fn open_neighborhood(&self, set: VertexSet) -> Result<VertexSet> {
        self.check_set(set)?;
        Ok(set.iter().fold(VertexSet::EMPTY, |acc, u| acc.union(self.adj[u])))
    }

    /// `N[U] = U ∪ N(U)`.
    pub fn closed_neighborhood(&self, set: VertexSet) -> Result<VertexSet> {
        Ok(self.open_neighborhood(set)?.union(set))
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|u| self.adj[u].is_disjoint(set))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for w in self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen.contains(v) {
                continue;
            }
            let mut comp = VertexSet::singleton(v);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = frontier.iter().fold(VertexSet::EMPTY, |acc, u| acc.union(self.adj[u])).difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for root in 0..self.n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for w in self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every simple odd cycle (or only the chordless ones), each once.
    ///
    /// A cycle is reported as a vertex sequence starting at its smallest
    /// vertex, oriented so the second entry is below the last; the list is
    /// sorted.
    pub fn enumerate_odd_cycles(&self, induced_only: bool) -> Vec<Vec<usize>> {
        self.odd_cycles_up_to(self.n, induced_only)
    }

    /// As [`Graph::enumerate_odd_cycles`], keeping cycles of length at most
    /// `max_len`.
    pub fn odd_cycles_up_to(&self, max_len: usize, induced_only: bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for comp in self.components() {
            if comp.len() < 3 || self.induced_subgraph_is_bipartite(comp) {
                continue;
            }
            for start in comp {
                let mut path = vec![start];
                self.extend_cycles(&mut path, VertexSet::singleton(start), max_len, induced_only, &mut out);
            }
        }
        out.sort();
        out
    }

    fn induced_subgraph_is_bipartite(&self, set: VertexSet) -> bool {
        let (sub, _) = self.induced_subgraph(set);
        sub.is_bipartite()
    }

    fn extend_cycles(
        &self,
        path: &mut Vec<usize>,
        on_path: VertexSet,
        max_len: usize,
        induced_only: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let start = path[0];
        let last = *path.last().unwrap();
        let len = path.len();
        if len >= 3 && self.adj[last].contains(start) && path[1] < last && len % 2 == 1 {
            out.push(path.clone());
        }
        if len == max_len {
            return;
        }
        // interior vertices: everything on the path except the start and the last vertex
        let interior = on_path.without(start).without(last);
        for v in self.adj[last].iter().filter(|&v| v > start && !on_path.contains(v)) {
            if induced_only {
                if !self.adj[v].is_disjoint(interior) {
                    continue;
                }
                // a neighbour of the start closes the cycle; a chordless
                // cycle cannot run past it
                if len >= 2 && self.adj[v].contains(start) {
                    if (len + 1) % 2 == 1 && path[1] < v {
                        let mut cyc = path.clone();
                        cyc.push(v);
                        out.push(cyc);
                    }
                    continue;
                }
            }
            path.push(v);
            self.extend_cycles(path, on_path.with(v), max_len, induced_only, out);
            path.pop();
        }
    }

    /// Largest number of edges forming an induced matching.
    pub fn induced_matching_number(&self) -> usize {
        let mut best = 0;
        self.induced_matching_branch(self.vertices(), 0, &mut best);
        best
    }

    fn induced_matching_branch(&self, avail: VertexSet, size: usize, best: &mut usize) {
        // vertices of `avail` with a neighbour inside `avail`
        let active: VertexSet = avail.iter().filter(|&v| !self.adj[v].is_disjoint(avail)).collect();
        if size + active.len() / 2 <= *best {
            return;
        }
        let Some(u) = active.first() else {
            *best = (*best).max(size);
            return;
        };
        let nu = self.adj[u].with(u);
        for w in self.adj[u].intersection(active) {
            let blocked = nu.union(self.adj[w]).with(w);
            self.induced_matching_branch(active.difference(blocked), size + 1, best);
        }
        self.induced_matching_branch(active.without(u), size, best);
    }

    /// All inclusion-minimal vertex covers, in lexicographic order of their
    /// sorted vertex lists.
    pub fn minimal_vertex_covers(&self) -> Vec<VertexSet> {
        let edges: Vec<VertexSet> = self.edges().into_iter().map(|(i, j)| VertexSet::from_slice(&[i, j])).collect();
        let mut covers = minimal_transversals(&edges);
        covers.sort_by_key(|c| c.lex_key());
        covers
    }

    /// The subgraph induced on `set`, relabelled `0..|set|` in increasing
    /// order, with the map from new labels back to original vertices.
    pub fn induced_subgraph(&self, set: VertexSet) -> (Graph, Vec<usize>) {
        let labels = set.intersection(self.vertices()).to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in labels.iter().enumerate() {
            index[old] = new;
        }
        let mut edges = Vec::new();
        for (i, j) in self.edges() {
            if index[i] != usize::MAX && index[j] != usize::MAX {
                edges.push((index[i], index[j]));
            }
        }
        let g = Graph::new(labels.len(), &edges).expect("induced subgraph is simple");
        (g, labels)
    }

    /// `self ⊔ other`, with the vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(i, j)| (i + shift, j + shift)));
        Graph::new(self.n + other.n, &edges)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(self.n, &edges).expect("complement is simple")
    }
}
