//! Integral closures of powers of edge ideals, normality, symbolic powers and
//! the intermediate ideals between a power and its closure.
//!
//! The production route builds `closure(I^s)` from products of vertex-disjoint
//! odd cycles times edges. [`newton_closure_edge_power`] rebuilds the same
//! ideal from Newton-polyhedron membership alone and serves as its
//! independent check.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::lp_feasible_convex_cover;
use crate::monomial::{ExponentVec, MonomialIdeal};
use crate::sets::VertexSet;

/// A minimal generator of `closure(I^s)` outside `I^s`, written as
/// `x_{C_1} ... x_{C_2a} * e_1 ... e_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraGenerator {
    pub exponent: ExponentVec,
    /// Odd cycles as vertex sequences (0-based).
    pub cycles: Vec<Vec<usize>>,
    /// Edges `(i, j)`, `i < j` (0-based).
    pub edges: Vec<(usize, usize)>,
}

impl ExtraGenerator {
    /// `(|C_1| + ... + |C_2a|) / 2 + b`.
    pub fn weight(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum::<usize>() / 2 + self.edges.len()
    }
}

impl Serialize for ExponentVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

#[derive(Clone, Debug)]
pub struct ClosureGenerators {
    pub power: u32,
    /// `I^s`.
    pub base: MonomialIdeal,
    /// `closure(I^s)`.
    pub closure: MonomialIdeal,
    /// Generators of the closure not in `I^s`, in the closure's order.
    pub extra: Vec<ExtraGenerator>,
}

impl ClosureGenerators {
    /// Each witness has the right weight and multiplies out to its
    /// generator; each extra generator lies outside `I^s` and inside the
    /// Newton polyhedron of `I^s`.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        let n = g.n();
        for x in &self.extra {
            if x.cycles.len() % 2 != 0 || x.cycles.is_empty() || x.weight() != self.power as usize {
                return Ok(false);
            }
            let mut prod = ExponentVec::zeros(n);
            for c in &x.cycles {
                prod = prod.add(&ExponentVec::indicator(n, c.iter().copied().collect()));
            }
            for &(i, j) in &x.edges {
                if !g.has_edge(i, j) {
                    return Ok(false);
                }
                prod = prod.add(&ExponentVec::indicator(n, VertexSet::from_slice(&[i, j])));
            }
            if prod != x.exponent || self.base.contains(&x.exponent)? || !newton_membership(&self.base, &x.exponent)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `closure(I(G)^s)` with a witness decomposition for every generator
/// outside `I(G)^s`.
///
/// Candidates are `x_{C_1} ... x_{C_2a} * m` over vertex-disjoint odd cycles
/// (any simple odd cycle, not only chordless ones) and minimal generators `m`
/// of `I^b`, where `(|C_1| + ... + |C_2a|) / 2 + b = s`. Redundant products
/// fall away when the union with `I^s` is minimalized.
pub fn integral_closure_edge_power(g: &Graph, s: u32) -> Result<ClosureGenerators> {
    if s == 0 {
        return Err(Error::ZeroPower);
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n();
    let ideal = MonomialIdeal::edge_ideal(g);
    let base = ideal.power(s)?;
    let s = s as usize;

    // two cycles contribute at least 3 to the weight
    let max_cycle = (2 * s).saturating_sub(3);
    let mut by_set: Vec<(VertexSet, Vec<usize>)> = Vec::new();
    let mut seen_sets = HashSet::new();
    if max_cycle >= 3 {
        for c in g.odd_cycles_up_to(max_cycle, false) {
            let set: VertexSet = c.iter().copied().collect();
            if seen_sets.insert(set) {
                by_set.push((set, c));
            }
        }
    }
    by_set.sort_by_key(|(set, _)| (set.len(), set.lex_key()));

    let mut witnesses: HashMap<ExponentVec, (Vec<Vec<usize>>, ExponentVec)> = HashMap::new();
    let mut candidates: Vec<ExponentVec> = Vec::new();
    let mut power_cache: HashMap<usize, MonomialIdeal> = HashMap::new();
    let mut tuple = Vec::new();
    collect_cycle_tuples(&by_set, 0, VertexSet::EMPTY, 0, s, &mut tuple, &mut |tuple, weight| {
        let b = s - weight;
        let cycle_part =
            tuple.iter().fold(ExponentVec::zeros(n), |acc, &k| acc.add(&ExponentVec::indicator(n, by_set[k].0)));
        let edge_gens: Vec<ExponentVec> = if b == 0 {
            vec![ExponentVec::zeros(n)]
        } else {
            power_cache.entry(b).or_insert_with(|| ideal.power(b as u32).expect("b >= 1")).gens().to_vec()
        };
        for m in edge_gens {
            let f = cycle_part.add(&m);
            if !witnesses.contains_key(&f) {
                let cycles = tuple.iter().map(|&k| by_set[k].1.clone()).collect();
                witnesses.insert(f.clone(), (cycles, m));
                candidates.push(f);
            }
        }
    });

    let closure = base.with_generators(&candidates)?;
    let mut extra = Vec::new();
    for f in closure.gens() {
        if base.contains(f)? {
            continue;
        }
        let (cycles, m) = &witnesses[f];
        let edges = edge_decomposition(g, m).expect("generators of I^b are products of b edges");
        extra.push(ExtraGenerator { exponent: f.clone(), cycles: cycles.clone(), edges });
    }
    Ok(ClosureGenerators { power: s as u32, base, closure, extra })
}

/// Calls `emit(tuple, weight)` for every nonempty, even-sized set of pairwise
/// disjoint cycles (indices increasing) whose weight `sum |C| / 2` is at
/// most `s`.
fn collect_cycle_tuples(
    cycles: &[(VertexSet, Vec<usize>)],
    from: usize,
    used: VertexSet,
    size: usize,
    s: usize,
    tuple: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize], usize),
) {
    if !tuple.is_empty() && tuple.len().is_multiple_of(2) {
        emit(tuple, size / 2);
    }
    for k in from..cycles.len() {
        let (set, _) = &cycles[k];
        // even tuples only get emitted; leave room for one more odd cycle when the count is odd
        let needed = if tuple.len().is_multiple_of(2) { set.len() + 3 } else { set.len() };
        if size + needed > 2 * s {
            break;
        }
        if !set.is_disjoint(used) {
            continue;
        }
        tuple.push(k);
        collect_cycle_tuples(cycles, k + 1, used.union(*set), size + set.len(), s, tuple, emit);
        tuple.pop();
    }
}

/// Writes `x^m` as a product of edges of `g`, if possible.
fn edge_decomposition(g: &Graph, m: &ExponentVec) -> Option<Vec<(usize, usize)>> {
    let mut rest = m.as_slice().to_vec();
    let mut out = Vec::new();
    if peel_edges(g, &mut rest, &mut out) {
        out.sort_unstable();
        Some(out)
    } else {
        None
    }
}

fn peel_edges(g: &Graph, rest: &mut [u32], out: &mut Vec<(usize, usize)>) -> bool {
    let Some(u) = rest.iter().position(|&e| e > 0) else {
        return true;
    };
    for w in g.neighbors(u).iter() {
        if rest[w] == 0 {
            continue;
        }
        rest[u] -= 1;
        rest[w] -= 1;
        out.push((u.min(w), u.max(w)));
        if peel_edges(g, rest, out) {
            return true;
        }
        out.pop();
        rest[u] += 1;
        rest[w] += 1;
    }
    false
}

/// `x^a ∈ closure(I)`, i.e. `a` lies in the Newton polyhedron of `I`.
pub fn newton_membership(ideal: &MonomialIdeal, a: &ExponentVec) -> Result<bool> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.contains(a)? {
        return Ok(true);
    }
    // every point of the polyhedron has coordinate sum >= the least generator degree
    let min_deg = ideal.gens().iter().map(ExponentVec::degree).min().unwrap_or(0);
    if a.degree() < min_deg {
        return Ok(false);
    }
    lp_feasible_convex_cover(ideal.gens(), a)
}

/// `closure(I(G)^s)` recomputed from Newton-polyhedron membership: every
/// exponent of degree `2s` with entries at most `s`, kept when it lies in
/// the polyhedron of `I^s`, then minimalized.
///
/// Membership outside `I^s` is decided in `NP(I^s) = s * NP(I)`, i.e. against
/// the edge vectors scaled by `s`, which keeps the LP to one column per edge.
pub fn newton_closure_edge_power(g: &Graph, s: u32) -> Result<MonomialIdeal> {
    if s == 0 {
        return Err(Error::ZeroPower);
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n();
    let ideal = MonomialIdeal::edge_ideal(g);
    let base = ideal.power(s)?;
    let scaled: Vec<ExponentVec> =
        ideal.gens().iter().map(|e| ExponentVec::new(e.as_slice().iter().map(|&x| x * s).collect())).collect();
    let mut kept = Vec::new();
    let mut a = vec![0u32; n];
    let mut err = None;
    compositions(&mut a, 0, 2 * s, s, &mut |a| {
        if err.is_some() {
            return;
        }
        let v = ExponentVec::new(a.to_vec());
        let inside = if base.contains_unchecked(&v) { Ok(true) } else { lp_feasible_convex_cover(&scaled, &v) };
        match inside {
            Ok(true) => kept.push(v),
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    MonomialIdeal::minimalize(n, kept)
}

/// All `a` with `sum a = total` and `a_j <= cap`, in lexicographic order.
fn compositions(a: &mut [u32], pos: usize, total: u32, cap: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos == a.len() {
        if total == 0 {
            emit(a);
        }
        return;
    }
    let remaining_slots = (a.len() - pos - 1) as u32;
    let lo = total.saturating_sub(remaining_slots * cap);
    for v in lo..=total.min(cap) {
        a[pos] = v;
        compositions(a, pos + 1, total - v, cap, emit);
    }
    a[pos] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityVerdict {
    pub normal: bool,
    /// Two chordless odd cycles inducing their disjoint union, when not normal.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// `I(G)` is normal iff no induced subgraph of `G` is a disjoint union of two
/// odd cycles. The witness is the lexicographically first such pair.
pub fn is_normal_edge(g: &Graph) -> NormalityVerdict {
    let cycles = g.enumerate_odd_cycles(true);
    let sets: Vec<VertexSet> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
    for i in 0..cycles.len() {
        let closed = g.closed_neighborhood(sets[i]).expect("cycle vertices are in range");
        for j in i + 1..cycles.len() {
            if closed.is_disjoint(sets[j]) {
                return NormalityVerdict { normal: false, witness: Some((cycles[i].clone(), cycles[j].clone())) };
            }
        }
    }
    NormalityVerdict { normal: true, witness: None }
}

/// `I(G)^(s) = ∩_C (x_i : i ∈ C)^s` over the minimal vertex covers `C`.
pub fn symbolic_power(g: &Graph, s: u32) -> Result<MonomialIdeal> {
    if s == 0 {
        return Err(Error::ZeroPower);
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n();
    let mut acc: Option<MonomialIdeal> = None;
    for cover in g.minimal_vertex_covers() {
        let prime_power = MonomialIdeal::variables(n, cover).power(s)?;
        acc = Some(match acc {
            None => prime_power,
            Some(a) => a.intersection(&prime_power)?,
        });
    }
    Ok(acc.expect("a graph with an edge has a vertex cover"))
}

/// `base + (extra[k] : k ∈ T)` for subsets `T` of the extra generators.
///
/// Every subset (in binary-counter order) when `2^t <= cap`; otherwise the
/// empty and full subsets followed by distinct uniformly random subsets
/// drawn from a ChaCha stream seeded with `seed`, up to `cap` ideals.
pub fn intermediate_ideals(
    base: &MonomialIdeal,
    extra: &[ExponentVec],
    cap: usize,
    seed: u64,
) -> Result<Vec<MonomialIdeal>> {
    let t = extra.len();
    let pick = |subset: &[bool]| -> Result<MonomialIdeal> {
        let chosen: Vec<ExponentVec> = extra.iter().zip(subset).filter(|(_, &on)| on).map(|(g, _)| g.clone()).collect();
        base.with_generators(&chosen)
    };
    if t < 63 && (1usize << t) <= cap {
        return (0..1u64 << t).map(|mask| pick(&(0..t).map(|k| mask >> k & 1 == 1).collect::<Vec<_>>())).collect();
    }
    let mut subsets: Vec<Vec<bool>> = vec![vec![false; t], vec![true; t]];
    let mut seen: HashSet<Vec<bool>> = subsets.iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // bounded number of draws; collisions are rare once t is large
    let mut draws = 0usize;
    while subsets.len() < cap && draws < cap.saturating_mul(64) {
        draws += 1;
        let s: Vec<bool> = (0..t).map(|_| rng.gen_bool(0.5)).collect();
        if seen.insert(s.clone()) {
            subsets.push(s);
        }
    }
    subsets.iter().map(|s| pick(s)).collect()
}

/// The ideals `I^s + (subset of the extra generators of closure(I^s))`.
pub fn enumerate_intermediate_ideals(g: &Graph, s: u32, cap: usize, seed: u64) -> Result<Vec<MonomialIdeal>> {
    let cl = integral_closure_edge_power(g, s)?;
    let extra: Vec<ExponentVec> = cl.extra.iter().map(|x| x.exponent.clone()).collect();
    intermediate_ideals(&cl.base, &extra, cap, seed)
}
