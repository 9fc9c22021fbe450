//! Undirected simple weighted graphs with stable vertex ids, degeneracy
//! peeling, k-cores, orientations and edit application.
//!
//! Vertex ids are dense integers `0..id_bound()`. Deleting a vertex clears
//! its live flag instead of renumbering, so edit sets computed on a subgraph
//! always refer to ids of the original graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact non-negative weight.
pub type Weight = Rational64;

/// An undirected edge, always stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Normalise an unordered pair.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    live: Vec<bool>,
    vweight: Vec<Weight>,
    eweight: BTreeMap<Edge, Weight>,
}

impl Graph {
    /// Edgeless graph on `n` live vertices of unit weight.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            live: vec![true; n],
            vweight: vec![Weight::one(); n],
            eweight: BTreeMap::new(),
        }
    }

    /// Build from an edge list; panics on loops, parallel edges or bad ids.
    /// Use [`Graph::add_edge`] for fallible construction.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v).expect("invalid edge in from_edges");
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges)
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = Graph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1).unwrap();
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols).unwrap();
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.id_bound()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.id_bound();
        let mut g = Graph::new(off + other.id_bound());
        for v in 0..off {
            g.live[v] = self.live[v];
            g.vweight[v] = self.vweight[v];
        }
        for v in 0..other.id_bound() {
            g.live[off + v] = other.live[v];
            g.vweight[off + v] = other.vweight[v];
        }
        for (e, w) in &self.eweight {
            g.add_weighted_edge(e.0, e.1, *w).unwrap();
        }
        for (e, w) in &other.eweight {
            g.add_weighted_edge(e.0 + off, e.1 + off, *w).unwrap();
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_weighted_edge(u, v, Weight::one())
    }

    pub fn add_weighted_edge(&mut self, u: usize, v: usize, w: Weight) -> Result<()> {
        let n = self.id_bound();
        if u >= n || v >= n {
            return Err(Error::Input(format!(
                "edge ({u},{v}) references a vertex outside 0..{n}"
            )));
        }
        if !self.live[u] || !self.live[v] {
            return Err(Error::Input(format!(
                "edge ({u},{v}) touches a deleted vertex"
            )));
        }
        if u == v {
            return Err(Error::Input(format!("self-loop at {u}")));
        }
        if w < Weight::zero() {
            return Err(Error::Input(format!("negative weight on edge ({u},{v})")));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::Input(format!("parallel edge ({u},{v})")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.eweight.insert(edge(u, v), w);
        Ok(())
    }

    pub fn set_vertex_weight(&mut self, v: usize, w: Weight) -> Result<()> {
        if v >= self.id_bound() {
            return Err(Error::Input(format!("vertex {v} out of range")));
        }
        if w < Weight::zero() {
            return Err(Error::Input(format!("negative weight on vertex {v}")));
        }
        self.vweight[v] = w;
        Ok(())
    }

    /// One past the largest vertex id (live or deleted).
    #[inline]
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    /// Number of live vertices.
    pub fn order(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.eweight.len()
    }

    #[inline]
    pub fn is_live(&self, v: usize) -> bool {
        v < self.live.len() && self.live[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.id_bound()).filter(move |&v| self.live[v])
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.eweight.keys().copied()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.id_bound() && self.adj[u].contains(&v)
    }

    #[inline]
    pub fn vertex_weight(&self, v: usize) -> Weight {
        self.vweight[v]
    }

    pub fn edge_weight(&self, e: Edge) -> Option<Weight> {
        self.eweight.get(&edge(e.0, e.1)).copied()
    }

    /// True when every live vertex and every edge has weight one.
    pub fn is_unit_weighted(&self) -> bool {
        self.vertices().all(|v| self.vweight[v].is_one())
            && self.eweight.values().all(|w| w.is_one())
    }

    /// Delete a live vertex and its incident edges. Returns false if it was not live.
    pub fn remove_vertex(&mut self, v: usize) -> bool {
        if !self.is_live(v) {
            return false;
        }
        let nbrs: Vec<usize> = self.adj[v].iter().copied().collect();
        for u in nbrs {
            self.adj[u].remove(&v);
            self.eweight.remove(&edge(u, v));
        }
        self.adj[v].clear();
        self.live[v] = false;
        true
    }

    /// Delete an edge. Returns false if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        self.eweight.remove(&edge(u, v));
        true
    }

    /// Subgraph induced by `keep` (ids outside `keep` become deleted).
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Graph {
        let mut g = self.clone();
        for v in self.vertices() {
            if !keep.contains(&v) {
                g.remove_vertex(v);
            }
        }
        g
    }

    /// Connected components of the live vertices, each sorted, ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.id_bound()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS distances from `s` (None = unreachable or not live).
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.id_bound()];
        if !self.is_live(s) {
            return dist;
        }
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Adjacency bitmasks indexed by vertex id; requires `id_bound() <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(
            self.id_bound() <= 64,
            "bitmask view needs at most 64 vertex ids"
        );
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |m, &w| m | (1u64 << w)))
            .collect()
    }

    /// Bitmask of live vertices; requires `id_bound() <= 64`.
    pub fn live_mask(&self) -> u64 {
        assert!(
            self.id_bound() <= 64,
            "bitmask view needs at most 64 vertex ids"
        );
        self.vertices().fold(0u64, |m, v| m | (1u64 << v))
    }

    /// Compact copy containing only live vertices, plus the map new id -> old id.
    pub fn compacted(&self) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = self.vertices().collect();
        let mut new_id = vec![usize::MAX; self.id_bound()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::new(old.len());
        for (i, &v) in old.iter().enumerate() {
            g.vweight[i] = self.vweight[v];
        }
        for (e, w) in &self.eweight {
            g.add_weighted_edge(new_id[e.0], new_id[e.1], *w).unwrap();
        }
        (g, old)
    }
}

/// A bijection between the live vertices of a graph and ranks `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OrderingRepr")]
pub struct VertexOrdering {
    order: Vec<usize>,
    #[serde(skip)]
    pos: Vec<usize>,
}

#[derive(Deserialize)]
struct OrderingRepr {
    order: Vec<usize>,
}

impl TryFrom<OrderingRepr> for VertexOrdering {
    type Error = String;

    fn try_from(r: OrderingRepr) -> std::result::Result<Self, String> {
        let mut seen = BTreeSet::new();
        match r.order.iter().find(|&&v| !seen.insert(v)) {
            Some(v) => Err(format!("vertex {v} repeated in ordering")),
            None => Ok(VertexOrdering::new(r.order)),
        }
    }
}

impl VertexOrdering {
    pub fn new(order: Vec<usize>) -> Self {
        let bound = order.iter().copied().max().map_or(0, |m| m + 1);
        let mut pos = vec![usize::MAX; bound];
        for (i, &v) in order.iter().enumerate() {
            assert!(pos[v] == usize::MAX, "vertex {v} repeated in ordering");
            pos[v] = i;
        }
        VertexOrdering { order, pos }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn position(&self, v: usize) -> Option<usize> {
        self.pos.get(v).copied().filter(|&p| p != usize::MAX)
    }

    /// True iff this orders exactly the live vertices of `g`.
    pub fn is_ordering_of(&self, g: &Graph) -> bool {
        self.order.len() == g.order() && self.order.iter().all(|&v| g.is_live(v))
    }

    /// Number of neighbours of `v` placed after `v`.
    pub fn forward_degree(&self, g: &Graph, v: usize) -> usize {
        let p = self.position(v).expect("vertex not in ordering");
        g.neighbors(v)
            .iter()
            .filter(|&&w| self.position(w).is_some_and(|q| q > p))
            .count()
    }

    pub fn max_forward_degree(&self, g: &Graph) -> usize {
        self.order
            .iter()
            .map(|&v| self.forward_degree(g, v))
            .max()
            .unwrap_or(0)
    }

    pub fn reversed(&self) -> VertexOrdering {
        VertexOrdering::new(self.order.iter().rev().copied().collect())
    }
}

/// Degeneracy via Matula–Beck peeling, ties broken by smallest vertex id.
///
/// Returns the degeneracy and the removal order, which is a witness: every
/// vertex has at most `r` neighbours later in the order.
pub fn degeneracy(g: &Graph) -> (usize, VertexOrdering) {
    degeneracy_with_tiebreak(g, None)
}

/// Peeling where equal-degree ties are broken by rank in `prior` (vertices
/// missing from `prior` come after all ranked ones, then by id).
pub fn degeneracy_with_tiebreak(
    g: &Graph,
    prior: Option<&VertexOrdering>,
) -> (usize, VertexOrdering) {
    let key = |v: usize| -> (usize, usize) {
        match prior.and_then(|p| p.position(v)) {
            Some(p) => (0, p),
            None => (1, v),
        }
    };
    let mut deg: Vec<usize> = (0..g.id_bound()).map(|v| g.degree(v)).collect();
    let mut heap: BTreeSet<(usize, (usize, usize), usize)> =
        g.vertices().map(|v| (deg[v], key(v), v)).collect();
    let mut removed = vec![false; g.id_bound()];
    let mut order = Vec::with_capacity(heap.len());
    let mut r = 0;
    while let Some((d, _, v)) = heap.pop_first() {
        r = r.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                heap.remove(&(deg[w], key(w), w));
                deg[w] -= 1;
                heap.insert((deg[w], key(w), w));
            }
        }
    }
    (r, VertexOrdering::new(order))
}

/// The k-core: the maximal induced subgraph with minimum degree at least `k`.
pub fn k_core(g: &Graph, k: usize) -> Graph {
    let mut h = g.clone();
    let mut queue: VecDeque<usize> = h.vertices().filter(|&v| h.degree(v) < k).collect();
    while let Some(v) = queue.pop_front() {
        if !h.is_live(v) {
            continue;
        }
        let nbrs: Vec<usize> = h.neighbors(v).iter().copied().collect();
        h.remove_vertex(v);
        for w in nbrs {
            if h.degree(w) + 1 == k {
                queue.push_back(w);
            }
        }
    }
    h
}

/// A direction for every edge of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    /// Arcs `(tail, head)`.
    pub arcs: BTreeSet<(usize, usize)>,
}

impl Orientation {
    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.range((v, 0)..(v + 1, 0)).count()
    }

    pub fn max_out_degree(&self) -> usize {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &(t, _) in &self.arcs {
            *counts.entry(t).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0)
    }

    /// Check that every edge of `g` is directed exactly once and no arc is foreign.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for &(t, h) in &self.arcs {
            if !g.has_edge(t, h) {
                return Err(Error::Input(format!("arc {t}->{h} is not an edge")));
            }
            if self.arcs.contains(&(h, t)) {
                return Err(Error::Input(format!("edge {{{t},{h}}} oriented both ways")));
            }
        }
        for (u, v) in g.edges() {
            if !self.arcs.contains(&(u, v)) && !self.arcs.contains(&(v, u)) {
                return Err(Error::Input(format!("edge {{{u},{v}}} not oriented")));
            }
        }
        Ok(())
    }
}

/// Orient every edge from the lower-ranked endpoint to the higher-ranked one.
pub fn orient_by_ordering(g: &Graph, l: &VertexOrdering) -> Orientation {
    let arcs = g
        .edges()
        .map(|(u, v)| {
            let (pu, pv) = (
                l.position(u).expect("ordering misses a vertex"),
                l.position(v).expect("ordering misses a vertex"),
            );
            if pu < pv {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    Orientation { arcs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditKind {
    Vertex,
    Edge,
}

impl std::str::FromStr for EditKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(EditKind::Vertex),
            "edge" => Ok(EditKind::Edge),
            other => Err(Error::Param(format!(
                "unknown edit kind '{other}' (expected vertex|edge)"
            ))),
        }
    }
}

/// A typed deletion set. Exactly one of `vertices`/`edges` is used, per `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditSet {
    pub kind: EditKind,
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<Edge>,
    #[serde(with = "crate::io::ratio_serde")]
    pub total_weight: Weight,
}

impl EditSet {
    pub fn empty(kind: EditKind) -> Self {
        EditSet {
            kind,
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
            total_weight: Weight::zero(),
        }
    }

    /// Vertex deletion set; weights are read from `g` (ids must exist in `g`).
    pub fn from_vertices(g: &Graph, vs: impl IntoIterator<Item = usize>) -> Self {
        let vertices: BTreeSet<usize> = vs.into_iter().collect();
        let total_weight = vertices
            .iter()
            .filter(|&&v| v < g.id_bound())
            .map(|&v| g.vertex_weight(v))
            .sum();
        EditSet {
            kind: EditKind::Vertex,
            vertices,
            edges: BTreeSet::new(),
            total_weight,
        }
    }

    /// Edge deletion set; weights are read from `g`.
    pub fn from_edges(g: &Graph, es: impl IntoIterator<Item = Edge>) -> Self {
        let edges: BTreeSet<Edge> = es.into_iter().map(|(u, v)| edge(u, v)).collect();
        let total_weight = edges.iter().filter_map(|&e| g.edge_weight(e)).sum();
        EditSet {
            kind: EditKind::Edge,
            vertices: BTreeSet::new(),
            edges,
            total_weight,
        }
    }

    pub fn len(&self) -> usize {
        match self.kind {
            EditKind::Vertex => self.vertices.len(),
            EditKind::Edge => self.edges.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Union with another set of the same kind, re-weighting against `g`.
    pub fn union(&self, other: &EditSet, g: &Graph) -> EditSet {
        assert_eq!(
            self.kind, other.kind,
            "cannot union edit sets of different kinds"
        );
        match self.kind {
            EditKind::Vertex => {
                EditSet::from_vertices(g, self.vertices.union(&other.vertices).copied())
            }
            EditKind::Edge => EditSet::from_edges(g, self.edges.union(&other.edges).copied()),
        }
    }
}

/// Apply a deletion set. Vertex kind yields the induced subgraph on `V \ X`;
/// edge kind removes the edges and keeps all vertices.
pub fn apply_edits(g: &Graph, x: &EditSet) -> Result<Graph> {
    let mut h = g.clone();
    match x.kind {
        EditKind::Vertex => {
            for &v in &x.vertices {
                if !h.remove_vertex(v) {
                    return Err(Error::InvalidEdit(format!(
                        "vertex {v} is not in the graph"
                    )));
                }
            }
        }
        EditKind::Edge => {
            for &(u, v) in &x.edges {
                if !h.remove_edge(u, v) {
                    return Err(Error::InvalidEdit(format!(
                        "edge ({u},{v}) is not in the graph"
                    )));
                }
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orderings_survive_json() {
        let l = VertexOrdering::new(vec![3, 0, 2]);
        let back: VertexOrdering =
            serde_json::from_str(&serde_json::to_string(&l).unwrap()).unwrap();
        assert_eq!(back.position(2), Some(2));
        assert_eq!(back, l);
        assert!(serde_json::from_str::<VertexOrdering>(r#"{"order":[1,1]}"#).is_err());
    }

    #[test]
    fn degeneracy_of_small_families() {
        assert_eq!(degeneracy(&Graph::complete(5)).0, 4);
        assert_eq!(degeneracy(&Graph::star(5)).0, 1);
        assert_eq!(degeneracy(&Graph::cycle(4)).0, 2);
        assert_eq!(degeneracy(&Graph::new(0)).0, 0);
    }

    #[test]
    fn peeling_order_witnesses_degeneracy() {
        let g = Graph::grid(3, 4);
        let (r, l) = degeneracy(&g);
        assert_eq!(l.max_forward_degree(&g), r);
        assert!(l.is_ordering_of(&g));
    }

    #[test]
    fn k_core_examples() {
        let mut g = Graph::complete(3);
        let mut g2 = Graph::new(4);
        for (u, v) in g.edges() {
            g2.add_edge(u, v).unwrap();
        }
        g2.add_edge(2, 3).unwrap();
        g = g2;
        let core = k_core(&g, 2);
        assert_eq!(core.vertices().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(k_core(&Graph::path(4), 2).order(), 0);
        assert_eq!(k_core(&Graph::complete(5), 4).order(), 5);
    }

    #[test]
    fn orientation_examples() {
        let g = Graph::path(3);
        let o = orient_by_ordering(&g, &VertexOrdering::new(vec![0, 1, 2]));
        assert_eq!(
            o.arcs.iter().copied().collect::<Vec<_>>(),
            vec![(0, 1), (1, 2)]
        );
        assert_eq!(o.max_out_degree(), 1);
        let k3 = Graph::complete(3);
        let o = orient_by_ordering(&k3, &VertexOrdering::new(vec![2, 0, 1]));
        let mut outs: Vec<_> = (0..3).map(|v| o.out_degree(v)).collect();
        outs.sort();
        assert_eq!(outs, vec![0, 1, 2]);
        assert!(
            orient_by_ordering(&Graph::new(4), &VertexOrdering::new(vec![0, 1, 2, 3]))
                .arcs
                .is_empty()
        );
    }

    #[test]
    fn apply_edits_examples() {
        let k4 = Graph::complete(4);
        let h = apply_edits(&k4, &EditSet::from_vertices(&k4, [2])).unwrap();
        assert_eq!((h.order(), h.size()), (3, 3));
        let c4 = Graph::cycle(4);
        let h = apply_edits(&c4, &EditSet::from_edges(&c4, [(0, 3)])).unwrap();
        assert_eq!(h, Graph::path(4));
        assert_eq!(
            apply_edits(&c4, &EditSet::empty(EditKind::Edge)).unwrap(),
            c4
        );
        let bad = EditSet::from_edges(&c4, [(0, 2)]);
        assert!(matches!(apply_edits(&c4, &bad), Err(Error::InvalidEdit(_))));
    }
}
