//! Maximum matching (Edmonds' blossom algorithm) and exact bounded-degree
//! edge deletion through maximum b-matching.

use std::collections::VecDeque;

use crate::graph::{edge, Edge, EditSet, Graph};

/// Maximum-cardinality matching in a general graph given by adjacency lists.
/// Returns `mate[v]`.
pub fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    // Greedy start.
    for v in 0..n {
        if mate[v].is_none() {
            if let Some(&w) = adj[v].iter().find(|&&w| mate[w].is_none() && w != v) {
                mate[v] = Some(w);
                mate[w] = Some(v);
            }
        }
    }
    let mut b = Blossom {
        adj,
        mate,
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
    };
    for root in 0..n {
        if b.mate[root].is_some() {
            continue;
        }
        if let Some(mut v) = b.find_augmenting_path(root) {
            loop {
                let pv = b.parent[v].expect("augmenting path is linked");
                let next = b.mate[pv];
                b.mate[v] = Some(pv);
                b.mate[pv] = Some(v);
                match next {
                    Some(x) => v = x,
                    None => break,
                }
            }
        }
    }
    b.mate
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("alternating tree"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("alternating tree")].expect("alternating tree");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("matched inside blossom");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("alternating tree");
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                if to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some()) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.used[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Maximum b-matching in a simple graph (each edge used at most once,
/// vertex `v` covered at most `b[v]` times), by the vertex-splitting
/// reduction: `b(v)` copies per vertex and a two-vertex gadget `e_u – e_v`
/// per edge. A maximum matching there has size `m + |F|`.
pub fn maximum_b_matching(g: &Graph, b: &[usize]) -> Vec<Edge> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut copy_start = vec![0usize; g.id_bound()];
    let mut next = 0;
    for v in 0..g.id_bound() {
        copy_start[v] = next;
        if g.is_live(v) {
            next += b[v];
        }
    }
    let gadget_start = next;
    let total = gadget_start + 2 * edges.len();
    let mut adj = vec![Vec::new(); total];
    let link = |a: usize, c: usize, adj: &mut Vec<Vec<usize>>| {
        adj[a].push(c);
        adj[c].push(a);
    };
    for (i, &(u, v)) in edges.iter().enumerate() {
        let (eu, ev) = (gadget_start + 2 * i, gadget_start + 2 * i + 1);
        link(eu, ev, &mut adj);
        for c in 0..b[u] {
            link(copy_start[u] + c, eu, &mut adj);
        }
        for c in 0..b[v] {
            link(copy_start[v] + c, ev, &mut adj);
        }
    }
    let mate = maximum_matching(&adj);
    edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            let (eu, ev) = (gadget_start + 2 * i, gadget_start + 2 * i + 1);
            mate[eu].is_some_and(|m| m < gadget_start) && mate[ev].is_some_and(|m| m < gadget_start)
        })
        .map(|(_, &e)| e)
        .collect()
}

/// Per-vertex demand `f(v) = max(0, deg(v) − d)`.
pub fn degree_demand(g: &Graph, d: usize) -> Vec<usize> {
    (0..g.id_bound())
        .map(|v| g.degree(v).saturating_sub(d))
        .collect()
}

/// Minimum edge deletion reaching maximum degree ≤ d.
///
/// The deleted set is a minimum f-edge cover for `f(v) = deg(v) − d`,
/// computed as the complement of a maximum b-matching with
/// `b(v) = min(d, deg(v))`.
pub fn bounded_degree_edge_edit(g: &Graph, d: usize) -> EditSet {
    let b: Vec<usize> = (0..g.id_bound()).map(|v| d.min(g.degree(v))).collect();
    let kept: std::collections::BTreeSet<Edge> = maximum_b_matching(g, &b).into_iter().collect();
    EditSet::from_edges(g, g.edges().filter(|e| !kept.contains(e)))
}

/// The same optimum by enumerating kept edge subsets; m ≤ 20.
pub fn bounded_degree_edge_edit_brute(g: &Graph, d: usize) -> Option<EditSet> {
    let edges: Vec<Edge> = g.edges().collect();
    let m = edges.len();
    if m > 20 {
        return None;
    }
    let mut best: Option<u32> = None;
    for mask in 0u32..(1u32 << m) {
        if best.is_some_and(|b| mask.count_ones() <= b.count_ones()) {
            continue;
        }
        let mut deg = vec![0usize; g.id_bound()];
        let ok = (0..m).filter(|&i| mask >> i & 1 == 1).all(|i| {
            let (u, v) = edges[i];
            deg[u] += 1;
            deg[v] += 1;
            deg[u] <= d && deg[v] <= d
        });
        if ok {
            best = Some(mask);
        }
    }
    let keep = best.unwrap_or(0);
    Some(EditSet::from_edges(
        g,
        (0..m)
            .filter(|&i| keep >> i & 1 == 0)
            .map(|i| edge(edges[i].0, edges[i].1)),
    ))
}
