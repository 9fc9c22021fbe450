//! Tree and path decompositions, their validator, and elimination orderings.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A rooted tree decomposition.
///
/// JSON shape: `{"bags": [[ids...], ...], "edges": [[i, j], ...], "root": i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub root: usize,
}

impl TreeDecomposition {
    /// One bag holding every live vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![g.vertices().collect()],
            edges: vec![],
            root: 0,
        }
    }

    /// `max |bag| − 1`, clamped at 0.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Parent of every node when rooted at `root` (`None` for the root).
    /// Fails if the edge set is not a tree on the bags.
    pub fn parents(&self) -> Result<Vec<Option<usize>>> {
        let k = self.bags.len();
        if k == 0 || self.root >= k {
            return Err(Error::Input("decomposition has no root bag".into()));
        }
        if self.edges.len() + 1 != k {
            return Err(Error::Input(format!(
                "{} bags but {} tree edges",
                k,
                self.edges.len()
            )));
        }
        let adj = self.adjacency();
        let mut parent = vec![None; k];
        let mut seen = vec![false; k];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = Some(a);
                    queue.push_back(b);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Input("decomposition tree is disconnected".into()));
        }
        Ok(parent)
    }

    pub fn children(&self) -> Result<Vec<Vec<usize>>> {
        let parent = self.parents()?;
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(i);
            }
        }
        for c in ch.iter_mut() {
            c.sort_unstable();
        }
        Ok(ch)
    }

    /// Number of bags on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        let Ok(parent) = self.parents() else { return 0 };
        let mut depth = vec![0usize; self.bags.len()];
        let mut best = 0;
        for order in self.preorder().unwrap_or_default() {
            depth[order] = parent[order].map_or(1, |p| depth[p] + 1);
            best = best.max(depth[order]);
        }
        best
    }

    /// Nodes in depth-first preorder from the root, children by index.
    pub fn preorder(&self) -> Result<Vec<usize>> {
        let ch = self.children()?;
        let mut out = Vec::with_capacity(self.bags.len());
        let mut stack = vec![self.root];
        while let Some(a) = stack.pop() {
            out.push(a);
            for &c in ch[a].iter().rev() {
                stack.push(c);
            }
        }
        Ok(out)
    }

    /// Check the three decomposition properties against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let parent = self.parents()?;
        validate_bags(g, &self.bags, |i| parent[i])
    }
}

fn validate_bags(
    g: &Graph,
    bags: &[BTreeSet<usize>],
    parent: impl Fn(usize) -> Option<usize>,
) -> Result<()> {
    let mut holders: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, b) in bags.iter().enumerate() {
        for &v in b {
            if !g.is_live(v) {
                return Err(Error::Input(format!(
                    "bag {i} holds {v}, which is not a vertex"
                )));
            }
            holders.entry(v).or_default().push(i);
        }
    }
    for v in g.vertices() {
        if !holders.contains_key(&v) {
            return Err(Error::Input(format!("vertex {v} is in no bag")));
        }
    }
    for (u, v) in g.edges() {
        if !bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(Error::Input(format!("edge ({u},{v}) is in no bag")));
        }
    }
    // The bags holding v form a subtree iff exactly one of them has a parent
    // outside the set.
    for (v, hs) in holders {
        let tops = hs
            .iter()
            .filter(|&&i| parent(i).is_none_or(|p| !bags[p].contains(&v)))
            .count();
        if tops != 1 {
            return Err(Error::Input(format!("bags holding {v} are not connected")));
        }
    }
    Ok(())
}

/// A path decomposition: a tree decomposition whose tree is a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
}

impl PathDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.bags.is_empty() {
            return Err(Error::Input("path decomposition has no bags".into()));
        }
        validate_bags(g, &self.bags, |i| i.checked_sub(1))
    }

    pub fn to_tree(&self) -> TreeDecomposition {
        TreeDecomposition {
            bags: self.bags.clone(),
            edges: (1..self.bags.len()).map(|i| (i - 1, i)).collect(),
            root: 0,
        }
    }
}

/// Width of eliminating the live vertices of `g` in `order`.
pub fn elimination_width(g: &Graph, order: &[usize]) -> usize {
    decomposition_from_elimination(g, order).width()
}

/// Build a decomposition from an elimination ordering: each vertex's bag is
/// itself plus its later neighbours in the filled graph.
pub fn decomposition_from_elimination(g: &Graph, order: &[usize]) -> TreeDecomposition {
    if order.is_empty() {
        return TreeDecomposition {
            bags: vec![BTreeSet::new()],
            edges: vec![],
            root: 0,
        };
    }
    let mut pos = vec![usize::MAX; g.id_bound()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nb: Vec<BTreeSet<usize>> = (0..g.id_bound()).map(|v| g.neighbors(v).clone()).collect();
    let mut bags = Vec::with_capacity(order.len());
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(order.len());
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = nb[v].iter().copied().filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                nb[x].insert(y);
                nb[y].insert(x);
            }
        }
        let mut bag: BTreeSet<usize> = later.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        parent.push(later.iter().map(|&w| pos[w]).min());
    }
    // Bags are indexed by elimination position; roots are joined to the last one.
    let last = order.len() - 1;
    let edges = parent
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != last)
        .map(|(i, p)| (i, p.unwrap_or(last)))
        .collect();
    TreeDecomposition {
        bags,
        edges,
        root: last,
    }
}

/// Greedy min-degree elimination ordering (ties by id); an upper-bound heuristic.
pub fn min_degree_ordering(g: &Graph) -> Vec<usize> {
    let mut nb: Vec<BTreeSet<usize>> = (0..g.id_bound()).map(|v| g.neighbors(v).clone()).collect();
    let mut alive: BTreeSet<usize> = g.vertices().collect();
    let mut order = Vec::with_capacity(alive.len());
    while let Some(&v) = alive.iter().min_by_key(|&&v| (nb[v].len(), v)) {
        let later: Vec<usize> = nb[v].iter().copied().collect();
        for (a, &x) in later.iter().enumerate() {
            nb[x].remove(&v);
            for &y in &later[a + 1..] {
                nb[x].insert(y);
                nb[y].insert(x);
            }
        }
        alive.remove(&v);
        order.push(v);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elimination_decompositions_are_valid() {
        for g in [
            Graph::path(4),
            Graph::complete(4),
            Graph::cycle(5),
            Graph::grid(3, 3),
            Graph::new(3),
        ] {
            let order = min_degree_ordering(&g);
            let td = decomposition_from_elimination(&g, &order);
            td.validate(&g).unwrap();
        }
        assert_eq!(elimination_width(&Graph::complete(4), &[0, 1, 2, 3]), 3);
        assert_eq!(elimination_width(&Graph::path(4), &[0, 1, 2, 3]), 1);
    }

    #[test]
    fn validator_rejects_broken_decompositions() {
        let g = Graph::path(3);
        let missing_edge = TreeDecomposition {
            bags: vec![[0].into(), [1, 2].into()],
            edges: vec![(0, 1)],
            root: 0,
        };
        assert!(missing_edge.validate(&g).is_err());
        let disconnected = TreeDecomposition {
            bags: vec![[0, 1].into(), [2].into(), [1, 2].into()],
            edges: vec![(0, 1), (1, 2)],
            root: 0,
        };
        assert!(disconnected.validate(&g).is_err());
        let ok = TreeDecomposition {
            bags: vec![[0, 1].into(), [1, 2].into()],
            edges: vec![(0, 1)],
            root: 1,
        };
        ok.validate(&g).unwrap();
        assert_eq!((ok.width(), ok.height()), (1, 2));
    }
}
