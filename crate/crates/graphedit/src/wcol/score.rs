//! Weak reachability under a fixed ordering.
//!
//! `v` is weakly c-reachable from `u` when `L(v) ≤ L(u)` and some u–v path
//! of at most `c` edges uses only vertices `w` with `L(w) ≥ L(v)`; `v` is
//! the earliest vertex on that path. Every vertex reaches itself.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexOrdering};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WcolScore {
    pub ordering: VertexOrdering,
    pub c: usize,
    /// WReach_c[u] for every vertex u.
    pub reach: BTreeMap<usize, BTreeSet<usize>>,
    pub score: usize,
}

impl WcolScore {
    pub fn sizes(&self) -> BTreeMap<usize, usize> {
        self.reach.iter().map(|(&u, s)| (u, s.len())).collect()
    }
}

/// Vertices within `c` steps of `v` using only vertices allowed by `inside`.
pub(crate) fn ball(g: &Graph, v: usize, c: usize, inside: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut dist = BTreeMap::from([(v, 0usize)]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == c {
            continue;
        }
        for &y in g.neighbors(x) {
            if inside(y) && !dist.contains_key(&y) {
                dist.insert(y, d + 1);
                queue.push_back(y);
            }
        }
    }
    dist.into_keys().collect()
}

/// WReach_c sets and their maximum size under `l`.
pub fn wcol_score(g: &Graph, l: &VertexOrdering, c: usize) -> WcolScore {
    assert!(l.is_ordering_of(g), "ordering must list every vertex once");
    let mut reach: BTreeMap<usize, BTreeSet<usize>> =
        g.vertices().map(|u| (u, BTreeSet::new())).collect();
    for &v in l.as_slice() {
        let pv = l.position(v).unwrap();
        for u in ball(g, v, c, |w| l.position(w).unwrap() >= pv) {
            reach.get_mut(&u).unwrap().insert(v);
        }
    }
    let score = reach.values().map(|s| s.len()).max().unwrap_or(0);
    WcolScore {
        ordering: l.clone(),
        c,
        reach,
        score,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let p3 = Graph::path(3);
        let s = wcol_score(&p3, &VertexOrdering::new(vec![0, 1, 2]), 2);
        assert_eq!(s.score, 3);
        assert_eq!(s.reach[&2], [0, 1, 2].into());
        let e = Graph::new(4);
        assert_eq!(
            wcol_score(&e, &VertexOrdering::new(vec![3, 1, 0, 2]), 3).score,
            1
        );
        let k3 = Graph::complete(3);
        let s = wcol_score(&k3, &VertexOrdering::new(vec![1, 2, 0]), 1);
        assert_eq!(s.sizes()[&0], 3);
    }
}
