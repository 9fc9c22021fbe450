//! Star-forest (treedepth-2) editing by hitting every P4 and C3 occurrence.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::graph::{edge, Edge, EditSet, Graph};

/// A family of forbidden occurrences over a ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingInstance<T> {
    pub ground: Vec<T>,
    /// Each occurrence is sorted; the family is sorted lexicographically.
    pub family: Vec<Vec<T>>,
}

impl<T: Ord + Copy> HittingInstance<T> {
    /// The k-approximation: scan occurrences in order and take every element
    /// of any occurrence not yet hit. Returns the hitting set and the chosen
    /// (pairwise disjoint) occurrences.
    pub fn take_all_of_unhit(&self) -> (BTreeSet<T>, Vec<Vec<T>>) {
        let mut hit = BTreeSet::new();
        let mut chosen = Vec::new();
        for s in &self.family {
            if s.iter().all(|e| !hit.contains(e)) {
                hit.extend(s.iter().copied());
                chosen.push(s.clone());
            }
        }
        (hit, chosen)
    }

    pub fn is_hit_by(&self, x: &BTreeSet<T>) -> bool {
        self.family.iter().all(|s| s.iter().any(|e| x.contains(e)))
    }
}

/// True iff every component is a star (K1, K2 or K_{1,t}).
pub fn is_star_forest(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let k = comp.len();
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        k <= 2 || (edges == k - 1 && comp.iter().any(|&v| g.degree(v) == k - 1))
    })
}

fn has_p4_or_c3(g: &Graph, vs: &[usize]) -> bool {
    let k = vs.len();
    let mut deg = [0usize; 4];
    let mut m = 0;
    let mut reach = [0u8; 4];
    for i in 0..k {
        reach[i] = 1 << i;
        for j in 0..k {
            if i != j && g.has_edge(vs[i], vs[j]) {
                deg[i] += 1;
                reach[i] |= 1 << j;
                if i < j {
                    m += 1;
                }
            }
        }
    }
    if k == 3 {
        return m == 3;
    }
    // On four vertices a P4 subgraph exists iff the induced graph is
    // connected and is not the star K_{1,3}.
    let mut comp = reach[0];
    for _ in 0..3 {
        comp = (0..4)
            .filter(|&i| comp >> i & 1 == 1)
            .fold(comp, |c, i| c | reach[i]);
    }
    let star = m == 3 && deg.contains(&3);
    comp == 0b1111 && !star
}

/// Vertex occurrences: 3-sets spanning a triangle and 4-sets whose induced
/// subgraph contains a P4, sorted lexicographically.
pub fn vertex_occurrences(g: &Graph) -> HittingInstance<usize> {
    let ground: Vec<usize> = g.vertices().collect();
    let mut family = Vec::new();
    for s in ground.iter().copied().combinations(3) {
        if has_p4_or_c3(g, &s) {
            family.push(s);
        }
    }
    for s in ground.iter().copied().combinations(4) {
        if has_p4_or_c3(g, &s) {
            family.push(s);
        }
    }
    family.sort();
    HittingInstance { ground, family }
}

/// Edge occurrences: the edge sets of triangles and of P4 paths, each
/// distinct edge set listed once, sorted lexicographically.
pub fn edge_occurrences(g: &Graph) -> HittingInstance<Edge> {
    let ground: Vec<Edge> = g.edges().collect();
    let mut family: BTreeSet<Vec<Edge>> = BTreeSet::new();
    for (a, b) in g.edges() {
        for (x, y) in [(a, b), (b, a)] {
            // Path p – x – y – q with p, q distinct from everything.
            for &p in g.neighbors(x) {
                if p == y {
                    continue;
                }
                for &q in g.neighbors(y) {
                    if q == x || q == p {
                        continue;
                    }
                    let mut s = vec![edge(p, x), edge(x, y), edge(y, q)];
                    s.sort();
                    family.insert(s);
                }
            }
        }
        for &c in g.neighbors(a) {
            if c > b && g.has_edge(b, c) {
                family.insert(vec![edge(a, b), edge(a, c), edge(b, c)]);
            }
        }
    }
    HittingInstance {
        ground,
        family: family.into_iter().collect(),
    }
}

/// 4-approximate star-forest vertex deletion.
pub fn star_forest_vertex_edit(g: &Graph) -> EditSet {
    let (x, _) = vertex_occurrences(g).take_all_of_unhit();
    EditSet::from_vertices(g, x)
}

/// 3-approximate star-forest edge deletion.
pub fn star_forest_edge_edit(g: &Graph) -> EditSet {
    let (x, _) = edge_occurrences(g).take_all_of_unhit();
    EditSet::from_edges(g, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::apply_edits;

    #[test]
    fn recognises_star_forests() {
        assert!(is_star_forest(
            &Graph::star(4).disjoint_union(&Graph::path(2))
        ));
        assert!(!is_star_forest(&Graph::path(4)));
        assert!(!is_star_forest(&Graph::cycle(4)));
        assert!(is_star_forest(&Graph::new(3)));
    }

    #[test]
    fn spec_examples() {
        assert_eq!(star_forest_vertex_edit(&Graph::path(4)).len(), 4);
        assert_eq!(star_forest_vertex_edit(&Graph::complete(3)).len(), 3);
        assert_eq!(star_forest_edge_edit(&Graph::complete(3)).len(), 3);
        assert_eq!(star_forest_edge_edit(&Graph::path(4)).len(), 3);
        let two = Graph::path(4).disjoint_union(&Graph::path(4));
        assert_eq!(star_forest_edge_edit(&two).len(), 6);
    }

    #[test]
    fn c4_is_caught() {
        let g = Graph::cycle(4);
        let x = star_forest_vertex_edit(&g);
        assert!(is_star_forest(&apply_edits(&g, &x).unwrap()));
        let y = star_forest_edge_edit(&g);
        assert!(is_star_forest(&apply_edits(&g, &y).unwrap()));
    }
}
