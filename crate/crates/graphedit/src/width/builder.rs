//! Recursive tree-decomposition builder.
//!
//! `build(Z, W)` returns a decomposition of `G[Z ∪ W]` whose root bag holds
//! `W`. Unless `Z` is tiny relative to `W`, it separates `W`, then `Z ∪ W`,
//! then (if still needed) `Z`, puts all three separators into the root bag
//! and recurses into each component that still owns vertices of `Z`. Every
//! child receives at most three quarters of `Z`, so the height is
//! logarithmic.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Weight};

use super::decomposition::{
    decomposition_from_elimination, min_degree_ordering, TreeDecomposition,
};
use super::separator::{balanced_separator, SeparatorConfig};

/// One call of the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStep {
    pub depth: usize,
    pub z: usize,
    pub w: usize,
    /// `|Z_i|` for each child call.
    pub children_z: Vec<usize>,
    pub base_case: bool,
    /// Whether every separator in this call came from the exact search.
    pub exact_separators: bool,
}

impl BuildStep {
    /// `|Z_i| ≤ (3/4)|Z|` for every child.
    pub fn shrinks(&self) -> bool {
        self.children_z.iter().all(|&zi| 4 * zi <= 3 * self.z)
    }
}

#[derive(Clone, Debug)]
pub struct BuildOutcome {
    pub decomposition: TreeDecomposition,
    pub steps: Vec<BuildStep>,
}

impl BuildOutcome {
    /// `⌊log_{4/3} n⌋ + 1`, the height the 3/4 shrink guarantees.
    pub fn height_bound(n: usize) -> usize {
        if n <= 1 {
            return 1;
        }
        ((n as f64).ln() / (4.0f64 / 3.0).ln() + 1e-9).floor() as usize + 1
    }
}

struct Builder<'a> {
    g: &'a Graph,
    cfg: &'a SeparatorConfig,
    bags: Vec<BTreeSet<usize>>,
    edges: Vec<(usize, usize)>,
    steps: Vec<BuildStep>,
}

impl Builder<'_> {
    fn build(&mut self, z: BTreeSet<usize>, w: BTreeSet<usize>, depth: usize) -> usize {
        let three_quarters = Weight::new(3, 4);
        if 8 * z.len() <= w.len() {
            self.steps.push(BuildStep {
                depth,
                z: z.len(),
                w: w.len(),
                children_z: vec![],
                base_case: true,
                exact_separators: true,
            });
            self.bags.push(z.union(&w).copied().collect());
            return self.bags.len() - 1;
        }
        let zw: BTreeSet<usize> = z.union(&w).copied().collect();
        let h = self.g.induced(&zw);
        let mut exact = true;
        let mut sep = BTreeSet::new();
        if !w.is_empty() {
            let s = balanced_separator(&h, &w, three_quarters, self.cfg);
            exact &= s.exact;
            sep.extend(s.separator);
        }
        let t = balanced_separator(&h, &zw, three_quarters, self.cfg);
        exact &= t.exact;
        sep.extend(t.separator);

        let rest: BTreeSet<usize> = zw.difference(&sep).copied().collect();
        let mut h2 = self.g.induced(&rest);
        let z_count = |comp: &Vec<usize>| comp.iter().filter(|v| z.contains(v)).count();
        if h2.components().iter().any(|c| 4 * z_count(c) > 3 * z.len()) {
            // T balances Z ∪ W, which need not balance Z alone.
            let z_rest: BTreeSet<usize> = z.intersection(&rest).copied().collect();
            let u = balanced_separator(&h2, &z_rest, three_quarters, self.cfg);
            exact &= u.exact;
            for &v in &u.separator {
                h2.remove_vertex(v);
            }
            sep.extend(u.separator);
        }

        let root_bag: BTreeSet<usize> = w.union(&sep).copied().collect();
        self.bags.push(root_bag);
        let root = self.bags.len() - 1;
        let step_idx = self.steps.len();
        self.steps.push(BuildStep {
            depth,
            z: z.len(),
            w: w.len(),
            children_z: vec![],
            base_case: false,
            exact_separators: exact,
        });

        for comp in h2.components() {
            let zi: BTreeSet<usize> = comp.iter().filter(|v| z.contains(v)).copied().collect();
            if zi.is_empty() {
                // Such a component lies inside W, already covered by the root.
                continue;
            }
            assert!(
                4 * zi.len() <= 3 * z.len(),
                "child call must receive at most 3/4 of Z"
            );
            self.steps[step_idx].children_z.push(zi.len());
            let wi: BTreeSet<usize> = comp
                .iter()
                .filter(|v| w.contains(v))
                .copied()
                .chain(sep.iter().copied())
                .collect();
            let child = self.build(zi, wi, depth + 1);
            self.edges.push((root, child));
        }
        root
    }
}

/// The separator recursion with its per-call records.
pub fn recursive_decomposition(g: &Graph, cfg: &SeparatorConfig) -> BuildOutcome {
    let mut b = Builder {
        g,
        cfg,
        bags: vec![],
        edges: vec![],
        steps: vec![],
    };
    let root = b.build(g.vertices().collect(), BTreeSet::new(), 0);
    let decomposition = TreeDecomposition {
        bags: b.bags,
        edges: b.edges,
        root,
    };
    debug_assert!(decomposition.validate(g).is_ok());
    BuildOutcome {
        decomposition,
        steps: b.steps,
    }
}

/// A tree decomposition of `g`: the separator recursion, or the min-degree
/// elimination decomposition when that one is strictly narrower.
pub fn tree_decomposition(g: &Graph, cfg: &SeparatorConfig) -> TreeDecomposition {
    let rec = recursive_decomposition(g, cfg).decomposition;
    let elim = decomposition_from_elimination(g, &min_degree_ordering(g));
    if elim.width() < rec.width() {
        elim
    } else {
        rec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let cfg = SeparatorConfig::default();
        assert_eq!(tree_decomposition(&Graph::path(4), &cfg).width(), 1);
        assert_eq!(tree_decomposition(&Graph::complete(4), &cfg).width(), 3);
        assert_eq!(tree_decomposition(&Graph::cycle(4), &cfg).width(), 2);
    }

    #[test]
    fn recursion_is_valid_and_shallow() {
        let cfg = SeparatorConfig::default();
        for g in [
            Graph::grid(4, 4),
            Graph::complete(7),
            Graph::cycle(11),
            Graph::path(17),
            Graph::new(0),
            Graph::new(3),
        ] {
            let out = recursive_decomposition(&g, &cfg);
            out.decomposition.validate(&g).unwrap();
            assert!(out.steps.iter().all(BuildStep::shrinks));
            assert!(out.decomposition.height() <= BuildOutcome::height_bound(g.order()));
        }
    }

    #[test]
    fn heuristic_separators_on_larger_graphs() {
        let cfg = SeparatorConfig {
            exact_limit: 0,
            ..Default::default()
        };
        let g = Graph::grid(6, 7);
        let out = recursive_decomposition(&g, &cfg);
        out.decomposition.validate(&g).unwrap();
        assert!(out.steps.iter().all(|s| s.shrinks()));
    }
}
