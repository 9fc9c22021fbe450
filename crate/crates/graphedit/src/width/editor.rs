//! Vertex deletion to bounded treewidth and pathwidth.
//!
//! While a component's width exceeds the threshold `32·c1·w·√log w`, delete
//! a 3/4-separator of it and recurse on what falls apart. Every leaf
//! component comes with a decomposition below the threshold, and joining
//! those certifies the width of the result.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EditSet, Graph, Weight};
use crate::oracles::{exact_tree_decomposition, OracleBudget};

use super::builder::tree_decomposition;
use super::decomposition::{PathDecomposition, TreeDecomposition};
use super::separator::{balanced_separator, SeparatorConfig};

#[derive(Clone, Debug)]
pub struct WidthEditConfig {
    pub separator: SeparatorConfig,
    /// Components this small get their width from the exact oracle.
    pub exact_width_limit: usize,
    pub oracle: OracleBudget,
}

impl Default for WidthEditConfig {
    fn default() -> Self {
        WidthEditConfig {
            separator: SeparatorConfig::default(),
            exact_width_limit: 12,
            oracle: OracleBudget::default(),
        }
    }
}

/// The stopping threshold `32·c1·w·√max(1, log2 w)`.
pub fn width_threshold(w: usize, c1: Weight) -> f64 {
    let c1 = *c1.numer() as f64 / *c1.denom() as f64;
    32.0 * c1 * w as f64 * (w as f64).log2().max(1.0).sqrt()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WidthEditOutcome {
    pub edit: EditSet,
    /// Decomposition of `g − X`, width at most the threshold.
    pub decomposition: TreeDecomposition,
    pub threshold: f64,
    /// The separators deleted, in recursion order.
    pub separators: Vec<BTreeSet<usize>>,
    /// Components on which the recursion stopped.
    pub leaves: Vec<BTreeSet<usize>>,
    /// Whether any separator came from the heuristic.
    pub heuristic_separators: bool,
}

impl WidthEditOutcome {
    /// The vertex partition the recursion induces: leaf components plus
    /// every deleted separator.
    pub fn partition(&self) -> Vec<BTreeSet<usize>> {
        self.leaves
            .iter()
            .chain(self.separators.iter())
            .filter(|p| !p.is_empty())
            .cloned()
            .collect()
    }
}

/// `Σ max(0, tw(G[P]) − w)` over the parts of a vertex partition: a lower
/// bound on the minimum number of deletions reaching treewidth `w`.
pub fn partition_lower_bound(
    g: &Graph,
    parts: &[BTreeSet<usize>],
    w: usize,
    budget: &OracleBudget,
) -> Result<usize> {
    let mut total = 0;
    for p in parts {
        total += crate::oracles::exact_treewidth(&g.induced(p), budget)?.saturating_sub(w);
    }
    Ok(total)
}

struct Editor<'a> {
    cfg: &'a WidthEditConfig,
    threshold: f64,
    separators: Vec<BTreeSet<usize>>,
    leaves: Vec<(BTreeSet<usize>, TreeDecomposition)>,
    heuristic: bool,
}

impl Editor<'_> {
    fn certify(&self, h: &Graph) -> Result<TreeDecomposition> {
        if h.order() <= self.cfg.exact_width_limit {
            exact_tree_decomposition(h, &self.cfg.oracle)
        } else {
            Ok(tree_decomposition(h, &self.cfg.separator))
        }
    }

    fn run(&mut self, h: Graph) -> Result<()> {
        let td = self.certify(&h)?;
        if td.width() as f64 <= self.threshold + 1e-9 {
            self.leaves.push((h.vertices().collect(), td));
            return Ok(());
        }
        let all: BTreeSet<usize> = h.vertices().collect();
        let s = balanced_separator(&h, &all, Weight::new(3, 4), &self.cfg.separator);
        self.heuristic |= !s.exact;
        if s.separator.is_empty() {
            return Err(Error::Internal(
                "width above threshold but the separator is empty".into(),
            ));
        }
        self.separators.push(s.separator);
        for comp in s.components {
            self.run(h.induced(&comp))?;
        }
        Ok(())
    }
}

/// Join decompositions of vertex-disjoint graphs by hanging every later
/// root below the first root.
fn join(parts: Vec<TreeDecomposition>) -> TreeDecomposition {
    let mut out = TreeDecomposition {
        bags: vec![],
        edges: vec![],
        root: 0,
    };
    for td in parts {
        let off = out.bags.len();
        out.bags.extend(td.bags);
        out.edges
            .extend(td.edges.iter().map(|&(a, b)| (a + off, b + off)));
        if off > 0 {
            out.edges.push((out.root, td.root + off));
        }
    }
    if out.bags.is_empty() {
        out.bags.push(BTreeSet::new());
    }
    out
}

/// Delete vertices so that treewidth is at most `32·c1·w·√max(1, log2 w)`,
/// with a decomposition of the remainder as certificate.
pub fn treewidth_node_edit(
    g: &Graph,
    w: usize,
    c1: Weight,
    cfg: &WidthEditConfig,
) -> Result<WidthEditOutcome> {
    if w < 1 {
        return Err(Error::Param("target width must be ≥ 1".into()));
    }
    if c1 <= Weight::from_integer(0) {
        return Err(Error::Param("c1 must be positive".into()));
    }
    let threshold = width_threshold(w, c1);
    let mut ed = Editor {
        cfg,
        threshold,
        separators: vec![],
        leaves: vec![],
        heuristic: false,
    };
    for comp in g.components() {
        ed.run(g.induced(&comp.into_iter().collect()))?;
    }
    let deleted: BTreeSet<usize> = ed.separators.iter().flatten().copied().collect();
    let edit = EditSet::from_vertices(g, deleted);
    let (leaves, tds): (Vec<_>, Vec<_>) = ed.leaves.into_iter().unzip();
    let decomposition = join(tds);
    Ok(WidthEditOutcome {
        edit,
        decomposition,
        threshold,
        separators: ed.separators,
        leaves,
        heuristic_separators: ed.heuristic,
    })
}

/// Path decomposition from a rooted tree decomposition: each node's bag is
/// extended by all its ancestors' bags, and nodes are listed in preorder.
/// Width + 1 is at most (td width + 1) · td height.
pub fn tree_to_path(td: &TreeDecomposition) -> Result<PathDecomposition> {
    let parent = td.parents()?;
    let order = td.preorder()?;
    let mut full: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); td.bags.len()];
    for &a in &order {
        let mut bag = td.bags[a].clone();
        if let Some(p) = parent[a] {
            bag.extend(full[p].iter().copied());
        }
        full[a] = bag;
    }
    Ok(PathDecomposition {
        bags: order.into_iter().map(|a| full[a].clone()).collect(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathEditOutcome {
    pub edit: EditSet,
    pub path: PathDecomposition,
    pub tree: TreeDecomposition,
    /// `(tree width + 1)·tree height − 1`.
    pub width_bound: usize,
}

/// Treewidth editing followed by the tree-to-path conversion.
pub fn pathwidth_node_edit(
    g: &Graph,
    w: usize,
    c1: Weight,
    cfg: &WidthEditConfig,
) -> Result<PathEditOutcome> {
    let out = treewidth_node_edit(g, w, c1, cfg)?;
    let path = tree_to_path(&out.decomposition).map_err(|e| e.in_stage("tree to path"))?;
    let width_bound =
        ((out.decomposition.width() + 1) * out.decomposition.height()).saturating_sub(1);
    Ok(PathEditOutcome {
        edit: out.edit,
        path,
        tree: out.decomposition,
        width_bound,
    })
}
