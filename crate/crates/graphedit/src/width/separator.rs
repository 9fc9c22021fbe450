//! Balanced vertex separators: exact minimum for small graphs, a BFS-layer
//! heuristic with a greedy fallback otherwise.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bits::MaskGraph;
use crate::graph::{Graph, Weight};

#[derive(Clone, Debug)]
pub struct SeparatorConfig {
    /// Use exhaustive search when the graph has at most this many vertices.
    pub exact_limit: usize,
    /// Subsets the exhaustive search may test before falling back.
    pub max_subsets: u64,
}

impl Default for SeparatorConfig {
    fn default() -> Self {
        SeparatorConfig {
            exact_limit: 18,
            max_subsets: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorResult {
    pub separator: BTreeSet<usize>,
    pub components: Vec<BTreeSet<usize>>,
    #[serde(with = "crate::io::ratio_serde")]
    pub balance: Weight,
    /// max over components of |C ∩ W| / |W| (0 when W is empty).
    pub max_fraction: f64,
    /// True when the exhaustive search produced a minimum separator.
    pub exact: bool,
}

fn balanced(counts: impl Iterator<Item = usize>, w_len: usize, c: Weight) -> bool {
    // |C ∩ W| ≤ c·|W|  ⇔  |C ∩ W|·den ≤ num·|W|
    let (num, den) = (*c.numer() as i128, *c.denom() as i128);
    counts
        .into_iter()
        .all(|k| k as i128 * den <= num * w_len as i128)
}

/// Check that `s` is a c-separator of `w` in `g`.
pub fn is_separator(g: &Graph, w: &BTreeSet<usize>, s: &BTreeSet<usize>, c: Weight) -> bool {
    let keep: BTreeSet<usize> = g.vertices().filter(|v| !s.contains(v)).collect();
    let h = g.induced(&keep);
    let w_len = w.len();
    balanced(
        h.components()
            .iter()
            .map(|comp| comp.iter().filter(|v| w.contains(v)).count()),
        w_len,
        c,
    )
}

fn finish(
    g: &Graph,
    w: &BTreeSet<usize>,
    s: BTreeSet<usize>,
    c: Weight,
    exact: bool,
) -> SeparatorResult {
    let keep: BTreeSet<usize> = g.vertices().filter(|v| !s.contains(v)).collect();
    let components: Vec<BTreeSet<usize>> = g
        .induced(&keep)
        .components()
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    let max_fraction = if w.is_empty() {
        0.0
    } else {
        components
            .iter()
            .map(|comp| comp.iter().filter(|v| w.contains(v)).count())
            .max()
            .unwrap_or(0) as f64
            / w.len() as f64
    };
    SeparatorResult {
        separator: s,
        components,
        balance: c,
        max_fraction,
        exact,
    }
}

/// A vertex c-separator of `w ⊆ V(g)`: every component of `g − S` holds at
/// most `c·|W|` vertices of `W`.
pub fn balanced_separator(
    g: &Graph,
    w: &BTreeSet<usize>,
    c: Weight,
    cfg: &SeparatorConfig,
) -> SeparatorResult {
    assert!(
        c > Weight::from_integer(0) && c < Weight::from_integer(1),
        "balance must lie in (0, 1)"
    );
    if g.order() <= cfg.exact_limit.min(64) {
        if let Some(s) = exact_separator(g, w, c, cfg.max_subsets) {
            return finish(g, w, s, c, true);
        }
    }
    let s = heuristic_separator(g, w, c);
    finish(g, w, s, c, false)
}

/// Minimum c-separator by subsets of increasing size. Among minimum ones
/// the most balanced wins (smallest heaviest component), then the
/// lexicographically first. `None` if the subset budget runs out.
pub fn exact_separator(
    g: &Graph,
    w: &BTreeSet<usize>,
    c: Weight,
    max_subsets: u64,
) -> Option<BTreeSet<usize>> {
    let mg = MaskGraph::new(g).ok()?;
    let wmask = (0..mg.n)
        .filter(|&i| w.contains(&mg.ids[i]))
        .fold(0u64, |m, i| m | 1 << i);
    let w_len = wmask.count_ones() as usize;
    let mut tested = 0u64;
    for k in 0..=mg.n {
        let mut best: Option<(u32, u64)> = None;
        for combo in (0..mg.n).combinations(k) {
            tested += 1;
            if tested > max_subsets {
                return None;
            }
            let s = combo.iter().fold(0u64, |m, &i| m | 1 << i);
            let rest = mg.full() & !s;
            let counts: Vec<usize> = mg
                .components(rest)
                .into_iter()
                .map(|comp| (comp & wmask).count_ones() as usize)
                .collect();
            if balanced(counts.iter().copied(), w_len, c) {
                let heaviest = counts.iter().copied().max().unwrap_or(0) as u32;
                if best.is_none_or(|(h, _)| heaviest < h) {
                    best = Some((heaviest, s));
                }
            }
        }
        if let Some((_, s)) = best {
            return Some(mg.to_ids(s).into_iter().collect());
        }
    }
    None
}

/// Smallest valid BFS layer over all start vertices; if no layer works,
/// greedily remove the highest-degree vertex of the heaviest component.
/// The result is then pruned to an inclusion-minimal separator.
pub fn heuristic_separator(g: &Graph, w: &BTreeSet<usize>, c: Weight) -> BTreeSet<usize> {
    let mut best: Option<BTreeSet<usize>> = None;
    for s in g.vertices() {
        let mut dist = vec![usize::MAX; g.id_bound()];
        dist[s] = 0;
        let mut layers: Vec<BTreeSet<usize>> = vec![[s].into()];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &x in g.neighbors(u) {
                if dist[x] == usize::MAX {
                    dist[x] = dist[u] + 1;
                    if layers.len() <= dist[x] {
                        layers.push(BTreeSet::new());
                    }
                    layers[dist[x]].insert(x);
                    queue.push_back(x);
                }
            }
        }
        for layer in layers {
            if best.as_ref().is_some_and(|b| b.len() <= layer.len()) {
                continue;
            }
            if is_separator(g, w, &layer, c) {
                best = Some(layer);
            }
        }
    }
    let mut sep = match best {
        Some(b) => b,
        None => {
            let mut sep = BTreeSet::new();
            while !is_separator(g, w, &sep, c) {
                let keep: BTreeSet<usize> = g.vertices().filter(|v| !sep.contains(v)).collect();
                let h = g.induced(&keep);
                let heavy = h
                    .components()
                    .into_iter()
                    .max_by_key(|comp| {
                        (
                            comp.iter().filter(|v| w.contains(v)).count(),
                            std::cmp::Reverse(comp[0]),
                        )
                    })
                    .expect("an unbalanced component exists");
                let v = *heavy
                    .iter()
                    .max_by_key(|&&v| (h.degree(v), std::cmp::Reverse(v)))
                    .unwrap();
                sep.insert(v);
            }
            sep
        }
    };
    for v in sep.clone() {
        sep.remove(&v);
        if !is_separator(g, w, &sep, c) {
            sep.insert(v);
        }
    }
    sep
}
