//! Seeded corpora and small helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use graphedit::instances::{gnp, random_set_cover, SetCoverInstance};
use graphedit::{Graph, Weight};

pub fn f64_of(w: Weight) -> f64 {
    *w.numer() as f64 / *w.denom() as f64
}

/// Random graphs on 4..=`max_n` vertices with densities cycling through
/// `densities`; `count` graphs, seeds `base..base + count`.
pub fn random_corpus(count: usize, max_n: usize, densities: &[f64], base: u64) -> Vec<Graph> {
    let span = max_n - 3;
    (0..count)
        .map(|i| {
            let n = 4 + i % span;
            let p = densities[(i / span) % densities.len()];
            gnp(n, p, base + i as u64).expect("valid G(n, p) parameters")
        })
        .collect()
}

/// Set-cover instances with `2..=max_u` elements and `2..=max_f` sets whose
/// elements all lie in at least `min_frequency` sets.
pub fn set_cover_corpus(
    max_u: usize,
    max_f: usize,
    min_frequency: usize,
    per_shape: usize,
) -> Vec<SetCoverInstance> {
    let mut out = Vec::new();
    for u in 2..=max_u {
        for f in min_frequency.max(2)..=max_f {
            for seed in 0..per_shape as u64 {
                let sc =
                    random_set_cover(u, f, min_frequency, 1000 * u as u64 + 100 * f as u64 + seed)
                        .expect("valid set-cover parameters");
                out.push(sc);
            }
        }
    }
    out
}

/// No set is the whole universe and no element is in every set.
pub fn treewidth_gadget_ready(sc: &SetCoverInstance) -> bool {
    sc.sets.len() >= 2
        && sc.sets.iter().all(|s| s.len() < sc.universe)
        && (0..sc.universe).all(|e| sc.frequency(e) < sc.sets.len())
}

/// All vertices of `g` except those in `x`.
pub fn without(g: &Graph, x: &BTreeSet<usize>) -> Graph {
    g.induced(&g.vertices().filter(|v| !x.contains(v)).collect())
}
