//! Graphs that are a small edit away from a structural class: a random
//! member of the class plus seeded noise, with the noise recorded as a
//! witness edit (an upper bound on the optimum).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, EditKind, EditSet, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum PlantedClass {
    /// Uniformly random labelled forest-by-attachment (degeneracy ≤ 1).
    Forest,
    /// Every vertex points to at most `r` earlier vertices (degeneracy ≤ r).
    Degenerate { r: usize },
    /// A random k-tree (treewidth exactly k when n > k).
    KTree { k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedParams {
    pub n: usize,
    pub class: PlantedClass,
    /// Number of noise edges (edge mode) or noise vertices (vertex mode).
    pub noise: usize,
    pub noise_kind: EditKind,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub graph: Graph,
    /// Deleting this restores membership in the class.
    pub planted: EditSet,
}

fn base_edges(n: usize, class: PlantedClass, rng: &mut ChaCha8Rng) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    match class {
        PlantedClass::Forest => {
            for v in 1..n {
                // leave roughly one vertex in five as a new root
                if rng.gen_bool(0.8) {
                    edges.push(edge(rng.gen_range(0..v), v));
                }
            }
        }
        PlantedClass::Degenerate { r } => {
            let mut earlier: Vec<usize> = Vec::with_capacity(n);
            for v in 0..n {
                for &u in earlier.choose_multiple(rng, r.min(v)) {
                    edges.push(edge(u, v));
                }
                earlier.push(v);
            }
        }
        PlantedClass::KTree { k } => {
            if n < k + 1 {
                return Err(Error::Param(format!(
                    "a {k}-tree needs at least {} vertices",
                    k + 1
                )));
            }
            let root: Vec<usize> = (0..=k).collect();
            for (i, &u) in root.iter().enumerate() {
                for &v in &root[i + 1..] {
                    edges.push(edge(u, v));
                }
            }
            // every k-subset of the root clique, then of each new (k+1)-clique
            let mut cliques: Vec<Vec<usize>> = (0..=k)
                .map(|skip| root.iter().copied().filter(|&u| u != skip).collect())
                .collect();
            for v in k + 1..n {
                let base = cliques.choose(rng).expect("k-tree has a k-clique").clone();
                for &u in &base {
                    edges.push(edge(u, v));
                }
                for skip in 0..base.len() {
                    let mut c: Vec<usize> = base
                        .iter()
                        .copied()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, u)| u)
                        .collect();
                    c.push(v);
                    cliques.push(c);
                }
            }
        }
    }
    Ok(edges)
}

/// Generate a planted instance; the same parameters always give the same
/// graph.
pub fn gen_planted(p: &PlantedParams) -> Result<PlantedInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let base = base_edges(p.n, p.class, &mut rng)?;
    match p.noise_kind {
        EditKind::Edge => {
            let present: BTreeSet<Edge> = base.iter().copied().collect();
            let mut missing: Vec<Edge> = (0..p.n)
                .flat_map(|u| (u + 1..p.n).map(move |v| (u, v)))
                .filter(|e| !present.contains(e))
                .collect();
            if missing.len() < p.noise {
                return Err(Error::Param(format!(
                    "only {} non-edges available for {} noise edges",
                    missing.len(),
                    p.noise
                )));
            }
            missing.shuffle(&mut rng);
            let noise = &missing[..p.noise];
            let mut all = base;
            all.extend_from_slice(noise);
            let graph = Graph::from_edges(p.n, &all);
            let planted = EditSet::from_edges(&graph, noise.iter().copied());
            Ok(PlantedInstance { graph, planted })
        }
        EditKind::Vertex => {
            let mut all = base;
            let mut noise = Vec::with_capacity(p.noise);
            for i in 0..p.noise {
                let v = p.n + i;
                let others: Vec<usize> = (0..v).collect();
                let degree = if v == 0 {
                    0
                } else {
                    rng.gen_range(1..=v.min(p.n.max(1)))
                };
                for &u in others.choose_multiple(&mut rng, degree) {
                    all.push(edge(u, v));
                }
                noise.push(v);
            }
            let graph = Graph::from_edges(p.n + p.noise, &all);
            let planted = EditSet::from_vertices(&graph, noise);
            Ok(PlantedInstance { graph, planted })
        }
    }
}
