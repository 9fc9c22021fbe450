//! Exact weak coloring numbers by ordering search.
//!
//! Orderings are built front to back. Placing `v` first among the remaining
//! set `R` puts `v` into WReach of every vertex within distance `c` of `v`
//! in `G[R]`, and those counts never change again. A state is therefore
//! `(R, counts on R)`, and failed states are memoised.

use std::collections::HashSet;

use crate::bits::{self, MaskGraph};
use crate::error::{Error, Result};
use crate::graph::{degeneracy, Graph, VertexOrdering};
use crate::oracles::{Meter, OracleBudget};

use super::score::wcol_score;

fn ball(mg: &MaskGraph, v: usize, c: usize, within: u64) -> u64 {
    let mut seen = 1u64 << v;
    let mut frontier = seen;
    for _ in 0..c {
        let next = bits::iter(frontier).fold(0u64, |a, x| a | mg.adj[x]) & within & !seen;
        if next == 0 {
            break;
        }
        seen |= next;
        frontier = next;
    }
    seen
}

struct Search<'a> {
    mg: &'a MaskGraph,
    c: usize,
    k: usize,
    failed: HashSet<(u64, Vec<u8>)>,
    meter: Meter<'a>,
}

impl Search<'_> {
    fn dfs(&mut self, rest: u64, acc: &mut Vec<u8>, out: &mut Vec<usize>) -> Result<bool> {
        if rest == 0 {
            return Ok(true);
        }
        let key = (rest, bits::iter(rest).map(|u| acc[u]).collect::<Vec<u8>>());
        if self.failed.contains(&key) {
            return Ok(false);
        }
        self.meter.tick()?;
        for v in bits::iter(rest) {
            let b = ball(self.mg, v, self.c, rest);
            if bits::iter(b).any(|u| acc[u] as usize + 1 > self.k) {
                continue;
            }
            for u in bits::iter(b) {
                acc[u] += 1;
            }
            out.push(v);
            if self.dfs(rest & !(1u64 << v), acc, out)? {
                return Ok(true);
            }
            out.pop();
            for u in bits::iter(b) {
                acc[u] -= 1;
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

fn check(g: &Graph, c: usize, budget: &OracleBudget) -> Result<()> {
    if c < 1 {
        return Err(Error::Param("wcol needs c ≥ 1".into()));
    }
    if g.order() > budget.max_wcol_vertices {
        return Err(Error::Budget(format!(
            "exact wcol handles at most {} vertices, got {}",
            budget.max_wcol_vertices,
            g.order()
        )));
    }
    Ok(())
}

/// An ordering with every WReach_c set of size ≤ k, if one exists.
pub fn wcol_ordering_at_most(
    g: &Graph,
    c: usize,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<VertexOrdering>> {
    check(g, c, budget)?;
    let mg = MaskGraph::new(g)?;
    let mut s = Search {
        mg: &mg,
        c,
        k,
        failed: HashSet::new(),
        meter: Meter::new(budget),
    };
    let mut out = Vec::new();
    let mut acc = vec![0u8; mg.n];
    Ok(s.dfs(mg.full(), &mut acc, &mut out)?
        .then(|| VertexOrdering::new(out.into_iter().map(|i| mg.ids[i]).collect())))
}

/// Is `wcol_c(g) ≤ k`?
pub fn wcol_at_most(g: &Graph, c: usize, k: usize, budget: &OracleBudget) -> Result<bool> {
    check(g, c, budget)?;
    if k >= g.order() {
        return Ok(true);
    }
    if k < degeneracy(g).0 + 1 {
        return Ok(false);
    }
    Ok(wcol_ordering_at_most(g, c, k, budget)?.is_some())
}

/// `wcol_c(g)` with an optimal ordering.
pub fn exact_wcol_ordering(
    g: &Graph,
    c: usize,
    budget: &OracleBudget,
) -> Result<(usize, VertexOrdering)> {
    check(g, c, budget)?;
    // The reversed peeling order is a good start: it is optimal for c = 1.
    let start = degeneracy(g).1.reversed();
    let ub = wcol_score(g, &start, c).score;
    let lb = if g.order() == 0 {
        0
    } else {
        degeneracy(g).0 + 1
    };
    for k in lb..ub {
        if let Some(l) = wcol_ordering_at_most(g, c, k, budget)? {
            return Ok((k, l));
        }
    }
    Ok((ub, start))
}

/// `wcol_c(g)`: the minimum over orderings of the largest WReach_c set.
pub fn exact_wcol(g: &Graph, c: usize, budget: &OracleBudget) -> Result<usize> {
    Ok(exact_wcol_ordering(g, c, budget)?.0)
}

/// Reference value by scoring every permutation (n ≤ 8).
pub fn wcol_by_permutations(g: &Graph, c: usize) -> Result<usize> {
    use itertools::Itertools;
    let vs: Vec<usize> = g.vertices().collect();
    if vs.len() > 8 {
        return Err(Error::Budget(format!(
            "permutation wcol handles at most 8 vertices, got {}",
            vs.len()
        )));
    }
    let n = vs.len();
    Ok(vs
        .into_iter()
        .permutations(n)
        .map(|p| wcol_score(g, &VertexOrdering::new(p), c).score)
        .min()
        .unwrap_or(0))
}
