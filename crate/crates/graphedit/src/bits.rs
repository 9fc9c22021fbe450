//! Bitmask view of small graphs (at most 64 live vertices), used by the
//! exhaustive oracles where speed matters more than generality.

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    /// `ids[i]` is the original id of compact vertex `i`.
    pub ids: Vec<usize>,
}

impl MaskGraph {
    pub fn new(g: &Graph) -> Result<Self> {
        let (h, ids) = g.compacted();
        if h.id_bound() > 64 {
            return Err(Error::Budget(format!(
                "bitmask oracles handle at most 64 vertices, got {}",
                h.id_bound()
            )));
        }
        Ok(MaskGraph {
            n: h.id_bound(),
            adj: h.adjacency_masks(),
            ids,
        })
    }

    #[inline]
    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Vertices reachable from `start` inside `within` (start included).
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & within & !comp;
            comp |= new;
            frontier |= new;
        }
        comp
    }

    /// Connected components of the subgraph induced by `mask`.
    pub fn components(&self, mut mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            let c = self.reach(v, mask);
            out.push(c);
            mask &= !c;
        }
        out
    }

    /// Open neighbourhood of a vertex set.
    pub fn neighbourhood(&self, set: u64) -> u64 {
        iter(set).fold(0, |acc, v| acc | self.adj[v]) & !set
    }

    /// Degeneracy of the subgraph induced by `mask` (peeling, O(n²)).
    pub fn degeneracy(&self, mut mask: u64) -> usize {
        let mut r = 0;
        while mask != 0 {
            let (v, d) = iter(mask)
                .map(|v| (v, (self.adj[v] & mask).count_ones() as usize))
                .min_by_key(|&(v, d)| (d, v))
                .unwrap();
            r = r.max(d);
            mask &= !(1u64 << v);
        }
        r
    }

    pub fn to_ids(&self, mask: u64) -> Vec<usize> {
        iter(mask).map(|i| self.ids[i]).collect()
    }
}

/// Iterate the set bits of a mask in increasing order.
pub fn iter(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}
