//! Seeded random graphs and set-cover instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::SetCoverInstance;

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Param(format!(
            "edge probability {p} is outside [0,1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// A random set-cover instance with `sets` sets over `universe` elements in
/// which every element lies in at least `min_frequency` sets.
pub fn random_set_cover(
    universe: usize,
    sets: usize,
    min_frequency: usize,
    seed: u64,
) -> Result<SetCoverInstance> {
    if min_frequency == 0 || min_frequency > sets {
        return Err(Error::Param(format!(
            "minimum frequency {min_frequency} is not in 1..={sets}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = vec![BTreeSet::new(); sets];
    let ids: Vec<usize> = (0..sets).collect();
    for e in 0..universe {
        let f = rng.gen_range(min_frequency..=sets);
        for &s in ids.choose_multiple(&mut rng, f) {
            family[s].insert(e);
        }
    }
    // a set that drew nothing gets a random element
    for s in family.iter_mut().filter(|s| s.is_empty()) {
        if universe == 0 {
            return Err(Error::Param(
                "cannot fill sets over an empty universe".into(),
            ));
        }
        s.insert(rng.gen_range(0..universe));
    }
    SetCoverInstance::new(universe, family)
}
