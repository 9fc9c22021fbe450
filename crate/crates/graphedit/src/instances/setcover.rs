use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Set Cover instance over the universe `0..universe`.
///
/// JSON: `{"universe": N, "sets": [[...], ...]}` with 0-based elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<BTreeSet<usize>>,
}

impl SetCoverInstance {
    /// Validate and build: no empty set, elements in range, every element covered.
    pub fn new(universe: usize, sets: Vec<BTreeSet<usize>>) -> Result<Self> {
        let sc = SetCoverInstance { universe, sets };
        sc.check()?;
        Ok(sc)
    }

    pub fn check(&self) -> Result<()> {
        for (i, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Input(format!("set {i} is empty")));
            }
            if let Some(&e) = s.iter().find(|&&e| e >= self.universe) {
                return Err(Error::Input(format!(
                    "set {i} holds element {e} outside the universe"
                )));
            }
        }
        for e in 0..self.universe {
            if self.frequency(e) == 0 {
                return Err(Error::Input(format!("element {e} is in no set")));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let sc: SetCoverInstance =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("set-cover JSON: {e}")))?;
        sc.check()?;
        Ok(sc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("set cover serialises")
    }

    /// Number of sets containing `e` (f_e).
    pub fn frequency(&self, e: usize) -> usize {
        self.sets.iter().filter(|s| s.contains(&e)).count()
    }

    pub fn max_frequency(&self) -> usize {
        (0..self.universe)
            .map(|e| self.frequency(e))
            .max()
            .unwrap_or(0)
    }

    /// Largest set size (Δ).
    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Indices of the sets containing `e`, ascending.
    pub fn sets_containing(&self, e: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&i| self.sets[i].contains(&e))
            .collect()
    }

    pub fn is_cover(&self, chosen: &BTreeSet<usize>) -> bool {
        (0..self.universe).all(|e| {
            chosen
                .iter()
                .any(|&i| i < self.sets.len() && self.sets[i].contains(&e))
        })
    }
}
