//! Integrality-gap instances for the degeneracy LP relaxations.

use crate::error::{Error, Result};
use crate::graph::{EditKind, Graph};

/// K_{2n} with target degeneracy r = n − 2. The same graph serves both the
/// vertex and the edge relaxation; `mode` is checked only so callers state
/// which gap they are reproducing.
pub fn gen_integrality_gap(n: usize, mode: EditKind) -> Result<(Graph, usize)> {
    if n < 3 {
        return Err(Error::Param(format!(
            "integrality-gap instances need n >= 3, got {n} ({mode:?} mode)"
        )));
    }
    Ok((Graph::complete(2 * n), n - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneracy::lp_round::{solve_edge_lp, solve_vertex_lp};

    #[test]
    fn complete_graphs_with_matching_targets() {
        let (g, r) = gen_integrality_gap(3, EditKind::Vertex).unwrap();
        assert_eq!((g.order(), g.size(), r), (6, 15, 1));
        let (g, r) = gen_integrality_gap(4, EditKind::Edge).unwrap();
        assert_eq!((g.order(), r), (8, 2));
        assert!(gen_integrality_gap(2, EditKind::Edge).is_err());
    }

    #[test]
    fn relaxations_are_cheap() {
        let (g, r) = gen_integrality_gap(3, EditKind::Edge).unwrap();
        assert!(solve_edge_lp(&g, r).unwrap().objective <= 10.0 + 1e-6);
        assert!(solve_vertex_lp(&g, r).unwrap().objective <= 2.0 + 1e-6);
    }
}
