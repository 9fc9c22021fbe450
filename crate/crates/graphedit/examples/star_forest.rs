//! Edit a graph into a star forest by hitting every forbidden pattern
//! (paths on four vertices and triangles).
//!
//! `cargo run --example star_forest`

use graphedit::combinatorial::{is_star_forest, star_forest_edge_edit, star_forest_vertex_edit};
use graphedit::graph::apply_edits;
use graphedit::oracles::{exact_min_edit, EditPredicate, OracleBudget};
use graphedit::{EditKind, Graph};

fn main() -> graphedit::Result<()> {
    let budget = OracleBudget::default();
    for (name, g) in [
        ("grid 3×3", Graph::grid(3, 3)),
        ("cycle 7", Graph::cycle(7)),
        ("two P4", Graph::path(4).disjoint_union(&Graph::path(4))),
    ] {
        let xv = star_forest_vertex_edit(&g);
        let xe = star_forest_edge_edit(&g);
        assert!(is_star_forest(&apply_edits(&g, &xv)?) && is_star_forest(&apply_edits(&g, &xe)?));
        let ov = exact_min_edit(&g, EditPredicate::StarForest, EditKind::Vertex, &budget)?;
        let oe = exact_min_edit(&g, EditPredicate::StarForest, EditKind::Edge, &budget)?;
        println!(
            "{name:<9} vertex {} (opt {}), edge {} (opt {})",
            xv.len(),
            ov.len(),
            xe.len(),
            oe.len()
        );
    }
    Ok(())
}
