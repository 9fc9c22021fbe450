//! Minimum edge deletion to maximum degree d, solved exactly through a
//! b-matching.
//!
//! `cargo run --example bounded_degree`

use graphedit::combinatorial::bounded_degree_edge_edit;
use graphedit::graph::apply_edits;
use graphedit::instances::gnp;

fn main() -> graphedit::Result<()> {
    let g = gnp(30, 0.2, 8)?;
    println!(
        "{} vertices, {} edges, maximum degree {}",
        g.order(),
        g.size(),
        g.max_degree()
    );
    for d in 1..=4 {
        let x = bounded_degree_edge_edit(&g, d);
        let h = apply_edits(&g, &x)?;
        println!(
            "d = {d}: delete {:>2} edges, maximum degree now {}",
            x.len(),
            h.max_degree()
        );
    }
    Ok(())
}
