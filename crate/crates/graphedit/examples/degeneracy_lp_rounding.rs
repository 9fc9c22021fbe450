//! Round the orientation LP for degeneracy editing, in both vertex and edge
//! mode, and print the fractional optimum next to the rounded edit.
//!
//! `cargo run --example degeneracy_lp_rounding`

use graphedit::degeneracy::{lp_edge_edit, lp_vertex_edit};
use graphedit::graph::{apply_edits, degeneracy};
use graphedit::instances::{gen_integrality_gap, gnp};
use graphedit::{EditKind, Weight};

fn main() -> graphedit::Result<()> {
    let g = gnp(14, 0.6, 11)?;
    let r = 2;

    let v = lp_vertex_edit(&g, r, Weight::new(1, 6))?;
    let h = apply_edits(&g, &v.edit)?;
    println!(
        "vertex: LP {:.3}, deleted {} vertices, degeneracy {} (≤ {}), max out-degree {}",
        v.fractional.objective,
        v.edit.len(),
        degeneracy(&h).0,
        v.out_degree_bound,
        v.orientation.max_out_degree()
    );

    let e = lp_edge_edit(&g, r, Weight::new(1, 5))?;
    let h = apply_edits(&g, &e.edit)?;
    println!(
        "edge:   LP {:.3}, deleted {} edges, degeneracy {} (≤ {})",
        e.fractional.objective,
        e.edit.len(),
        degeneracy(&h).0,
        e.out_degree_bound
    );

    // The complete graph K_2n with target n − 2 has a vertex LP optimum of at
    // most 2 although n + 1 deletions are needed.
    for n in 3..=6 {
        let (k, r) = gen_integrality_gap(n, EditKind::Vertex)?;
        let out = lp_vertex_edit(&k, r, Weight::new(1, 6))?;
        println!(
            "K_{}: vertex LP {:.3}, rounded edit {}",
            2 * n,
            out.fractional.objective,
            out.edit.len()
        );
    }
    Ok(())
}
