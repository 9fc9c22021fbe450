//! Delete vertices until the degeneracy is at most β·r, with the local-ratio
//! editor, and compare with the exact optimum.
//!
//! `cargo run --example degeneracy_local_ratio`

use graphedit::degeneracy::local_ratio_vertex_edit_traced;
use graphedit::graph::{apply_edits, degeneracy};
use graphedit::instances::gnp;
use graphedit::oracles::{exact_min_edit, EditPredicate, OracleBudget};
use graphedit::{EditKind, Weight};

fn main() -> graphedit::Result<()> {
    let g = gnp(12, 0.6, 3)?;
    let r = 1;
    let beta = Weight::from_integer(2);
    println!(
        "G(12, 0.6): {} edges, degeneracy {}",
        g.size(),
        degeneracy(&g).0
    );

    let out = local_ratio_vertex_edit_traced(&g, r, beta)?;
    let h = apply_edits(&g, &out.edit)?;
    println!(
        "deleted {:?}; degeneracy now {} (promised ≤ {})",
        out.edit.vertices,
        degeneracy(&h).0,
        out.bound
    );
    println!("{} local-ratio steps", out.trace.len());

    let budget = OracleBudget {
        max_edges: 80,
        ..OracleBudget::default()
    };
    let opt = exact_min_edit(
        &g,
        EditPredicate::DegeneracyAtMost(r),
        EditKind::Vertex,
        &budget,
    )?;
    println!("fewest deletions reaching degeneracy {r}: {}", opt.len());
    Ok(())
}
