//! Lower the degeneracy one step at a time, and reach an exact target by
//! combining a bicriteria editor with the by-one reduction.
//!
//! `cargo run --example degeneracy_reduce`

use graphedit::degeneracy::{degen_reduce_by_one, degen_reduce_to_r, BaseEditor};
use graphedit::graph::{apply_edits, degeneracy};
use graphedit::instances::gnp;
use graphedit::{EditKind, Weight};

fn main() -> graphedit::Result<()> {
    let g = gnp(16, 0.5, 5)?;
    let r = degeneracy(&g).0;

    for mode in [EditKind::Vertex, EditKind::Edge] {
        let out = degen_reduce_by_one(&g, mode)?;
        let h = apply_edits(&g, &out.edit)?;
        println!(
            "{mode:?}: {r} → {} with {} deletions ({} marked edges at the start, {} rounds)",
            degeneracy(&h).0,
            out.edit.len(),
            out.m0,
            out.marked_per_round.len()
        );
    }

    let target = 2;
    let base = BaseEditor::LocalRatio {
        beta: Weight::from_integer(2),
    };
    let out = degen_reduce_to_r(&g, target, base, EditKind::Vertex)?;
    let h = apply_edits(&g, &out.edit)?;
    println!(
        "exactly {target}: base editor left degeneracy {}, {} by-one stages, final {} after {} deletions",
        out.degeneracy_after_base,
        out.by_one_stages.len(),
        degeneracy(&h).0,
        out.edit.len()
    );
    Ok(())
}
