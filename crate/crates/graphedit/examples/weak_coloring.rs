//! Weak colouring numbers: exact values, and LP-based editing towards a
//! target with a bicriteria guarantee.
//!
//! `cargo run --example weak_coloring`

use graphedit::graph::{apply_edits, degeneracy};
use graphedit::instances::gnp;
use graphedit::oracles::OracleBudget;
use graphedit::wcol::{exact_wcol, wc_edit, wcol_score};
use graphedit::{EditKind, Weight};

fn main() -> graphedit::Result<()> {
    let budget = OracleBudget::default();
    let g = gnp(8, 0.5, 21)?;
    let (r, l) = degeneracy(&g);
    println!("degeneracy {r}; wcol_1 = {}", exact_wcol(&g, 1, &budget)?);
    for c in 1..=3 {
        println!(
            "c = {c}: degeneracy ordering scores {}, exact wcol_{c} = {}",
            wcol_score(&g, &l.reversed(), c).score,
            exact_wcol(&g, c, &budget)?
        );
    }

    let (c, k) = (2, 2);
    for kind in [EditKind::Vertex, EditKind::Edge] {
        let out = wc_edit(&g, c, k, Weight::new(1, 10), kind)?;
        let h = apply_edits(&g, &out.edit)?;
        println!(
            "{kind:?}: LP {:.3}, deleted {}, wcol_2 of the result {} (≤ {:.2}), β-feasible: {}",
            out.lp_objective,
            out.edit.len(),
            exact_wcol(&h, c, &budget)?,
            out.width_bound,
            out.feasibility.passed()
        );
    }
    Ok(())
}
