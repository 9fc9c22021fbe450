//! Delete separators until every piece has small treewidth, then turn the
//! decomposition into a path decomposition.
//!
//! `cargo run --example treewidth_edit`

use graphedit::graph::apply_edits;
use graphedit::instances::{gen_planted, PlantedClass, PlantedParams};
use graphedit::oracles::{exact_treewidth, OracleBudget};
use graphedit::width::{pathwidth_node_edit, treewidth_node_edit, WidthEditConfig};
use graphedit::{EditKind, Weight};

fn main() -> graphedit::Result<()> {
    let planted = gen_planted(&PlantedParams {
        n: 18,
        class: PlantedClass::KTree { k: 3 },
        noise: 4,
        noise_kind: EditKind::Edge,
        seed: 2,
    })?;
    let g = planted.graph;
    let budget = OracleBudget::default();
    println!(
        "planted 3-tree plus 4 noise edges: treewidth {}",
        exact_treewidth(&g, &budget)?
    );

    let cfg = WidthEditConfig::default();
    let c1 = Weight::new(1, 16);
    for w in [1, 2] {
        let out = treewidth_node_edit(&g, w, c1, &cfg)?;
        let h = apply_edits(&g, &out.edit)?;
        out.decomposition.validate(&h)?;
        println!(
            "w = {w}: deleted {} vertices in {} separators; width {} (threshold {:.1}), exact {}",
            out.edit.len(),
            out.separators.len(),
            out.decomposition.width(),
            out.threshold,
            exact_treewidth(&h, &budget)?
        );
    }

    let out = pathwidth_node_edit(&g, 2, c1, &cfg)?;
    println!(
        "path decomposition of width {} (bound {}) from a tree of height {}",
        out.path.width(),
        out.width_bound,
        out.tree.height()
    );
    Ok(())
}
