//! The exhaustive oracles: treewidth, clique number, set cover and minimum
//! edits, all under an explicit budget.
//!
//! `cargo run --example oracles`

use std::time::Duration;

use graphedit::instances::gnp;
use graphedit::oracles::{
    exact_clique_number, exact_min_edit, exact_treewidth, EditPredicate, OracleBudget,
};
use graphedit::{EditKind, Error, Graph};

fn main() -> graphedit::Result<()> {
    let budget = OracleBudget::default();
    let g = gnp(14, 0.4, 1)?;
    println!(
        "treewidth {}, clique number {}",
        exact_treewidth(&g, &budget)?,
        exact_clique_number(&g, &budget)?
    );

    for (name, pred) in [
        ("degeneracy ≤ 2", EditPredicate::DegeneracyAtMost(2)),
        ("max degree ≤ 3", EditPredicate::MaxDegreeAtMost(3)),
        ("treewidth ≤ 2", EditPredicate::TreewidthAtMost(2)),
        ("star forest", EditPredicate::StarForest),
    ] {
        let x = exact_min_edit(&g, pred, EditKind::Vertex, &budget)?;
        println!("{name:<15} needs {} vertex deletions", x.len());
    }

    // Budgets fail loudly rather than running forever.
    let tight = OracleBudget {
        max_edges: 20,
        wall_clock: Duration::from_secs(1),
        ..budget
    };
    match exact_min_edit(
        &Graph::grid(5, 5),
        EditPredicate::StarForest,
        EditKind::Edge,
        &tight,
    ) {
        Err(e @ Error::Budget(_)) => println!("as expected: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
