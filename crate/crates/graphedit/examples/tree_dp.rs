//! Exact dynamic programming over a tree decomposition, against brute force.
//!
//! `cargo run --example tree_dp`

use graphedit::instances::{gen_planted, PlantedClass, PlantedParams};
use graphedit::oracles::OracleBudget;
use graphedit::rounding::{
    cost, exact_opt, solve, AnnotatedInstance, Problem, SolverConfig, SolverKind,
};
use graphedit::EditKind;

fn main() -> graphedit::Result<()> {
    let g = gen_planted(&PlantedParams {
        n: 14,
        class: PlantedClass::KTree { k: 3 },
        noise: 0,
        noise_kind: EditKind::Edge,
        seed: 9,
    })?
    .graph;
    let budget = OracleBudget::default();
    let targets = g.vertices().filter(|v| v % 2 == 0).collect();
    for (problem, inst) in [
        (Problem::IS, AnnotatedInstance::plain(&g)),
        (Problem::VC, AnnotatedInstance::plain(&g)),
        (Problem::DS, AnnotatedInstance::plain(&g)),
        (Problem::ADS, AnnotatedInstance::new(&g, targets, 1)?),
    ] {
        let s = solve(problem, &inst, SolverKind::TreeDp, &SolverConfig::default())?;
        println!(
            "{problem}: {} via {}, brute force {}",
            cost(problem, &g, &s.solution),
            s.method,
            exact_opt(problem, &inst, &budget)?
        );
    }
    Ok(())
}
