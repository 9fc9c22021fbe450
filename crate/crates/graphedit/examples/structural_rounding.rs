//! Edit to a structured class, solve there, lift back: every registered
//! problem through one editor, with exact optima for comparison.
//!
//! `cargo run --example structural_rounding`

use graphedit::instances::gnp;
use graphedit::rounding::{
    registry, structural_round, AnnotatedInstance, EditType, Editor, PipelineConfig, SolverKind,
};
use graphedit::Weight;

fn main() -> graphedit::Result<()> {
    let g = gnp(10, 0.4, 4)?;
    let inst = AnnotatedInstance::plain(&g);
    let cfg = PipelineConfig::default();
    let vertex = Editor::TreewidthVertex {
        w: 1,
        c1: Weight::new(1, 32),
    };
    let edge = Editor::BoundedDegreeEdge { d: 2 };

    println!(
        "{:<6} {:>4} {:>6} {:>6} {:>5} {:>8}",
        "", "|X|", "edited", "lifted", "OPT", "ratio"
    );
    for row in registry() {
        let editor = if row.edit == EditType::Edge {
            &edge
        } else {
            &vertex
        };
        let rep = structural_round(&inst, editor, row.problem, SolverKind::TreeDp, &cfg)?;
        println!(
            "{:<6} {:>4} {:>6} {:>6} {:>5} {:>8}",
            row.problem.to_string(),
            rep.edit.len(),
            rep.edited_cost,
            rep.lifted_cost,
            rep.opt_original.map_or("-".into(), |o| o.to_string()),
            rep.evaluation
                .achieved
                .map_or("-".into(), |a| format!("{a:.3}"))
        );
    }
    Ok(())
}
