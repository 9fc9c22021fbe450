//! Lifting a solution of the edited instance back to the original graph.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{apply_edits, EditKind, EditSet};

use super::problems::{
    check_feasible, closed_neighborhood, spec, AnnotatedInstance, EditType, Problem, Solution,
};

/// The edit type a problem sees for a given deletion kind: vertex deletion
/// for the annotated problem is the starred variant.
pub fn edit_type_for(problem: Problem, kind: EditKind) -> EditType {
    match (problem, kind) {
        (Problem::ADS, EditKind::Vertex) => EditType::VertexStar,
        (_, EditKind::Vertex) => EditType::Vertex,
        (_, EditKind::Edge) => EditType::Edge,
    }
}

/// The instance the solver sees after deleting `x`: the edited graph and,
/// for vertex* deletion, the shrunken target set `B ∖ N_ℓ[X]`.
pub fn edited_instance(
    problem: Problem,
    inst: &AnnotatedInstance,
    x: &EditSet,
) -> Result<AnnotatedInstance> {
    let graph = apply_edits(&inst.graph, x)?;
    let b: BTreeSet<usize> = match (problem, x.kind) {
        (Problem::ADS, EditKind::Vertex) => {
            let ball = closed_neighborhood(&inst.graph, &x.vertices, inst.radius);
            inst.b.difference(&ball).copied().collect()
        }
        _ => inst
            .b
            .iter()
            .copied()
            .filter(|&v| graph.is_live(v))
            .collect(),
    };
    Ok(AnnotatedInstance {
        graph,
        b,
        radius: inst.radius,
    })
}

/// Turn a feasible solution `s_prime` of the edited instance into a feasible
/// solution of `inst`. Rejects infeasible input with the violated
/// constraint; the output is re-checked against the original instance.
pub fn lift(
    problem: Problem,
    s_prime: &Solution,
    x: &EditSet,
    inst: &AnnotatedInstance,
) -> Result<Solution> {
    let ty = edit_type_for(problem, x.kind);
    spec(problem, ty)?;
    let edited = edited_instance(problem, inst, x)?;
    check_feasible(problem, &edited, s_prime)?;
    let g = &inst.graph;
    let s = match (problem, x.kind) {
        (Problem::IS, EditKind::Vertex)
        | (Problem::DS, EditKind::Edge)
        | (Problem::MaxCut, EditKind::Edge) => s_prime.clone(),
        (Problem::VC | Problem::FVS | Problem::ADS, EditKind::Vertex) => {
            Solution::Vertices(s_prime.vertices()?.union(&x.vertices).copied().collect())
        }
        (Problem::IS, EditKind::Edge) => {
            let mut s = s_prime.vertices()?.clone();
            for &(u, v) in &x.edges {
                if s.contains(&u) && s.contains(&v) {
                    s.remove(&u.max(v));
                }
            }
            Solution::Vertices(s)
        }
        (Problem::EDS, EditKind::Edge) => {
            Solution::Edges(s_prime.edges()?.union(&x.edges).copied().collect())
        }
        (Problem::MMM, EditKind::Vertex) => {
            let mut m = s_prime.edges()?.clone();
            let mut matched: BTreeSet<usize> = m.iter().flat_map(|&(u, v)| [u, v]).collect();
            // Only edges touching X can be unmatched-to-unmatched now.
            for (u, v) in g.edges() {
                if (x.vertices.contains(&u) || x.vertices.contains(&v))
                    && !matched.contains(&u)
                    && !matched.contains(&v)
                {
                    m.insert((u, v));
                    matched.extend([u, v]);
                }
            }
            Solution::Edges(m)
        }
        (Problem::CRN, EditKind::Vertex) => {
            let mut col = s_prime.coloring()?.clone();
            let mut next = col.values().max().map_or(0, |&c| c + 1);
            for &v in &x.vertices {
                col.insert(v, next);
                next += 1;
            }
            Solution::Coloring(col)
        }
        (p, k) => {
            return Err(Error::Param(format!(
                "no lift for {p} under {k:?} deletion"
            )))
        }
    };
    check_feasible(problem, inst, &s)
        .map_err(|e| Error::Internal(format!("lifted solution is infeasible: {e}")))?;
    Ok(s)
}
