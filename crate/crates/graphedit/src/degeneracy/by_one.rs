//! Greedy reduction of the degeneracy by one, and its compositions.
//!
//! In a min-degree ordering of an r-degenerate graph, a vertex with forward
//! degree exactly r is *marked*, as are its forward edges. Each round applies
//! the edit that resolves the most marked edges, where an edge is resolved if
//! it is deleted or is no longer marked in the next ordering. The next
//! ordering breaks peeling ties by rank in the current one; that is what
//! keeps unmarked edges unmarked.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{
    apply_edits, degeneracy, degeneracy_with_tiebreak, edge, Edge, EditKind, EditSet, Graph,
    VertexOrdering, Weight,
};

use super::local_ratio::{local_ratio_vertex_edit, make_minimal};
use super::lp_round::{lp_edge_edit, lp_vertex_edit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkState {
    pub ordering: VertexOrdering,
    pub r: usize,
    pub marked_vertices: BTreeSet<usize>,
    pub marked_edges: BTreeSet<Edge>,
}

/// Marks under ordering `l`: vertices of forward degree exactly `r` and
/// their forward edges.
pub fn marked_edges(g: &Graph, l: &VertexOrdering, r: usize) -> MarkState {
    let mut marked_vertices = BTreeSet::new();
    let mut marked = BTreeSet::new();
    for &v in l.as_slice() {
        if l.forward_degree(g, v) == r {
            marked_vertices.insert(v);
            let p = l.position(v).unwrap();
            for &w in g.neighbors(v) {
                if l.position(w).is_some_and(|q| q > p) {
                    marked.insert(edge(v, w));
                }
            }
        }
    }
    MarkState {
        ordering: l.clone(),
        r,
        marked_vertices,
        marked_edges: marked,
    }
}

/// A single edit (vertex or edge), ordered by id.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Element {
    Vertex(usize),
    Edge(Edge),
}

#[derive(Clone, Debug)]
pub struct ByOneOutcome {
    pub edit: EditSet,
    /// Degeneracy before the reduction.
    pub r: usize,
    /// Marked edges in the first ordering.
    pub m0: usize,
    /// Marked-edge counts per round (the last is 0).
    pub marked_per_round: Vec<usize>,
    /// Edges that were unmarked in some round and marked in a later one.
    pub monotonicity_violations: usize,
}

impl ByOneOutcome {
    /// The size guarantee `OPT·ln(m0) + 1`.
    pub fn size_bound(&self, opt: usize) -> f64 {
        opt as f64 * (self.m0.max(1) as f64).ln() + 1.0
    }
}

fn remove(h: &mut Graph, e: Element) {
    match e {
        Element::Vertex(v) => {
            h.remove_vertex(v);
        }
        Element::Edge((u, v)) => {
            h.remove_edge(u, v);
        }
    }
}

/// Reduce the degeneracy from r to exactly r − 1.
pub fn degen_reduce_by_one(g: &Graph, mode: EditKind) -> Result<ByOneOutcome> {
    let (r, l0) = degeneracy(g);
    if r == 0 {
        return Err(Error::Param(
            "graph is already edgeless (degeneracy 0); nothing to reduce".into(),
        ));
    }
    let mut h = g.clone();
    let mut l = l0;
    let mut chosen: Vec<Element> = Vec::new();
    let mut ever_unmarked: BTreeSet<Edge> = BTreeSet::new();
    let mut violations = 0;
    let mut per_round = Vec::new();
    loop {
        let ms = marked_edges(&h, &l, r);
        per_round.push(ms.marked_edges.len());
        violations += ms.marked_edges.intersection(&ever_unmarked).count();
        ever_unmarked.extend(h.edges().filter(|e| !ms.marked_edges.contains(e)));
        if ms.marked_vertices.is_empty() {
            break;
        }
        assert!(
            !ms.marked_edges.is_empty(),
            "a marked vertex has r ≥ 1 forward edges"
        );
        let candidates: Vec<Element> = match mode {
            EditKind::Vertex => h.vertices().map(Element::Vertex).collect(),
            EditKind::Edge => h.edges().map(Element::Edge).collect(),
        };
        let mut best: Option<(usize, Element, VertexOrdering)> = None;
        for cand in candidates {
            let mut h2 = h.clone();
            remove(&mut h2, cand);
            let (_, l2) = degeneracy_with_tiebreak(&h2, Some(&l));
            let after = marked_edges(&h2, &l2, r);
            let resolved = ms
                .marked_edges
                .iter()
                .filter(|&&(a, b)| match cand {
                    Element::Vertex(v) => a == v || b == v || !after.marked_edges.contains(&(a, b)),
                    Element::Edge(e) => e == (a, b) || !after.marked_edges.contains(&(a, b)),
                })
                .count();
            if best.as_ref().is_none_or(|(b, _, _)| resolved > *b) {
                best = Some((resolved, cand, l2));
            }
        }
        let (_, cand, l2) = best.expect("graph with a marked vertex has candidates");
        remove(&mut h, cand);
        chosen.push(cand);
        l = l2;
    }
    let edit = match mode {
        EditKind::Vertex => EditSet::from_vertices(
            g,
            chosen.iter().map(|e| match e {
                Element::Vertex(v) => *v,
                Element::Edge(_) => unreachable!(),
            }),
        ),
        EditKind::Edge => EditSet::from_edges(
            g,
            chosen.iter().map(|e| match e {
                Element::Edge(uv) => *uv,
                Element::Vertex(_) => unreachable!(),
            }),
        ),
    };
    Ok(ByOneOutcome {
        edit,
        r,
        m0: per_round[0],
        marked_per_round: per_round,
        monotonicity_violations: violations,
    })
}

/// Reduce the degeneracy by exactly `d` through `d` by-one stages.
pub fn degen_reduce_by_d(
    g: &Graph,
    d: usize,
    mode: EditKind,
) -> Result<(EditSet, Vec<ByOneOutcome>)> {
    let r = degeneracy(g).0;
    if d > r {
        return Err(Error::Param(format!("cannot reduce degeneracy {r} by {d}")));
    }
    let mut h = g.clone();
    let mut total = EditSet::empty(mode);
    let mut stages = Vec::new();
    for i in 0..d {
        let out = degen_reduce_by_one(&h, mode)
            .map_err(|e| e.in_stage(STAGE_NAMES[i.min(STAGE_NAMES.len() - 1)]))?;
        h = apply_edits(&h, &out.edit)?;
        total = total.union(&out.edit, g);
        stages.push(out);
    }
    Ok((total, stages))
}

const STAGE_NAMES: [&str; 4] = [
    "by-one stage 1",
    "by-one stage 2",
    "by-one stage 3",
    "by-one stage ≥4",
];

/// The bicriteria editor run before the by-one phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaseEditor {
    LocalRatio { beta: Weight },
    LpVertex { eps: Weight },
    LpEdge { eps: Weight },
}

impl BaseEditor {
    pub fn kind(&self) -> EditKind {
        match self {
            BaseEditor::LocalRatio { .. } | BaseEditor::LpVertex { .. } => EditKind::Vertex,
            BaseEditor::LpEdge { .. } => EditKind::Edge,
        }
    }

    pub fn run(&self, g: &Graph, r: usize) -> Result<EditSet> {
        match *self {
            BaseEditor::LocalRatio { beta } => local_ratio_vertex_edit(g, r, beta),
            BaseEditor::LpVertex { eps } => Ok(lp_vertex_edit(g, r, eps)?.edit),
            BaseEditor::LpEdge { eps } => Ok(lp_edge_edit(g, r, eps)?.edit),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReduceToOutcome {
    pub edit: EditSet,
    pub base_edit: EditSet,
    pub degeneracy_after_base: usize,
    pub by_one_stages: Vec<ByOneOutcome>,
    /// Elements dropped because the base editor overshot below r.
    pub pruned: usize,
}

/// Reduce the degeneracy to exactly `r` (when the input has degeneracy ≥ r):
/// run the base editor, prune it back to a minimal set if it overshot, then
/// walk down by one until the target is met.
pub fn degen_reduce_to_r(
    g: &Graph,
    r: usize,
    base: BaseEditor,
    mode: EditKind,
) -> Result<ReduceToOutcome> {
    if base.kind() != mode {
        return Err(Error::Param(format!(
            "base editor deletes {:?}s but mode is {:?}",
            base.kind(),
            mode
        )));
    }
    if r == 0 {
        return Err(Error::Param("target degeneracy must be ≥ 1".into()));
    }
    let base_edit = base.run(g, r).map_err(|e| e.in_stage("base editor"))?;
    let mut edit = base_edit.clone();
    let mut h = apply_edits(g, &edit)?;
    let mut pruned = 0;
    if degeneracy(&h).0 < r && !edit.is_empty() {
        let before = edit.len();
        edit = prune_to(g, &edit, r);
        pruned = before - edit.len();
        h = apply_edits(g, &edit)?;
    }
    let after_base = degeneracy(&h).0;
    let mut stages = Vec::new();
    while degeneracy(&h).0 > r {
        let out = degen_reduce_by_one(&h, mode).map_err(|e| e.in_stage("by-one phase"))?;
        h = apply_edits(&h, &out.edit)?;
        edit = edit.union(&out.edit, g);
        stages.push(out);
    }
    Ok(ReduceToOutcome {
        edit,
        base_edit,
        degeneracy_after_base: after_base,
        by_one_stages: stages,
        pruned,
    })
}

/// Drop edits (ascending id) while the degeneracy stays ≤ r. Since one
/// element changes the degeneracy by at most one, a minimal nonempty
/// result has degeneracy exactly r.
fn prune_to(g: &Graph, x: &EditSet, r: usize) -> EditSet {
    match x.kind {
        EditKind::Vertex => EditSet::from_vertices(g, make_minimal(g, x.vertices.clone(), r)),
        EditKind::Edge => {
            let mut keep = x.edges.clone();
            for e in x.edges.iter() {
                keep.remove(e);
                let h = apply_edits(g, &EditSet::from_edges(g, keep.iter().copied()))
                    .expect("subset of a valid edit");
                if degeneracy(&h).0 > r {
                    keep.insert(*e);
                }
            }
            EditSet::from_edges(g, keep)
        }
    }
}
