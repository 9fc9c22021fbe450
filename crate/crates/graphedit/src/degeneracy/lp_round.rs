//! LP relaxations of degeneracy editing and their threshold rounding.
//!
//! Both relaxations orient every surviving edge (`x_{u→v} + x_{v→u} ≥ 1 −
//! deletion`) and cap out-degrees at `r`. Rounding first deletes elements
//! whose deletion variable is at least ε, then keeps an arc when its
//! fractional value clears half of what the orientation constraint still
//! guarantees.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::{Edge, EditSet, Graph, Orientation, Weight};
use crate::lp::{solve_lp, Direction, LinearProgram, LpStatus, Relation, DEFAULT_TOL};

/// Slack used when comparing LP values against rounding thresholds.
pub const ROUND_TOL: f64 = 1e-9;

pub fn to_f64(w: Weight) -> f64 {
    w.numer().to_f64().unwrap() / w.denom().to_f64().unwrap()
}

/// A solved relaxation: arc values, deletion values and the optimum.
#[derive(Clone, Debug)]
pub struct FractionalSolution {
    pub arcs: BTreeMap<(usize, usize), f64>,
    /// Deletion variable per vertex (vertex LP) — empty for the edge LP.
    pub y: BTreeMap<usize, f64>,
    /// Deletion variable per edge (edge LP) — empty for the vertex LP.
    pub z: BTreeMap<Edge, f64>,
    pub objective: f64,
}

#[derive(Clone, Debug)]
pub struct LpEditOutcome {
    pub edit: EditSet,
    pub orientation: Orientation,
    pub fractional: FractionalSolution,
    /// The out-degree cap the rounding guarantees.
    pub out_degree_bound: usize,
}

struct Model {
    lp: LinearProgram,
    arc: BTreeMap<(usize, usize), usize>,
    del_v: BTreeMap<usize, usize>,
    del_e: BTreeMap<Edge, usize>,
}

fn build(g: &Graph, r: usize, vertex_mode: bool) -> Model {
    let mut lp = LinearProgram::new();
    let mut arc = BTreeMap::new();
    let mut del_v = BTreeMap::new();
    let mut del_e = BTreeMap::new();
    for (u, v) in g.edges() {
        arc.insert((u, v), lp.add_var(format!("x_{u}_{v}"), 0.0, 1.0));
        arc.insert((v, u), lp.add_var(format!("x_{v}_{u}"), 0.0, 1.0));
    }
    let mut obj = Vec::new();
    if vertex_mode {
        for v in g.vertices() {
            let j = lp.add_var(format!("y_{v}"), 0.0, 1.0);
            del_v.insert(v, j);
            obj.push((j, to_f64(g.vertex_weight(v))));
        }
    } else {
        for e in g.edges() {
            let j = lp.add_var(format!("z_{}_{}", e.0, e.1), 0.0, 1.0);
            del_e.insert(e, j);
            obj.push((j, to_f64(g.edge_weight(e).unwrap())));
        }
    }
    for (u, v) in g.edges() {
        let mut row = vec![(arc[&(u, v)], 1.0), (arc[&(v, u)], 1.0)];
        if vertex_mode {
            row.push((del_v[&u], 1.0));
            row.push((del_v[&v], 1.0));
        } else {
            row.push((del_e[&(u, v)], 1.0));
        }
        lp.add_constraint(row, Relation::Ge, 1.0);
    }
    for v in g.vertices() {
        let row: Vec<(usize, f64)> = g
            .neighbors(v)
            .iter()
            .map(|&u| (arc[&(v, u)], 1.0))
            .collect();
        if !row.is_empty() {
            lp.add_constraint(row, Relation::Le, r as f64);
        }
    }
    lp.set_objective(Direction::Minimize, obj);
    Model {
        lp,
        arc,
        del_v,
        del_e,
    }
}

/// The vertex-deletion relaxation as a model (for dumps and external checks).
pub fn vertex_lp(g: &Graph, r: usize) -> LinearProgram {
    build(g, r, true).lp
}

/// The edge-deletion relaxation as a model.
pub fn edge_lp(g: &Graph, r: usize) -> LinearProgram {
    build(g, r, false).lp
}

fn solve(g: &Graph, r: usize, vertex_mode: bool) -> Result<FractionalSolution> {
    let m = build(g, r, vertex_mode);
    let sol = solve_lp(&m.lp, DEFAULT_TOL)?;
    match sol.status {
        LpStatus::Optimal => {}
        // Deleting everything is always feasible and costs are non-negative.
        LpStatus::Infeasible => {
            return Err(Error::Internal("degeneracy LP reported infeasible".into()))
        }
        LpStatus::Unbounded => {
            return Err(Error::Internal("degeneracy LP reported unbounded".into()))
        }
    }
    Ok(FractionalSolution {
        arcs: m.arc.iter().map(|(&a, &j)| (a, sol.values[j])).collect(),
        y: m.del_v.iter().map(|(&v, &j)| (v, sol.values[j])).collect(),
        z: m.del_e.iter().map(|(&e, &j)| (e, sol.values[j])).collect(),
        objective: sol.objective,
    })
}

pub fn solve_vertex_lp(g: &Graph, r: usize) -> Result<FractionalSolution> {
    solve(g, r, true)
}

pub fn solve_edge_lp(g: &Graph, r: usize) -> Result<FractionalSolution> {
    solve(g, r, false)
}

/// Orient surviving edges: `u→v` iff `x_{u→v} ≥ threshold`; when both
/// directions qualify keep `min→max`.
fn orient(
    g: &Graph,
    survives: impl Fn(Edge) -> bool,
    arcs: &BTreeMap<(usize, usize), f64>,
    threshold: f64,
) -> Result<Orientation> {
    let mut o = Orientation::default();
    for (u, v) in g.edges().filter(|&e| survives(e)) {
        let fwd = arcs[&(u, v)] >= threshold - ROUND_TOL;
        let back = arcs[&(v, u)] >= threshold - ROUND_TOL;
        match (fwd, back) {
            (true, _) => o.arcs.insert((u, v)),
            (false, true) => o.arcs.insert((v, u)),
            (false, false) => {
                return Err(Error::Numerical(format!(
                    "edge ({u},{v}) survived rounding with no direction"
                )));
            }
        };
    }
    Ok(o)
}

fn check_eps(eps: Weight, upper: Weight) -> Result<f64> {
    if eps <= Weight::from_integer(0) || eps >= upper {
        return Err(Error::Param(format!(
            "ε must lie in (0, {upper}), got {eps}"
        )));
    }
    Ok(to_f64(eps))
}

/// Round a vertex-LP solution: delete `v` iff `y_v ≥ ε`, then orient the
/// surviving edges at threshold `(1 − 2ε)/2`.
pub fn round_vertex_solution(
    g: &Graph,
    r: usize,
    eps: Weight,
    frac: FractionalSolution,
) -> Result<LpEditOutcome> {
    let e = check_eps(eps, Weight::new(1, 2))?;
    let deleted: Vec<usize> = frac
        .y
        .iter()
        .filter(|&(_, &y)| y >= e - ROUND_TOL)
        .map(|(&v, _)| v)
        .collect();
    let edit = EditSet::from_vertices(g, deleted);
    // Arcs touching a deleted vertex are treated as zero.
    let orientation = orient(
        g,
        |(u, v)| !edit.vertices.contains(&u) && !edit.vertices.contains(&v),
        &frac.arcs,
        (1.0 - 2.0 * e) / 2.0,
    )?;
    let bound = (2.0 * r as f64 / (1.0 - 2.0 * e) + ROUND_TOL).floor() as usize;
    Ok(LpEditOutcome {
        edit,
        orientation,
        fractional: frac,
        out_degree_bound: bound,
    })
}

/// Round an edge-LP solution: delete `uv` iff `z_uv ≥ ε`, then orient the
/// surviving edges at threshold `(1 − ε)/2`.
pub fn round_edge_solution(
    g: &Graph,
    r: usize,
    eps: Weight,
    frac: FractionalSolution,
) -> Result<LpEditOutcome> {
    let e = check_eps(eps, Weight::from_integer(1))?;
    let deleted: Vec<Edge> = frac
        .z
        .iter()
        .filter(|&(_, &z)| z >= e - ROUND_TOL)
        .map(|(&uv, _)| uv)
        .collect();
    let edit = EditSet::from_edges(g, deleted);
    let orientation = orient(
        g,
        |uv| !edit.edges.contains(&uv),
        &frac.arcs,
        (1.0 - e) / 2.0,
    )?;
    let bound = (2.0 * r as f64 / (1.0 - e) + ROUND_TOL).floor() as usize;
    Ok(LpEditOutcome {
        edit,
        orientation,
        fractional: frac,
        out_degree_bound: bound,
    })
}

/// Vertex deletion via the LP: the survivors carry an orientation with
/// out-degree ≤ 2r/(1−2ε), so their degeneracy is at most 4r/(1−2ε).
pub fn lp_vertex_edit(g: &Graph, r: usize, eps: Weight) -> Result<LpEditOutcome> {
    check_eps(eps, Weight::new(1, 2))?;
    let frac = solve_vertex_lp(g, r).map_err(|e| e.in_stage("vertex LP"))?;
    round_vertex_solution(g, r, eps, frac)
}

/// Edge deletion via the LP: out-degree ≤ 2r/(1−ε), degeneracy ≤ 4r/(1−ε).
pub fn lp_edge_edit(g: &Graph, r: usize, eps: Weight) -> Result<LpEditOutcome> {
    check_eps(eps, Weight::from_integer(1))?;
    let frac = solve_edge_lp(g, r).map_err(|e| e.in_stage("edge LP"))?;
    round_edge_solution(g, r, eps, frac)
}
