//! LP relaxation for weak-coloring editing and its threshold rounding.
//!
//! Variables: `x_uv` (ordered pairs, meaning `v` precedes `u`), `y_Tv` (v is
//! the earliest vertex of path T), `z` (deletion of a vertex or edge) and
//! `P_uv` (v is weakly reachable from u). Paths are simple with at most `c`
//! edges; the one-vertex paths put every vertex in its own reach set.
//!
//! Rounding: delete what has `z > ε`; keep `x`, `y` at or above `1/c`; set
//! `P̂_uv` when some surviving u–v path has `ŷ_Tv = 1`. A path of `c + 1`
//! vertices only guarantees some `y ≥ 1/(c+1)`, so paths left without a
//! rounded-up `y` get their largest one raised (together with the `x` values
//! it depends on).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::degeneracy::by_one::Element;
use crate::degeneracy::lp_round::{to_f64, ROUND_TOL};
use crate::error::{Error, Result};
use crate::graph::{edge, EditKind, EditSet, Graph, VertexOrdering, Weight};
use crate::lp::{solve_lp, Direction, LinearProgram, LpStatus, Relation, DEFAULT_TOL};

use super::score::wcol_score;

/// Largest radius accepted by the LP (the path catalog grows as n^c).
pub const MAX_RADIUS: usize = 4;

/// Simple paths with at most `c` edges, each listed once with its first
/// vertex smaller than its last; one-vertex paths included.
pub fn path_catalog(g: &Graph, c: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, c: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == 1 || path[0] < last {
            out.push(path.clone());
        }
        if path.len() > c {
            return;
        }
        for &w in g.neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                extend(g, c, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in g.vertices() {
        extend(g, c, &mut vec![s], &mut out);
    }
    out.sort();
    out
}

/// Elements a path uses: its vertices (vertex mode) or its edges.
fn path_elements(path: &[usize], mode: EditKind) -> Vec<Element> {
    match mode {
        EditKind::Vertex => path.iter().map(|&v| Element::Vertex(v)).collect(),
        EditKind::Edge => path
            .windows(2)
            .map(|p| Element::Edge(edge(p[0], p[1])))
            .collect(),
    }
}

/// The relaxation with its variable index maps.
#[derive(Clone, Debug)]
pub struct WcLp {
    pub lp: LinearProgram,
    pub mode: EditKind,
    pub c: usize,
    pub k: usize,
    pub paths: Vec<Vec<usize>>,
    pub x: BTreeMap<(usize, usize), usize>,
    pub y: Vec<BTreeMap<usize, usize>>,
    pub z: BTreeMap<Element, usize>,
    pub p: BTreeMap<(usize, usize), usize>,
}

impl WcLp {
    /// The `≤ 1` bounds on `x`, `y` and `z` are left implicit: clipping any
    /// feasible point to 1 keeps every constraint satisfied and never raises
    /// the objective, and [`solve_wc_lp`] clips. Leaving them out keeps the
    /// tableau a few hundred rows smaller.
    pub fn build(g: &Graph, c: usize, k: usize, mode: EditKind) -> WcLp {
        let mut lp = LinearProgram::new();
        let vs: Vec<usize> = g.vertices().collect();
        let mut x = BTreeMap::new();
        for &u in &vs {
            for &v in &vs {
                if u != v {
                    x.insert((u, v), lp.add_var(format!("x_{u}_{v}"), 0.0, f64::INFINITY));
                }
            }
        }
        let mut z = BTreeMap::new();
        let mut obj = Vec::new();
        match mode {
            EditKind::Vertex => {
                for &v in &vs {
                    let j = lp.add_var(format!("z_{v}"), 0.0, f64::INFINITY);
                    z.insert(Element::Vertex(v), j);
                    obj.push((j, to_f64(g.vertex_weight(v))));
                }
            }
            EditKind::Edge => {
                for e in g.edges() {
                    let j = lp.add_var(format!("z_{}_{}", e.0, e.1), 0.0, f64::INFINITY);
                    z.insert(Element::Edge(e), j);
                    obj.push((j, to_f64(g.edge_weight(e).unwrap())));
                }
            }
        }
        lp.set_objective(Direction::Minimize, obj);

        // (1) one of u, v precedes the other.
        for &u in &vs {
            for &v in &vs {
                if u < v {
                    lp.add_constraint(
                        vec![(x[&(u, v)], 1.0), (x[&(v, u)], 1.0)],
                        Relation::Ge,
                        1.0,
                    );
                }
            }
        }
        // (2) transitivity: x_{v1 v3} ≤ x_{v1 v2} + x_{v2 v3}.
        for &a in &vs {
            for &b in &vs {
                for &m in &vs {
                    if a != b && m != a && m != b {
                        lp.add_constraint(
                            vec![(x[&(a, b)], 1.0), (x[&(a, m)], -1.0), (x[&(m, b)], -1.0)],
                            Relation::Le,
                            0.0,
                        );
                    }
                }
            }
        }
        let paths = path_catalog(g, c);
        let mut y = Vec::with_capacity(paths.len());
        let mut p: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (t, path) in paths.iter().enumerate() {
            let yt: BTreeMap<usize, usize> = path
                .iter()
                .map(|&v| (v, lp.add_var(format!("y_{t}_{v}"), 0.0, f64::INFINITY)))
                .collect();
            // (3) the earliest vertex of T precedes every other vertex of T.
            for &v in path {
                for &u in path {
                    if u != v {
                        lp.add_constraint(
                            vec![(yt[&v], 1.0), (x[&(u, v)], -1.0)],
                            Relation::Le,
                            0.0,
                        );
                    }
                }
            }
            // (4) some vertex of T is earliest.
            lp.add_constraint(yt.values().map(|&j| (j, 1.0)).collect(), Relation::Ge, 1.0);
            // (5) for both directions u → v of the path: P_uv ≥ y_Tv − Σ z.
            let (a, b) = (path[0], *path.last().unwrap());
            let dirs: Vec<(usize, usize)> = if a == b {
                vec![(a, a)]
            } else {
                vec![(a, b), (b, a)]
            };
            for (u, v) in dirs {
                let pj = *p
                    .entry((u, v))
                    .or_insert_with(|| lp.add_var(format!("P_{u}_{v}"), 0.0, f64::INFINITY));
                let mut row = vec![(pj, 1.0), (yt[&v], -1.0)];
                row.extend(path_elements(path, mode).iter().map(|e| (z[e], 1.0)));
                lp.add_constraint(row, Relation::Ge, 0.0);
            }
            y.push(yt);
        }
        // (6) Σ_v P_uv ≤ k.
        for &u in &vs {
            let row: Vec<(usize, f64)> = p
                .iter()
                .filter(|((a, _), _)| *a == u)
                .map(|(_, &j)| (j, 1.0))
                .collect();
            lp.add_constraint(row, Relation::Le, k as f64);
        }
        WcLp {
            lp,
            mode,
            c,
            k,
            paths,
            x,
            y,
            z,
            p,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WcFractional {
    pub x: BTreeMap<(usize, usize), f64>,
    pub y: Vec<BTreeMap<usize, f64>>,
    pub z: BTreeMap<Element, f64>,
    pub p: BTreeMap<(usize, usize), f64>,
    pub objective: f64,
}

pub fn solve_wc_lp(model: &WcLp) -> Result<WcFractional> {
    let sol = solve_lp(&model.lp, DEFAULT_TOL)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "weak-coloring LP reported {:?}",
            sol.status
        )));
    }
    let val = |j: &usize| sol.values[*j].min(1.0);
    Ok(WcFractional {
        x: model.x.iter().map(|(&k, j)| (k, val(j))).collect(),
        y: model
            .y
            .iter()
            .map(|yt| yt.iter().map(|(&v, j)| (v, val(j))).collect())
            .collect(),
        z: model.z.iter().map(|(&e, j)| (e, val(j))).collect(),
        p: model.p.iter().map(|(&k, j)| (k, val(j))).collect(),
        objective: sol.objective,
    })
}

/// The rounded tuple `(x̂, ŷ, ẑ, P̂)` as sets of the entries equal to 1.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct WcRounded {
    pub x: BTreeSet<(usize, usize)>,
    pub y: Vec<BTreeSet<usize>>,
    pub z: BTreeSet<Element>,
    pub p: BTreeSet<(usize, usize)>,
    /// Paths whose `ŷ` had to be raised because no `y_Tv` reached `1/c`.
    pub repaired_paths: usize,
}

/// The rounding rule for one fractional solution.
pub fn round_wc(model: &WcLp, frac: &WcFractional, eps: f64) -> WcRounded {
    let inv_c = 1.0 / model.c as f64;
    // Step 1: large z up.
    let z: BTreeSet<Element> = frac
        .z
        .iter()
        .filter(|&(_, &v)| v > eps + ROUND_TOL)
        .map(|(&e, _)| e)
        .collect();
    // Step 2: x and y at threshold 1/c.
    let mut x: BTreeSet<(usize, usize)> = frac
        .x
        .iter()
        .filter(|&(_, &v)| v >= inv_c - ROUND_TOL)
        .map(|(&k, _)| k)
        .collect();
    let mut y = Vec::with_capacity(frac.y.len());
    let mut repaired = 0;
    for (t, yt) in frac.y.iter().enumerate() {
        let mut up: BTreeSet<usize> = yt
            .iter()
            .filter(|&(_, &v)| v >= inv_c - ROUND_TOL)
            .map(|(&v, _)| v)
            .collect();
        if up.is_empty() {
            repaired += 1;
            let best = yt
                .iter()
                .fold((usize::MAX, f64::NEG_INFINITY), |b, (&v, &val)| {
                    if val > b.1 {
                        (v, val)
                    } else {
                        b
                    }
                })
                .0;
            up.insert(best);
            for &u in &model.paths[t] {
                if u != best {
                    x.insert((u, best));
                }
            }
        }
        y.push(up);
    }
    let mut p = BTreeSet::new();
    for (t, path) in model.paths.iter().enumerate() {
        if path_elements(path, model.mode)
            .iter()
            .any(|e| z.contains(e))
        {
            continue;
        }
        let (a, b) = (path[0], *path.last().unwrap());
        for (u, v) in [(a, b), (b, a)] {
            if y[t].contains(&v) {
                p.insert((u, v));
            }
        }
    }
    // Step 3 (small z down) is implicit: only the raised entries are kept.
    WcRounded {
        x,
        y,
        z,
        p,
        repaired_paths: repaired,
    }
}

/// Which LP families the rounded tuple satisfies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaFeasibility {
    pub beta: f64,
    pub pair_sum: bool,
    pub path_last: bool,
    pub path_sum: bool,
    pub hop: bool,
    /// `max_u Σ_v P̂_uv`.
    pub max_reach_sum: usize,
    /// `max_reach_sum ≤ β·k`.
    pub coloring: bool,
}

impl BetaFeasibility {
    pub fn passed(&self) -> bool {
        self.pair_sum && self.path_last && self.path_sum && self.hop && self.coloring
    }
}

pub fn check_beta_feasible(g: &Graph, model: &WcLp, r: &WcRounded, beta: f64) -> BetaFeasibility {
    let vs: Vec<usize> = g.vertices().collect();
    let pair_sum = vs.iter().all(|&u| {
        vs.iter()
            .all(|&v| u == v || r.x.contains(&(u, v)) || r.x.contains(&(v, u)))
    });
    let mut path_last = true;
    let mut path_sum = true;
    let mut hop = true;
    for (t, path) in model.paths.iter().enumerate() {
        path_sum &= !r.y[t].is_empty();
        for &v in &r.y[t] {
            path_last &= path.iter().all(|&u| u == v || r.x.contains(&(u, v)));
        }
        let cut = path_elements(path, model.mode)
            .iter()
            .any(|e| r.z.contains(e));
        let (a, b) = (path[0], *path.last().unwrap());
        for (u, v) in [(a, b), (b, a)] {
            hop &= cut || !r.y[t].contains(&v) || r.p.contains(&(u, v));
        }
    }
    let max_reach_sum = vs
        .iter()
        .map(|&u| r.p.iter().filter(|(a, _)| *a == u).count())
        .max()
        .unwrap_or(0);
    let coloring = max_reach_sum as f64 <= beta * model.k as f64 + 1e-9;
    BetaFeasibility {
        beta,
        pair_sum,
        path_last,
        path_sum,
        hop,
        max_reach_sum,
        coloring,
    }
}

/// Order vertices by how many vertices they follow in `x̂`, ids breaking ties.
pub fn extract_ordering(g: &Graph, r: &WcRounded) -> VertexOrdering {
    let mut vs: Vec<(usize, usize)> = g
        .vertices()
        .map(|v| (r.x.iter().filter(|(a, _)| *a == v).count(), v))
        .collect();
    vs.sort();
    VertexOrdering::new(vs.into_iter().map(|(_, v)| v).collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WcEditOutcome {
    pub edit: EditSet,
    pub lp_objective: f64,
    pub rounded: WcRounded,
    pub beta: f64,
    /// `k·β`, the promised bound on wcol_c of the edited graph.
    pub width_bound: f64,
    /// Ordering of the edited graph derived from `x̂`, and its score.
    pub ordering: VertexOrdering,
    pub ordering_score: usize,
    pub feasibility: BetaFeasibility,
}

/// `β = 1/(1/c − c·ε)`.
pub fn wc_beta(c: usize, eps: f64) -> f64 {
    1.0 / (1.0 / c as f64 - c as f64 * eps)
}

/// Bicriteria weak-coloring editing: cost ≤ OPT/ε and
/// `wcol_c(g − X) ≤ k/(1/c − c·ε)`.
pub fn wc_edit(
    g: &Graph,
    c: usize,
    k: usize,
    eps: Weight,
    mode: EditKind,
) -> Result<WcEditOutcome> {
    if !(1..=MAX_RADIUS).contains(&c) {
        return Err(Error::Param(format!(
            "radius c must lie in 1..={MAX_RADIUS}, got {c}"
        )));
    }
    if k < 1 {
        return Err(Error::Param("target k must be ≥ 1".into()));
    }
    let c_w = Weight::from_integer(c as i64);
    if eps <= Weight::from_integer(0) || c_w * c_w * eps >= Weight::from_integer(1) {
        return Err(Error::Param(format!(
            "need 0 < ε and c·ε < 1/c; got c = {c}, ε = {eps}"
        )));
    }
    let e = to_f64(eps);
    let model = WcLp::build(g, c, k, mode);
    let frac = solve_wc_lp(&model).map_err(|er| er.in_stage("weak-coloring LP"))?;
    let rounded = round_wc(&model, &frac, e);
    let beta = wc_beta(c, e);
    let feasibility = check_beta_feasible(g, &model, &rounded, beta);
    let edit = match mode {
        EditKind::Vertex => EditSet::from_vertices(
            g,
            rounded.z.iter().filter_map(|el| {
                if let Element::Vertex(v) = el {
                    Some(*v)
                } else {
                    None
                }
            }),
        ),
        EditKind::Edge => EditSet::from_edges(
            g,
            rounded.z.iter().filter_map(|el| {
                if let Element::Edge(uv) = el {
                    Some(*uv)
                } else {
                    None
                }
            }),
        ),
    };
    let h = crate::graph::apply_edits(g, &edit)?;
    let full = extract_ordering(g, &rounded);
    let ordering = VertexOrdering::new(
        full.as_slice()
            .iter()
            .copied()
            .filter(|&v| h.is_live(v))
            .collect(),
    );
    let ordering_score = wcol_score(&h, &ordering, c).score;
    Ok(WcEditOutcome {
        edit,
        lp_objective: frac.objective,
        rounded,
        beta,
        width_bound: k as f64 * beta,
        ordering,
        ordering_score,
        feasibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts() {
        // P3: three single vertices, two edges, one 2-path.
        assert_eq!(path_catalog(&Graph::path(3), 2).len(), 6);
        // C4 with c = 3: 4 + 4 + 4 + 4 paths.
        assert_eq!(path_catalog(&Graph::cycle(4), 3).len(), 16);
    }

    #[test]
    fn threshold_mechanics() {
        let g = Graph::path(2);
        let model = WcLp::build(&g, 2, 2, EditKind::Edge);
        let frac = WcFractional {
            x: [((0, 1), 0.4), ((1, 0), 0.6)].into(),
            y: model
                .paths
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&v| (v, if v == 0 { 1.0 } else { 0.0 }))
                        .collect()
                })
                .collect(),
            z: [(Element::Edge((0, 1)), 0.3)].into(),
            p: BTreeMap::new(),
            objective: 0.3,
        };
        let r = round_wc(&model, &frac, 0.25);
        assert!(r.z.contains(&Element::Edge((0, 1))));
        assert!(!r.x.contains(&(0, 1)));
        assert!(r.x.contains(&(1, 0)));
    }

    #[test]
    fn already_sparse_needs_nothing() {
        let g = Graph::path(4);
        let out = wc_edit(&g, 2, 3, Weight::new(1, 10), EditKind::Edge).unwrap();
        assert!(out.lp_objective.abs() < 1e-7);
        assert!(out.edit.is_empty());
        assert!(matches!(
            wc_edit(&g, 2, 3, Weight::new(1, 4), EditKind::Edge),
            Err(Error::Param(_))
        ));
    }
}
