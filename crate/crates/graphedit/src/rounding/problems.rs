//! Problem registry: feasibility, cost, stability and lifting constants, and
//! brute-force optima.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};
use crate::oracles::{Meter, OracleBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Problem {
    /// Maximum independent set.
    IS,
    /// Minimum vertex cover.
    VC,
    /// Minimum feedback vertex set.
    FVS,
    /// Minimum maximal matching.
    MMM,
    /// Chromatic number.
    CRN,
    /// Minimum (ℓ-)dominating set.
    DS,
    /// Annotated ℓ-dominating set: dominate only the vertices of B.
    ADS,
    /// Minimum edge dominating set.
    EDS,
    /// Maximum cut.
    MaxCut,
}

impl Problem {
    pub const ALL: [Problem; 9] = [
        Problem::IS,
        Problem::VC,
        Problem::FVS,
        Problem::MMM,
        Problem::CRN,
        Problem::DS,
        Problem::ADS,
        Problem::EDS,
        Problem::MaxCut,
    ];

    pub fn sense(self) -> Sense {
        match self {
            Problem::IS | Problem::MaxCut => Sense::Max,
            _ => Sense::Min,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Param(format!("unknown problem {s:?} (expected one of IS, VC, FVS, MMM, CRN, DS, ADS, EDS, MaxCut)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Min,
    Max,
}

/// How the graph is edited. `VertexStar` is vertex deletion that also
/// shrinks the annotated set to `B ∖ N_ℓ[X]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EditType {
    Vertex,
    Edge,
    VertexStar,
}

/// One row of the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub problem: Problem,
    pub edit: EditType,
    /// Stability: OPT moves by at most `c′` per edit.
    pub c_prime: usize,
    /// Lifting: the lifted cost differs by at most `c` per edit.
    pub c: usize,
}

const REGISTRY: [ProblemSpec; 10] = [
    ProblemSpec {
        problem: Problem::IS,
        edit: EditType::Vertex,
        c_prime: 1,
        c: 0,
    },
    ProblemSpec {
        problem: Problem::VC,
        edit: EditType::Vertex,
        c_prime: 0,
        c: 1,
    },
    ProblemSpec {
        problem: Problem::FVS,
        edit: EditType::Vertex,
        c_prime: 0,
        c: 1,
    },
    ProblemSpec {
        problem: Problem::MMM,
        edit: EditType::Vertex,
        c_prime: 0,
        c: 1,
    },
    ProblemSpec {
        problem: Problem::CRN,
        edit: EditType::Vertex,
        c_prime: 0,
        c: 1,
    },
    ProblemSpec {
        problem: Problem::ADS,
        edit: EditType::VertexStar,
        c_prime: 0,
        c: 1,
    },
    ProblemSpec {
        problem: Problem::IS,
        edit: EditType::Edge,
        c_prime: 0,
        c: 1,
    },
    ProblemSpec {
        problem: Problem::DS,
        edit: EditType::Edge,
        c_prime: 1,
        c: 0,
    },
    ProblemSpec {
        problem: Problem::EDS,
        edit: EditType::Edge,
        c_prime: 1,
        c: 1,
    },
    ProblemSpec {
        problem: Problem::MaxCut,
        edit: EditType::Edge,
        c_prime: 1,
        c: 0,
    },
];

/// Every registered (problem, edit type) pair.
pub fn registry() -> &'static [ProblemSpec] {
    &REGISTRY
}

pub fn spec(problem: Problem, edit: EditType) -> Result<ProblemSpec> {
    REGISTRY
        .iter()
        .find(|s| s.problem == problem && s.edit == edit)
        .copied()
        .ok_or_else(|| {
            Error::Param(format!(
                "{problem} has no registered constants for {edit:?} deletion"
            ))
        })
}

/// A graph with an annotated target set `B` and a radius `ℓ`. Plain
/// problems use `B = V`; the radius matters for DS and ADS only.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnotatedInstance {
    pub graph: Graph,
    pub b: BTreeSet<usize>,
    pub radius: usize,
}

impl AnnotatedInstance {
    pub fn plain(g: &Graph) -> Self {
        AnnotatedInstance {
            graph: g.clone(),
            b: g.vertices().collect(),
            radius: 1,
        }
    }

    pub fn new(g: &Graph, b: BTreeSet<usize>, radius: usize) -> Result<Self> {
        if radius < 1 {
            return Err(Error::Param("radius ℓ must be ≥ 1".into()));
        }
        if let Some(v) = b.iter().find(|&&v| !g.is_live(v)) {
            return Err(Error::Input(format!(
                "annotated vertex {v} is not in the graph"
            )));
        }
        Ok(AnnotatedInstance {
            graph: g.clone(),
            b,
            radius,
        })
    }
}

/// A candidate solution, serialized as id lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solution {
    Vertices(BTreeSet<usize>),
    Edges(BTreeSet<Edge>),
    /// Colour per vertex.
    Coloring(BTreeMap<usize, usize>),
}

impl Solution {
    pub fn vertices(&self) -> Result<&BTreeSet<usize>> {
        match self {
            Solution::Vertices(s) => Ok(s),
            _ => Err(Error::InfeasibleSolution("expected a vertex set".into())),
        }
    }

    pub fn edges(&self) -> Result<&BTreeSet<Edge>> {
        match self {
            Solution::Edges(s) => Ok(s),
            _ => Err(Error::InfeasibleSolution("expected an edge set".into())),
        }
    }

    pub fn coloring(&self) -> Result<&BTreeMap<usize, usize>> {
        match self {
            Solution::Coloring(c) => Ok(c),
            _ => Err(Error::InfeasibleSolution("expected a colouring".into())),
        }
    }
}

/// Objective value of `s` on `g`.
pub fn cost(problem: Problem, g: &Graph, s: &Solution) -> usize {
    match (problem, s) {
        (Problem::MaxCut, Solution::Vertices(side)) => g
            .edges()
            .filter(|(u, v)| side.contains(u) != side.contains(v))
            .count(),
        (_, Solution::Vertices(x)) => x.len(),
        (_, Solution::Edges(x)) => x.len(),
        (_, Solution::Coloring(c)) => c.values().collect::<BTreeSet<_>>().len(),
    }
}

/// Vertices within distance `ℓ` of `x` (including `x`).
pub fn closed_neighborhood(g: &Graph, x: &BTreeSet<usize>, l: usize) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = x.iter().copied().filter(|&v| g.is_live(v)).collect();
    let mut frontier: Vec<usize> = seen.iter().copied().collect();
    for _ in 0..l {
        let mut next = Vec::new();
        for v in frontier {
            for &u in g.neighbors(v) {
                if seen.insert(u) {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn infeasible(msg: String) -> Error {
    Error::InfeasibleSolution(msg)
}

fn check_ids(g: &Graph, vs: &BTreeSet<usize>) -> Result<()> {
    match vs.iter().find(|&&v| !g.is_live(v)) {
        Some(v) => Err(infeasible(format!("vertex {v} is not in the graph"))),
        None => Ok(()),
    }
}

fn is_forest(g: &Graph) -> bool {
    g.size() + g.components().len() == g.order()
}

/// Check feasibility; the error names a violated constraint.
pub fn check_feasible(problem: Problem, inst: &AnnotatedInstance, s: &Solution) -> Result<()> {
    let g = &inst.graph;
    match problem {
        Problem::IS => {
            let x = s.vertices()?;
            check_ids(g, x)?;
            if let Some((u, v)) = g.edges().find(|(u, v)| x.contains(u) && x.contains(v)) {
                return Err(infeasible(format!(
                    "edge ({u},{v}) has both ends in the independent set"
                )));
            }
        }
        Problem::VC => {
            let x = s.vertices()?;
            check_ids(g, x)?;
            if let Some((u, v)) = g.edges().find(|(u, v)| !x.contains(u) && !x.contains(v)) {
                return Err(infeasible(format!("edge ({u},{v}) is uncovered")));
            }
        }
        Problem::FVS => {
            let x = s.vertices()?;
            check_ids(g, x)?;
            let keep: BTreeSet<usize> = g.vertices().filter(|v| !x.contains(v)).collect();
            if !is_forest(&g.induced(&keep)) {
                return Err(infeasible("a cycle survives the feedback set".into()));
            }
        }
        Problem::MMM => {
            let m = s.edges()?;
            let mut matched = BTreeSet::new();
            for &(u, v) in m {
                if !g.has_edge(u, v) {
                    return Err(infeasible(format!("({u},{v}) is not an edge")));
                }
                if !matched.insert(u) || !matched.insert(v) {
                    return Err(infeasible(format!(
                        "edge ({u},{v}) shares an endpoint with another matching edge"
                    )));
                }
            }
            if let Some((u, v)) = g
                .edges()
                .find(|(u, v)| !matched.contains(u) && !matched.contains(v))
            {
                return Err(infeasible(format!(
                    "edge ({u},{v}) could be added: matching is not maximal"
                )));
            }
        }
        Problem::CRN => {
            let c = s.coloring()?;
            if let Some(v) = g.vertices().find(|v| !c.contains_key(v)) {
                return Err(infeasible(format!("vertex {v} is uncoloured")));
            }
            if let Some((u, v)) = g.edges().find(|(u, v)| c[u] == c[v]) {
                return Err(infeasible(format!("edge ({u},{v}) is monochromatic")));
            }
        }
        Problem::DS | Problem::ADS => {
            let x = s.vertices()?;
            check_ids(g, x)?;
            let targets: BTreeSet<usize> = if problem == Problem::DS {
                g.vertices().collect()
            } else {
                inst.b.clone()
            };
            let covered = closed_neighborhood(g, x, inst.radius);
            if let Some(v) = targets.iter().find(|v| !covered.contains(v)) {
                return Err(infeasible(format!(
                    "vertex {v} is not {}-dominated",
                    inst.radius
                )));
            }
        }
        Problem::EDS => {
            let y = s.edges()?;
            if let Some(&(u, v)) = y.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
                return Err(infeasible(format!("({u},{v}) is not an edge")));
            }
            let ends: BTreeSet<usize> = y.iter().flat_map(|&(u, v)| [u, v]).collect();
            if let Some((u, v)) = g
                .edges()
                .find(|(u, v)| !ends.contains(u) && !ends.contains(v))
            {
                return Err(infeasible(format!("edge ({u},{v}) is not dominated")));
            }
        }
        Problem::MaxCut => {
            check_ids(g, s.vertices()?)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- brute force

fn best_by_size<T: Copy + Ord>(
    items: &[T],
    ascending: bool,
    meter: &mut Meter,
    mut ok: impl FnMut(&[T]) -> bool,
) -> Result<Option<Vec<T>>> {
    let sizes: Vec<usize> = if ascending {
        (0..=items.len()).collect()
    } else {
        (0..=items.len()).rev().collect()
    };
    for k in sizes {
        for combo in items.iter().copied().combinations(k) {
            meter.tick()?;
            if ok(&combo) {
                return Ok(Some(combo));
            }
        }
    }
    Ok(None)
}

fn max_independent(g: &Graph, meter: &mut Meter) -> Result<BTreeSet<usize>> {
    let vs: Vec<usize> = g.vertices().collect();
    fn go(
        g: &Graph,
        cand: &[usize],
        cur: &mut Vec<usize>,
        best: &mut Vec<usize>,
        meter: &mut Meter,
    ) -> Result<()> {
        meter.tick()?;
        if cur.len() + cand.len() <= best.len() {
            return Ok(());
        }
        let Some((&v, rest)) = cand.split_first() else {
            *best = cur.clone();
            return Ok(());
        };
        let without_nbrs: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&u| !g.has_edge(u, v))
            .collect();
        cur.push(v);
        go(g, &without_nbrs, cur, best, meter)?;
        cur.pop();
        go(g, rest, cur, best, meter)
    }
    let mut best = Vec::new();
    go(g, &vs, &mut Vec::new(), &mut best, meter)?;
    Ok(best.into_iter().collect())
}

fn colorable(g: &Graph, k: usize, meter: &mut Meter) -> Result<Option<BTreeMap<usize, usize>>> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    fn go(
        g: &Graph,
        order: &[usize],
        i: usize,
        k: usize,
        col: &mut BTreeMap<usize, usize>,
        meter: &mut Meter,
    ) -> Result<bool> {
        if i == order.len() {
            return Ok(true);
        }
        meter.tick()?;
        let v = order[i];
        // Symmetry: never open more than one new colour at a time.
        let used = col.values().max().map_or(0, |&m| m + 1);
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|u| col.get(u) != Some(&c)) {
                col.insert(v, c);
                if go(g, order, i + 1, k, col, meter)? {
                    return Ok(true);
                }
                col.remove(&v);
            }
        }
        Ok(false)
    }
    let mut col = BTreeMap::new();
    Ok(go(g, &order, 0, k, &mut col, meter)?.then_some(col))
}

/// An optimal solution by exhaustive search (lexicographically first among
/// optimal ones for the subset searches).
pub fn exact_solution(
    problem: Problem,
    inst: &AnnotatedInstance,
    budget: &OracleBudget,
) -> Result<Solution> {
    let g = &inst.graph;
    budget.check_graph(g)?;
    let mut meter = Meter::new(budget);
    let vs: Vec<usize> = g.vertices().collect();
    let es: Vec<Edge> = g.edges().collect();
    let none = || Error::Internal(format!("no feasible {problem} solution found"));
    Ok(match problem {
        Problem::IS => Solution::Vertices(max_independent(g, &mut meter)?),
        Problem::VC => {
            let is = max_independent(g, &mut meter)?;
            Solution::Vertices(vs.iter().copied().filter(|v| !is.contains(v)).collect())
        }
        Problem::FVS => {
            let x = best_by_size(&vs, true, &mut meter, |x| {
                let keep: BTreeSet<usize> = vs.iter().copied().filter(|v| !x.contains(v)).collect();
                is_forest(&g.induced(&keep))
            })?
            .ok_or_else(none)?;
            Solution::Vertices(x.into_iter().collect())
        }
        Problem::MMM | Problem::EDS => {
            let pred = |y: &[Edge]| {
                let s = Solution::Edges(y.iter().copied().collect());
                check_feasible(problem, inst, &s).is_ok()
            };
            Solution::Edges(
                best_by_size(&es, true, &mut meter, pred)?
                    .ok_or_else(none)?
                    .into_iter()
                    .collect(),
            )
        }
        Problem::CRN => {
            let mut k = 0;
            loop {
                if let Some(c) = colorable(g, k, &mut meter)? {
                    break Solution::Coloring(c);
                }
                k += 1;
            }
        }
        Problem::DS | Problem::ADS => {
            let pred = |x: &[usize]| {
                check_feasible(
                    problem,
                    inst,
                    &Solution::Vertices(x.iter().copied().collect()),
                )
                .is_ok()
            };
            Solution::Vertices(
                best_by_size(&vs, true, &mut meter, pred)?
                    .ok_or_else(none)?
                    .into_iter()
                    .collect(),
            )
        }
        Problem::MaxCut => {
            if vs.len() > 26 {
                return Err(Error::Budget(format!(
                    "max-cut enumeration handles at most 26 vertices, got {}",
                    vs.len()
                )));
            }
            let mut best = (0usize, BTreeSet::new());
            // Fixing the first vertex on side 0 halves the enumeration.
            let rest = vs.len().saturating_sub(1);
            for mask in 0u64..(1u64 << rest) {
                meter.tick()?;
                let side: BTreeSet<usize> = (0..rest)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| vs[i + 1])
                    .collect();
                let value = g
                    .edges()
                    .filter(|(u, v)| side.contains(u) != side.contains(v))
                    .count();
                if value > best.0 {
                    best = (value, side);
                }
            }
            Solution::Vertices(best.1)
        }
    })
}

/// Optimal objective value.
pub fn exact_opt(
    problem: Problem,
    inst: &AnnotatedInstance,
    budget: &OracleBudget,
) -> Result<usize> {
    let s = exact_solution(problem, inst, budget)?;
    Ok(cost(problem, &inst.graph, &s))
}

/// Edge helper for hand-written solutions.
pub fn edges_of(pairs: &[(usize, usize)]) -> Solution {
    Solution::Edges(pairs.iter().map(|&(u, v)| edge(u, v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opt(p: Problem, g: &Graph) -> usize {
        exact_opt(p, &AnnotatedInstance::plain(g), &OracleBudget::default()).unwrap()
    }

    #[test]
    fn small_optima() {
        let p4 = Graph::path(4);
        let c5 = Graph::cycle(5);
        assert_eq!(opt(Problem::IS, &p4), 2);
        assert_eq!(opt(Problem::VC, &c5), 3);
        assert_eq!(opt(Problem::DS, &Graph::star(4)), 1);
        assert_eq!(opt(Problem::FVS, &Graph::complete(4)), 2);
        assert_eq!(opt(Problem::MMM, &p4), 1);
        assert_eq!(opt(Problem::EDS, &Graph::path(5)), 2);
        assert_eq!(opt(Problem::CRN, &c5), 3);
        assert_eq!(opt(Problem::MaxCut, &Graph::complete(4)), 4);
    }

    #[test]
    fn neighbourhoods() {
        let p4 = Graph::path(4);
        assert_eq!(closed_neighborhood(&p4, &[0].into(), 1), [0, 1].into());
        assert_eq!(
            closed_neighborhood(&p4, &[0].into(), 3),
            [0, 1, 2, 3].into()
        );
        assert_eq!(closed_neighborhood(&p4, &[0].into(), 0), [0].into());
    }

    #[test]
    fn feasibility_witnesses() {
        let inst = AnnotatedInstance::plain(&Graph::path(3));
        let err =
            check_feasible(Problem::IS, &inst, &Solution::Vertices([0, 1].into())).unwrap_err();
        assert!(err.to_string().contains("(0,1)"));
        assert!(check_feasible(Problem::VC, &inst, &Solution::Vertices([1].into())).is_ok());
        assert!(check_feasible(Problem::MMM, &inst, &edges_of(&[(0, 1)])).is_ok());
    }

    #[test]
    fn registry_is_complete() {
        assert_eq!(spec(Problem::IS, EditType::Vertex).unwrap().c_prime, 1);
        assert_eq!(spec(Problem::EDS, EditType::Edge).unwrap().c, 1);
        assert!(spec(Problem::VC, EditType::Edge).is_err());
        assert_eq!("maxcut".parse::<Problem>().unwrap(), Problem::MaxCut);
    }
}
