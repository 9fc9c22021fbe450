//! Exhaustive ground truth: minimum edit sets, treewidth, clique number,
//! set cover and hitting set. Everything here is exact and budgeted; nothing
//! trades exactness for speed.
//!
//! Enumerations run by increasing size and lexicographically by element id,
//! so among co-optimal sets the lexicographically first one is returned.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::Zero;

use crate::bits::{self, MaskGraph};
use crate::error::{Error, Result};
use crate::graph::{apply_edits, degeneracy, Edge, EditKind, EditSet, Graph, Weight};
use crate::instances::SetCoverInstance;
use crate::width::decomposition::{
    decomposition_from_elimination, elimination_width, min_degree_ordering, TreeDecomposition,
};

/// Limits every oracle checks before and while running.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_subsets: u64,
    pub wall_clock: Duration,
    /// Vertex cap for the ordering search behind the exact wcol.
    pub max_wcol_vertices: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 22,
            max_edges: 40,
            max_subsets: 20_000_000,
            wall_clock: Duration::from_secs(120),
            max_wcol_vertices: 9,
        }
    }
}

/// Counts work against an [`OracleBudget`].
pub struct Meter<'a> {
    budget: &'a OracleBudget,
    start: Instant,
    count: u64,
}

impl<'a> Meter<'a> {
    pub fn new(budget: &'a OracleBudget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            count: 0,
        }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.count += 1;
        if self.count > self.budget.max_subsets {
            return Err(Error::Budget(format!(
                "more than {} subsets enumerated",
                self.budget.max_subsets
            )));
        }
        if self.count.is_multiple_of(1024) && self.start.elapsed() > self.budget.wall_clock {
            return Err(Error::Budget(format!(
                "wall-clock cap of {:?} reached",
                self.budget.wall_clock
            )));
        }
        Ok(())
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

impl OracleBudget {
    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.order() > self.max_vertices {
            return Err(Error::Budget(format!(
                "{} vertices exceed the oracle cap of {}",
                g.order(),
                self.max_vertices
            )));
        }
        if g.size() > self.max_edges {
            return Err(Error::Budget(format!(
                "{} edges exceed the oracle cap of {}",
                g.size(),
                self.max_edges
            )));
        }
        Ok(())
    }
}

/// Target classes for [`exact_min_edit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EditPredicate {
    DegeneracyAtMost(usize),
    MaxDegreeAtMost(usize),
    StarForest,
    TreewidthAtMost(usize),
    WcolAtMost { c: usize, k: usize },
}

impl EditPredicate {
    /// Does `g` belong to the class?
    pub fn holds(&self, g: &Graph, budget: &OracleBudget) -> Result<bool> {
        Ok(match *self {
            EditPredicate::DegeneracyAtMost(r) => degeneracy(g).0 <= r,
            EditPredicate::MaxDegreeAtMost(d) => g.max_degree() <= d,
            EditPredicate::StarForest => crate::combinatorial::is_star_forest(g),
            EditPredicate::TreewidthAtMost(w) => treewidth_at_most(g, w, budget)?.is_some(),
            EditPredicate::WcolAtMost { c, k } => crate::wcol::wcol_at_most(g, c, k, budget)?,
        })
    }
}

/// Minimum edit set placing `g` in the class. Unit weights: minimum
/// cardinality, found by increasing size. Otherwise: minimum total weight
/// over all subsets (ties by size, then lexicographic).
pub fn exact_min_edit(
    g: &Graph,
    pred: EditPredicate,
    kind: EditKind,
    budget: &OracleBudget,
) -> Result<EditSet> {
    budget.check_graph(g)?;
    if let (EditPredicate::DegeneracyAtMost(r), EditKind::Edge, true) =
        (pred, kind, g.is_unit_weighted())
    {
        return min_edge_degeneracy_edit(g, r, budget);
    }
    let mut meter = Meter::new(budget);
    match kind {
        EditKind::Vertex => {
            let mg = MaskGraph::new(g)?;
            let verts: Vec<usize> = (0..mg.n).collect();
            let holds = |del: &[usize]| -> Result<bool> {
                if let EditPredicate::DegeneracyAtMost(r) = pred {
                    let mask = del.iter().fold(mg.full(), |m, &i| m & !(1u64 << i));
                    return Ok(mg.degeneracy(mask) <= r);
                }
                let x = EditSet::from_vertices(g, del.iter().map(|&i| mg.ids[i]));
                pred.holds(&apply_edits(g, &x)?, budget)
            };
            let weight = |del: &[usize]| {
                del.iter()
                    .map(|&i| g.vertex_weight(mg.ids[i]))
                    .sum::<Weight>()
            };
            let best = search(&verts, g.is_unit_weighted(), &mut meter, holds, weight)?;
            Ok(EditSet::from_vertices(g, best.iter().map(|&i| mg.ids[i])))
        }
        EditKind::Edge => {
            let edges: Vec<Edge> = g.edges().collect();
            let holds = |del: &[Edge]| -> Result<bool> {
                let mut h = g.clone();
                for &(u, v) in del {
                    h.remove_edge(u, v);
                }
                pred.holds(&h, budget)
            };
            let weight = |del: &[Edge]| {
                del.iter()
                    .map(|&e| g.edge_weight(e).unwrap())
                    .sum::<Weight>()
            };
            let best = search(&edges, g.is_unit_weighted(), &mut meter, holds, weight)?;
            Ok(EditSet::from_edges(g, best))
        }
    }
}

/// Smallest unit-cost edit set of size at most `max_size`, or `None` when
/// every set that small fails. Unlike [`exact_min_edit`] there is no cap on
/// the graph's order; the enumeration is bounded by `C(|ground|, ≤ max_size)`
/// and counted against the budget's subset limit. Meant for large instances
/// with a known small optimum (the hardness gadgets).
pub fn min_edit_up_to(
    g: &Graph,
    pred: EditPredicate,
    kind: EditKind,
    max_size: usize,
    budget: &OracleBudget,
) -> Result<Option<EditSet>> {
    let mut meter = Meter::new(budget);
    match kind {
        EditKind::Vertex => {
            let ground: Vec<usize> = g.vertices().collect();
            for k in 0..=max_size.min(ground.len()) {
                for combo in ground.iter().copied().combinations(k) {
                    meter.tick()?;
                    let x = EditSet::from_vertices(g, combo);
                    if pred.holds(&apply_edits(g, &x)?, budget)? {
                        return Ok(Some(x));
                    }
                }
            }
        }
        EditKind::Edge => {
            let ground: Vec<Edge> = g.edges().collect();
            for k in 0..=max_size.min(ground.len()) {
                for combo in ground.iter().copied().combinations(k) {
                    meter.tick()?;
                    let mut h = g.clone();
                    for &(u, v) in &combo {
                        h.remove_edge(u, v);
                    }
                    if pred.holds(&h, budget)? {
                        return Ok(Some(EditSet::from_edges(g, combo)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn search<T: Copy>(
    ground: &[T],
    unit: bool,
    meter: &mut Meter,
    mut holds: impl FnMut(&[T]) -> Result<bool>,
    weight: impl Fn(&[T]) -> Weight,
) -> Result<Vec<T>> {
    let mut best: Option<(Weight, Vec<T>)> = None;
    for k in 0..=ground.len() {
        for combo in ground.iter().copied().combinations(k) {
            meter.tick()?;
            if let Some((bw, _)) = &best {
                if weight(&combo) >= *bw {
                    continue;
                }
            }
            if holds(&combo)? {
                if unit {
                    return Ok(combo);
                }
                let w = weight(&combo);
                best = Some((w, combo));
                if w.is_zero() {
                    return Ok(best.unwrap().1);
                }
            }
        }
    }
    best.map(|b| b.1).ok_or_else(|| {
        Error::Internal("no feasible edit set (deleting everything should be feasible)".into())
    })
}

/// Minimum number of edge deletions for degeneracy ≤ r.
///
/// A graph has degeneracy ≤ r iff some ordering gives every vertex at most r
/// forward neighbours, so the largest r-degenerate subgraph keeps
/// `max_L Σ_v min(r, fwd_L(v))` edges. That maximum is a DP over the set of
/// already-placed vertices.
pub fn min_edge_degeneracy_edit(g: &Graph, r: usize, budget: &OracleBudget) -> Result<EditSet> {
    budget.check_graph(g)?;
    let mg = MaskGraph::new(g)?;
    let n = mg.n;
    if n > 26 {
        return Err(Error::Budget(format!(
            "edge-degeneracy DP handles at most 26 vertices, got {n}"
        )));
    }
    let mut meter = Meter::new(budget);
    let size = 1usize << n;
    let mut dp = vec![-1i32; size];
    let mut choice = vec![0u8; size];
    dp[0] = 0;
    for s in 0..size {
        if dp[s] < 0 {
            continue;
        }
        meter.tick()?;
        let placed = s as u64;
        for v in bits::iter(mg.full() & !placed) {
            let fwd = (mg.adj[v] & !placed).count_ones() as i32;
            let val = dp[s] + fwd.min(r as i32);
            let t = s | (1 << v);
            if val > dp[t] {
                dp[t] = val;
                choice[t] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = size - 1;
    while s != 0 {
        let v = choice[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let mut deleted = Vec::new();
    let mut placed = 0u64;
    for &v in &order {
        placed |= 1 << v;
        for (i, w) in bits::iter(mg.adj[v] & !placed).enumerate() {
            if i >= r {
                deleted.push(crate::graph::edge(mg.ids[v], mg.ids[w]));
            }
        }
    }
    Ok(EditSet::from_edges(g, deleted))
}

/// Q(S, v): vertices outside `S ∪ {v}` reachable from `v` through `S`.
fn q_set(mg: &MaskGraph, s: u64, v: usize) -> u64 {
    let comp = mg.reach(v, s | (1u64 << v));
    mg.neighbourhood(comp) & !s
}

/// Decide tw(g) ≤ w. On success returns an elimination ordering of width ≤ w.
pub fn treewidth_at_most(g: &Graph, w: usize, budget: &OracleBudget) -> Result<Option<Vec<usize>>> {
    let mg = MaskGraph::new(g)?;
    if mg.n > budget.max_vertices {
        return Err(Error::Budget(format!(
            "{} vertices exceed the treewidth oracle cap of {}",
            mg.n, budget.max_vertices
        )));
    }
    if mg.degeneracy(mg.full()) > w {
        return Ok(None);
    }
    let heuristic = min_degree_ordering(g);
    if elimination_width(g, &heuristic) <= w {
        return Ok(Some(heuristic));
    }
    let mut meter = Meter::new(budget);
    let mut order = Vec::new();
    for comp in mg.components(mg.full()) {
        let mut failed = HashSet::new();
        let mut local = Vec::new();
        if !tw_dfs(&mg, comp, 0, w, &mut failed, &mut local, &mut meter)? {
            return Ok(None);
        }
        order.extend(local.into_iter().map(|i| mg.ids[i]));
    }
    Ok(Some(order))
}

fn tw_dfs(
    mg: &MaskGraph,
    all: u64,
    s: u64,
    w: usize,
    failed: &mut HashSet<u64>,
    out: &mut Vec<usize>,
    meter: &mut Meter,
) -> Result<bool> {
    let rest = all & !s;
    if rest.count_ones() as usize <= w + 1 {
        out.extend(bits::iter(rest));
        return Ok(true);
    }
    meter.tick()?;
    for v in bits::iter(rest) {
        let t = s | (1u64 << v);
        if failed.contains(&t) || q_set(mg, s, v).count_ones() as usize > w {
            continue;
        }
        out.push(v);
        if tw_dfs(mg, all, t, w, failed, out, meter)? {
            return Ok(true);
        }
        out.pop();
        failed.insert(t);
    }
    Ok(false)
}

/// Exact treewidth with an optimal elimination ordering.
pub fn exact_treewidth_ordering(g: &Graph, budget: &OracleBudget) -> Result<(usize, Vec<usize>)> {
    if g.order() > budget.max_vertices {
        return Err(Error::Budget(format!(
            "{} vertices exceed the treewidth oracle cap of {}",
            g.order(),
            budget.max_vertices
        )));
    }
    let heuristic = min_degree_ordering(g);
    let ub = elimination_width(g, &heuristic);
    let lb = degeneracy(g)
        .0
        .max(exact_clique_number(g, budget)?.saturating_sub(1));
    for w in lb..ub {
        if let Some(order) = treewidth_at_most(g, w, budget)? {
            return Ok((w, order));
        }
    }
    Ok((ub, heuristic))
}

pub fn exact_treewidth(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    Ok(exact_treewidth_ordering(g, budget)?.0)
}

/// An optimal-width tree decomposition.
pub fn exact_tree_decomposition(g: &Graph, budget: &OracleBudget) -> Result<TreeDecomposition> {
    let (_, order) = exact_treewidth_ordering(g, budget)?;
    Ok(decomposition_from_elimination(g, &order))
}

/// Treewidth as the minimum elimination width over all permutations.
/// Independent cross-check for the subset search; n ≤ 9.
pub fn treewidth_by_permutations(g: &Graph) -> Result<usize> {
    let vs: Vec<usize> = g.vertices().collect();
    if vs.len() > 9 {
        return Err(Error::Budget(format!(
            "permutation treewidth handles at most 9 vertices, got {}",
            vs.len()
        )));
    }
    let n = vs.len();
    Ok(vs
        .into_iter()
        .permutations(n)
        .map(|p| elimination_width(g, &p))
        .min()
        .unwrap_or(0))
}

/// Size of a largest clique.
pub fn exact_clique_number(g: &Graph, budget: &OracleBudget) -> Result<usize> {
    let mg = MaskGraph::new(g)?;
    let mut meter = Meter::new(budget);
    let mut best = 0;
    clique_rec(&mg, 0, mg.full(), &mut best, &mut meter)?;
    Ok(best)
}

fn clique_rec(
    mg: &MaskGraph,
    size: usize,
    mut cand: u64,
    best: &mut usize,
    meter: &mut Meter,
) -> Result<()> {
    meter.tick()?;
    if cand == 0 {
        *best = (*best).max(size);
        return Ok(());
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1u64 << v);
        clique_rec(mg, size + 1, cand & mg.adj[v], best, meter)?;
    }
    *best = (*best).max(size);
    Ok(())
}

/// A minimum set cover (set indices), lexicographically first among optima.
pub fn exact_set_cover(sc: &SetCoverInstance, budget: &OracleBudget) -> Result<BTreeSet<usize>> {
    let mut meter = Meter::new(budget);
    for k in 0..=sc.sets.len() {
        for combo in (0..sc.sets.len()).combinations(k) {
            meter.tick()?;
            let chosen: BTreeSet<usize> = combo.into_iter().collect();
            if sc.is_cover(&chosen) {
                return Ok(chosen);
            }
        }
    }
    Err(Error::Input("set-cover instance has no cover".into()))
}

/// A minimum hitting set of `family` over `ground`.
pub fn exact_hitting_set<T: Ord + Copy>(
    ground: &[T],
    family: &[Vec<T>],
    budget: &OracleBudget,
) -> Result<BTreeSet<T>> {
    let mut meter = Meter::new(budget);
    for k in 0..=ground.len() {
        for combo in ground.iter().copied().combinations(k) {
            meter.tick()?;
            let chosen: BTreeSet<T> = combo.into_iter().collect();
            if family.iter().all(|s| s.iter().any(|e| chosen.contains(e))) {
                return Ok(chosen);
            }
        }
    }
    Err(Error::Input(
        "some forbidden set is empty and cannot be hit".into(),
    ))
}

pub use crate::rounding::problems::exact_opt;
pub use crate::wcol::exact::exact_wcol;

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn bounded_search_agrees_with_full_search() {
        let g = Graph::grid(3, 3);
        let full = exact_min_edit(&g, EditPredicate::StarForest, EditKind::Vertex, &b()).unwrap();
        let bounded =
            min_edit_up_to(&g, EditPredicate::StarForest, EditKind::Vertex, 9, &b()).unwrap();
        assert_eq!(bounded.unwrap().len(), full.len());
        let short = min_edit_up_to(
            &g,
            EditPredicate::StarForest,
            EditKind::Vertex,
            full.len() - 1,
            &b(),
        )
        .unwrap();
        assert!(short.is_none());
    }

    #[test]
    fn spec_examples() {
        let x = exact_min_edit(
            &Graph::path(4),
            EditPredicate::StarForest,
            EditKind::Vertex,
            &b(),
        )
        .unwrap();
        assert_eq!(x.len(), 1);
        let x = exact_min_edit(
            &Graph::complete(6),
            EditPredicate::DegeneracyAtMost(1),
            EditKind::Vertex,
            &b(),
        )
        .unwrap();
        assert_eq!(x.len(), 4);
        let x = exact_min_edit(
            &Graph::cycle(5),
            EditPredicate::MaxDegreeAtMost(1),
            EditKind::Edge,
            &b(),
        )
        .unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(exact_treewidth(&Graph::complete(4), &b()).unwrap(), 3);
        assert_eq!(exact_clique_number(&Graph::cycle(5), &b()).unwrap(), 2);
        let sc = SetCoverInstance::new(3, vec![[0, 1].into(), [1, 2].into(), [2].into()]).unwrap();
        assert_eq!(exact_set_cover(&sc, &b()).unwrap(), [0, 1].into());
    }

    #[test]
    fn treewidth_of_small_families() {
        assert_eq!(exact_treewidth(&Graph::cycle(4), &b()).unwrap(), 2);
        assert_eq!(exact_treewidth(&Graph::grid(3, 3), &b()).unwrap(), 3);
        assert_eq!(exact_treewidth(&Graph::grid(4, 4), &b()).unwrap(), 4);
        assert_eq!(exact_treewidth(&Graph::path(6), &b()).unwrap(), 1);
        assert_eq!(treewidth_by_permutations(&Graph::grid(2, 4)).unwrap(), 2);
    }

    #[test]
    fn edge_degeneracy_dp_matches_enumeration() {
        let g = Graph::complete(5);
        let dp = min_edge_degeneracy_edit(&g, 2, &b()).unwrap();
        assert!(degeneracy(&apply_edits(&g, &dp).unwrap()).0 <= 2);
        let mut h = Graph::new(5);
        // Force the enumeration path via a non-unit weight with the same optimum structure.
        for (u, v) in g.edges() {
            h.add_weighted_edge(u, v, Weight::new(1, 1)).unwrap();
        }
        h.set_vertex_weight(0, Weight::new(2, 1)).unwrap();
        let brute =
            exact_min_edit(&h, EditPredicate::DegeneracyAtMost(2), EditKind::Edge, &b()).unwrap();
        assert_eq!(dp.len(), brute.len());
        // K5 has 10 edges; a 2-degenerate graph on 5 vertices has at most 2·5 − 3 = 7.
        assert_eq!(dp.len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let tight = OracleBudget {
            max_subsets: 5,
            ..OracleBudget::default()
        };
        let r = exact_min_edit(
            &Graph::complete(6),
            EditPredicate::DegeneracyAtMost(1),
            EditKind::Vertex,
            &tight,
        );
        assert!(matches!(r, Err(Error::Budget(_))));
        let small = OracleBudget {
            max_vertices: 3,
            ..OracleBudget::default()
        };
        assert!(matches!(
            exact_treewidth(&Graph::path(5), &small),
            Err(Error::Budget(_))
        ));
    }
}
