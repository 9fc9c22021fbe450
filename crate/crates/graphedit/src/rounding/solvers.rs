//! Solvers on the edited graph: dynamic programming over a nice tree
//! decomposition (IS, VC, DS/ADS with radius 1), the colour-class greedy
//! for IS on a degeneracy ordering, and brute force for everything else.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{degeneracy, Graph, VertexOrdering};
use crate::oracles::{exact_tree_decomposition, OracleBudget};
use crate::width::{tree_decomposition, SeparatorConfig, TreeDecomposition};

use super::problems::{exact_solution, AnnotatedInstance, Problem, Solution};

/// One node of a nice tree decomposition. Every node stores its bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce { v: usize, child: usize },
    Forget { v: usize, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Clone, Debug)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: BTreeSet<usize>,
}

/// A nice decomposition whose root has an empty bag. Nodes are stored
/// children-first, so the root is the last node.
#[derive(Clone, Debug)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Check the node-type rules and that the bags form a valid
    /// decomposition of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |i: usize, why: &str| Err(Error::Internal(format!("nice node {i}: {why}")));
        for (i, n) in self.nodes.iter().enumerate() {
            match &n.kind {
                NiceKind::Leaf if !n.bag.is_empty() => return bad(i, "leaf bag must be empty"),
                NiceKind::Introduce { v, child } => {
                    let mut b = self.nodes[*child].bag.clone();
                    if !b.insert(*v) || b != n.bag {
                        return bad(i, "introduce must add exactly one vertex");
                    }
                }
                NiceKind::Forget { v, child } => {
                    let mut b = self.nodes[*child].bag.clone();
                    if !b.remove(v) || b != n.bag {
                        return bad(i, "forget must drop exactly one vertex");
                    }
                }
                NiceKind::Join { left, right } => {
                    if self.nodes[*left].bag != n.bag || self.nodes[*right].bag != n.bag {
                        return bad(i, "join children must share the bag");
                    }
                }
                _ => {}
            }
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return bad(self.root(), "root bag must be empty");
        }
        self.as_tree().validate(g)
    }

    fn as_tree(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            match n.kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    edges.push((i, child))
                }
                NiceKind::Join { left, right } => edges.extend([(i, left), (i, right)]),
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|n| n.bag.clone()).collect(),
            edges,
            root: self.root(),
        }
    }
}

/// Convert a rooted decomposition into a nice one and re-validate it.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceDecomposition> {
    td.validate(g)?;
    let children = td.children()?;
    let mut nodes: Vec<NiceNode> = Vec::new();
    let root_top = build_nice(td, &children, td.root, &mut nodes);
    let top = forget_down(&mut nodes, root_top, &BTreeSet::new());
    debug_assert_eq!(top, nodes.len() - 1);
    let nice = NiceDecomposition { nodes };
    nice.validate(g)?;
    Ok(nice)
}

fn push(nodes: &mut Vec<NiceNode>, kind: NiceKind, bag: BTreeSet<usize>) -> usize {
    nodes.push(NiceNode { kind, bag });
    nodes.len() - 1
}

/// Forget everything of `from`'s bag outside `target`.
fn forget_down(nodes: &mut Vec<NiceNode>, mut at: usize, target: &BTreeSet<usize>) -> usize {
    let extra: Vec<usize> = nodes[at].bag.difference(target).copied().collect();
    for v in extra {
        let mut bag = nodes[at].bag.clone();
        bag.remove(&v);
        at = push(nodes, NiceKind::Forget { v, child: at }, bag);
    }
    at
}

/// Introduce everything of `target` missing from `at`'s bag.
fn introduce_up(nodes: &mut Vec<NiceNode>, mut at: usize, target: &BTreeSet<usize>) -> usize {
    let missing: Vec<usize> = target.difference(&nodes[at].bag).copied().collect();
    for v in missing {
        let mut bag = nodes[at].bag.clone();
        bag.insert(v);
        at = push(nodes, NiceKind::Introduce { v, child: at }, bag);
    }
    at
}

fn build_nice(
    td: &TreeDecomposition,
    children: &[Vec<usize>],
    a: usize,
    nodes: &mut Vec<NiceNode>,
) -> usize {
    let bag = &td.bags[a];
    let mut tops = Vec::new();
    for &c in &children[a] {
        let sub = build_nice(td, children, c, nodes);
        let keep: BTreeSet<usize> = td.bags[c].intersection(bag).copied().collect();
        let down = forget_down(nodes, sub, &keep);
        tops.push(introduce_up(nodes, down, bag));
    }
    if tops.is_empty() {
        let leaf = push(nodes, NiceKind::Leaf, BTreeSet::new());
        return introduce_up(nodes, leaf, bag);
    }
    let mut acc = tops[0];
    for &t in &tops[1..] {
        acc = push(
            nodes,
            NiceKind::Join {
                left: acc,
                right: t,
            },
            bag.clone(),
        );
    }
    acc
}

// ------------------------------------------------------------------- tree DP

/// Labels per bag position. IS: 0 out, 1 in. DS: 0 undominated, 1
/// dominated, 2 in the set.
type State = Vec<u8>;
/// Best value per state with a witness set of chosen vertices.
type Table = BTreeMap<State, (i64, BTreeSet<usize>)>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum DpKind {
    Independent,
    Dominating,
}

const IN_DS: u8 = 2;

fn offer(t: &mut Table, s: State, value: i64, chosen: BTreeSet<usize>, maximize: bool) {
    let better = |old: i64| if maximize { value > old } else { value < old };
    match t.get(&s) {
        Some((old, _)) if !better(*old) => {}
        _ => {
            t.insert(s, (value, chosen));
        }
    }
}

fn run_dp(
    nice: &NiceDecomposition,
    inst: &AnnotatedInstance,
    kind: DpKind,
) -> Result<BTreeSet<usize>> {
    let g = &inst.graph;
    let maximize = kind == DpKind::Independent;
    let chosen_label = if kind == DpKind::Independent {
        1
    } else {
        IN_DS
    };
    let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes.len());
    for node in &nice.nodes {
        let bag: Vec<usize> = node.bag.iter().copied().collect();
        let mut t = Table::new();
        match node.kind {
            NiceKind::Leaf => offer(&mut t, vec![], 0, BTreeSet::new(), maximize),
            NiceKind::Introduce { v, child } => {
                let pos = bag.binary_search(&v).unwrap();
                // Child bag = bag without v; child position i maps to i (< pos) or i+1.
                for (s, (val, ch)) in &tables[child] {
                    let label_at = |i: usize| if i < pos { s[i] } else { s[i - 1] };
                    let nbrs: Vec<usize> = (0..bag.len())
                        .filter(|&i| i != pos && g.has_edge(bag[i], v))
                        .collect();
                    let mut base = s.clone();
                    base.insert(pos, 0);
                    match kind {
                        DpKind::Independent => {
                            offer(&mut t, base.clone(), *val, ch.clone(), maximize);
                            if nbrs.iter().all(|&i| label_at(i) != 1) {
                                let mut s2 = base;
                                s2[pos] = 1;
                                let mut ch2 = ch.clone();
                                ch2.insert(v);
                                offer(&mut t, s2, val + 1, ch2, maximize);
                            }
                        }
                        DpKind::Dominating => {
                            let mut out = base.clone();
                            let covered =
                                !inst.b.contains(&v) || nbrs.iter().any(|&i| label_at(i) == IN_DS);
                            out[pos] = u8::from(covered);
                            offer(&mut t, out, *val, ch.clone(), maximize);
                            let mut s2 = base;
                            s2[pos] = IN_DS;
                            for &i in &nbrs {
                                if s2[i] == 0 {
                                    s2[i] = 1;
                                }
                            }
                            let mut ch2 = ch.clone();
                            ch2.insert(v);
                            offer(&mut t, s2, val + 1, ch2, maximize);
                        }
                    }
                }
            }
            NiceKind::Forget { v, child } => {
                let child_bag: Vec<usize> = nice.nodes[child].bag.iter().copied().collect();
                let pos = child_bag.binary_search(&v).unwrap();
                for (s, (val, ch)) in &tables[child] {
                    if kind == DpKind::Dominating && s[pos] == 0 {
                        continue;
                    }
                    let mut s2 = s.clone();
                    s2.remove(pos);
                    offer(&mut t, s2, *val, ch.clone(), maximize);
                }
            }
            NiceKind::Join { left, right } => {
                for (s1, (v1, c1)) in &tables[left] {
                    for (s2, (v2, c2)) in &tables[right] {
                        let same_set = s1
                            .iter()
                            .zip(s2)
                            .all(|(&a, &b)| (a == chosen_label) == (b == chosen_label));
                        if !same_set {
                            continue;
                        }
                        let merged: State = s1.iter().zip(s2).map(|(&a, &b)| a.max(b)).collect();
                        let shared = s1.iter().filter(|&&a| a == chosen_label).count() as i64;
                        let ch: BTreeSet<usize> = c1.union(c2).copied().collect();
                        offer(&mut t, merged, v1 + v2 - shared, ch, maximize);
                    }
                }
            }
        }
        tables.push(t);
    }
    let root = tables.pop().expect("nice decomposition has a root");
    root.get(&vec![])
        .map(|(_, ch)| ch.clone())
        .ok_or_else(|| Error::Internal("tree DP found no feasible state".into()))
}

// ------------------------------------------------------------- entry points

/// What the solver is allowed to assume about the edited graph.
#[derive(Clone, Debug)]
pub enum Certificate {
    Decomposition(TreeDecomposition),
    /// A peeling order: every vertex has at most r neighbours later on.
    Ordering(VertexOrdering),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    TreeDp,
    GreedyDegeneracy,
    BruteForce,
}

impl std::str::FromStr for SolverKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree-dp" => Ok(SolverKind::TreeDp),
            "greedy-degeneracy" => Ok(SolverKind::GreedyDegeneracy),
            "brute-force" => Ok(SolverKind::BruteForce),
            other => Err(Error::Param(format!(
                "unknown solver '{other}' (expected tree-dp|greedy-degeneracy|brute-force)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Largest decomposition width the DP accepts.
    pub width_cap: usize,
    /// Graphs up to this order get an exact decomposition for the DP.
    pub exact_width_limit: usize,
    pub budget: OracleBudget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            width_cap: 6,
            exact_width_limit: 12,
            budget: OracleBudget::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Solved {
    pub solution: Solution,
    /// Guaranteed approximation ratio of the method (1 for exact ones).
    pub rho: f64,
    pub method: String,
}

fn dp_kind(problem: Problem, inst: &AnnotatedInstance) -> Option<DpKind> {
    match problem {
        Problem::IS | Problem::VC => Some(DpKind::Independent),
        Problem::DS | Problem::ADS if inst.radius == 1 => Some(DpKind::Dominating),
        _ => None,
    }
}

fn exact(problem: Problem, inst: &AnnotatedInstance, budget: &OracleBudget) -> Result<Solved> {
    Ok(Solved {
        solution: exact_solution(problem, inst, budget)?,
        rho: 1.0,
        method: "brute-force".into(),
    })
}

/// Largest colour class of the greedy colouring taken against a peeling
/// order: at most `r + 1` colours, so at least `n/(r+1)` vertices.
pub fn greedy_independent_set(g: &Graph, l: &VertexOrdering) -> Result<(BTreeSet<usize>, usize)> {
    if !l.is_ordering_of(g) {
        return Err(Error::Input(
            "certificate is not an ordering of the graph".into(),
        ));
    }
    let r = l.max_forward_degree(g);
    let mut colour: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in l.as_slice().iter().rev() {
        let used: BTreeSet<usize> = g
            .neighbors(v)
            .iter()
            .filter_map(|u| colour.get(u).copied())
            .collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        colour.insert(v, c);
    }
    let mut classes: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (v, c) in colour {
        classes.entry(c).or_default().insert(v);
    }
    let best = classes
        .into_values()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .unwrap_or_default();
    Ok((best, r))
}

/// Solve `problem` using the given certificate. Decompositions drive the DP
/// for IS/VC/DS; an ordering drives the greedy for IS; anything else falls
/// back to brute force under the budget.
pub fn solve_on_class(
    problem: Problem,
    inst: &AnnotatedInstance,
    certificate: &Certificate,
    cfg: &SolverConfig,
) -> Result<Solved> {
    let g = &inst.graph;
    match certificate {
        Certificate::Decomposition(td) => {
            let Some(kind) = dp_kind(problem, inst) else {
                return exact(problem, inst, &cfg.budget);
            };
            if td.width() > cfg.width_cap {
                return Err(Error::Budget(format!(
                    "decomposition width {} exceeds the DP width cap of {}",
                    td.width(),
                    cfg.width_cap
                )));
            }
            let nice = make_nice(td, g).map_err(|e| match e {
                Error::Internal(m) => {
                    Error::Input(format!("invalid decomposition certificate: {m}"))
                }
                e => e,
            })?;
            let chosen = run_dp(&nice, inst, kind)?;
            let solution = if problem == Problem::VC {
                Solution::Vertices(g.vertices().filter(|v| !chosen.contains(v)).collect())
            } else {
                Solution::Vertices(chosen)
            };
            Ok(Solved {
                solution,
                rho: 1.0,
                method: "tree-dp".into(),
            })
        }
        Certificate::Ordering(l) if problem == Problem::IS => {
            let (s, r) = greedy_independent_set(g, l)?;
            Ok(Solved {
                solution: Solution::Vertices(s),
                rho: 1.0 / (r as f64 + 1.0),
                method: "greedy-degeneracy".into(),
            })
        }
        Certificate::Ordering(_) => exact(problem, inst, &cfg.budget),
    }
}

/// A decomposition of `g` for the DP: exact for small graphs, otherwise the
/// recursive builder.
pub fn certify_decomposition(g: &Graph, cfg: &SolverConfig) -> Result<TreeDecomposition> {
    if g.order() <= cfg.exact_width_limit {
        exact_tree_decomposition(g, &cfg.budget)
    } else {
        Ok(tree_decomposition(g, &SeparatorConfig::default()))
    }
}

/// Build the certificate the solver needs and run it.
pub fn solve(
    problem: Problem,
    inst: &AnnotatedInstance,
    solver: SolverKind,
    cfg: &SolverConfig,
) -> Result<Solved> {
    match solver {
        SolverKind::TreeDp => {
            let td = certify_decomposition(&inst.graph, cfg)?;
            solve_on_class(problem, inst, &Certificate::Decomposition(td), cfg)
        }
        SolverKind::GreedyDegeneracy => {
            let l = degeneracy(&inst.graph).1;
            solve_on_class(problem, inst, &Certificate::Ordering(l), cfg)
        }
        SolverKind::BruteForce => exact(problem, inst, &cfg.budget),
    }
}
