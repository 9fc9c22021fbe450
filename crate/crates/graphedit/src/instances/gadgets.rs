//! Hardness gadgets: set cover (or vertex cover) encoded as editing
//! instances, with role labels and maps from edit sets back to covers.
//!
//! Every generator lays vertex ids out in contiguous role blocks in a fixed
//! order, so two runs on the same input produce identical graphs and labels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, EditKind, EditSet, Graph, VertexOrdering};

use super::SetCoverInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    Treewidth,
    BoundedDegree,
    Degeneracy,
    StarForestVertex,
    WeakColoring,
}

/// Which piece of a split gadget a vertex is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitPart {
    Clique(usize),
    Top,
    Bottom,
}

/// The role a vertex plays in its gadget. Set and element indices refer to
/// the source set-cover instance; `row` indexes the sets containing an
/// element, ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    // treewidth
    Central {
        set: usize,
    },
    Dummy {
        element: usize,
    },
    // bounded degree
    SetVertex {
        set: usize,
    },
    ElementVertex {
        element: usize,
    },
    Pendant {
        element: usize,
    },
    // degeneracy
    SetPath {
        set: usize,
        index: usize,
    },
    SetW {
        set: usize,
        index: usize,
    },
    SetHub {
        set: usize,
    },
    Split {
        set: usize,
        side: usize,
        depth: usize,
        part: SplitPart,
    },
    CycleVertex {
        element: usize,
        row: usize,
        index: usize,
    },
    Hub {
        element: usize,
        row: usize,
        index: usize,
    },
    Port {
        element: usize,
        row: usize,
    },
    // star forest
    Original {
        vertex: usize,
    },
    Subdivision {
        u: usize,
        v: usize,
    },
    Auxiliary {
        owner: usize,
    },
    // weak colouring
    Clique1 {
        set: usize,
    },
    Distinguished1 {
        set: usize,
    },
    Clique2 {
        set: usize,
    },
    Distinguished2 {
        set: usize,
    },
    ElementClique {
        element: usize,
    },
    SetElementClique {
        set: usize,
        element: usize,
    },
    PathVertex {
        set: usize,
        element: usize,
        index: usize,
    },
}

/// A generated gadget: the graph, one role per vertex id, and the target
/// parameter of the editing problem it encodes.
#[derive(Clone, Debug)]
pub struct GadgetArtifact {
    pub kind: GadgetKind,
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// r, d, w or k depending on the gadget.
    pub target: usize,
    /// The weak-colouring radius c for [`GadgetKind::WeakColoring`].
    pub radius: Option<usize>,
    pub sc: Option<SetCoverInstance>,
    /// The encoded graph for [`GadgetKind::StarForestVertex`].
    pub source: Option<Graph>,
}

/// The role-label sidecar written next to a gadget's edge list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoleSidecar {
    pub kind: GadgetKind,
    pub target: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radius: Option<usize>,
    pub roles: Vec<Role>,
}

impl GadgetArtifact {
    pub fn sidecar(&self) -> RoleSidecar {
        RoleSidecar {
            kind: self.kind,
            target: self.target,
            radius: self.radius,
            roles: self.roles.clone(),
        }
    }

    /// Vertex ids carrying a role matching `pred`, ascending.
    pub fn vertices_where(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.roles.len())
            .filter(|&v| pred(&self.roles[v]))
            .collect()
    }

    fn set_cover(&self) -> Result<&SetCoverInstance> {
        self.sc
            .as_ref()
            .ok_or_else(|| Error::Param(format!("{:?} gadget has no set-cover source", self.kind)))
    }

    fn expect_kind(&self, kind: GadgetKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Param(format!(
                "expected a {kind:?} gadget, got {:?}",
                self.kind
            )));
        }
        Ok(())
    }

    fn role(&self, v: usize) -> Result<Role> {
        self.roles
            .get(v)
            .copied()
            .ok_or_else(|| Error::InvalidEdit(format!("vertex {v} is not in the gadget")))
    }
}

/// Incremental graph builder that records a role for every vertex it adds.
struct Builder {
    edges: Vec<Edge>,
    roles: Vec<Role>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            edges: Vec::new(),
            roles: Vec::new(),
        }
    }

    fn add(&mut self, role: Role) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    fn join(&mut self, u: usize, v: usize) {
        self.edges.push(edge(u, v));
    }

    fn clique(&mut self, vs: &[usize]) {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.join(u, v);
            }
        }
    }

    fn finish(mut self) -> (Graph, Vec<Role>) {
        self.edges.sort_unstable();
        self.edges.dedup();
        (Graph::from_edges(self.roles.len(), &self.edges), self.roles)
    }
}

fn check_edit_kind(y: &EditSet, kind: EditKind) -> Result<()> {
    if y.kind != kind {
        return Err(Error::Param(format!(
            "this back-map takes a {kind:?} deletion set, got {:?}",
            y.kind
        )));
    }
    Ok(())
}

fn check_vertices(a: &GadgetArtifact, y: &EditSet) -> Result<()> {
    check_edit_kind(y, EditKind::Vertex)?;
    for &v in &y.vertices {
        a.role(v)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Treewidth / clique number

/// Central clique of one vertex per set; per element an outer clique of the
/// central vertices of its sets padded with dummies to size |F|.
/// Target treewidth is |F| − 2.
pub fn gen_tw_gadget(sc: &SetCoverInstance) -> Result<GadgetArtifact> {
    sc.check()?;
    let m = sc.sets.len();
    if m < 2 {
        return Err(Error::Input(
            "the treewidth gadget needs at least two sets".into(),
        ));
    }
    if let Some(i) = sc.sets.iter().position(|s| s.len() == sc.universe) {
        return Err(Error::Input(format!("set {i} contains the whole universe")));
    }
    if let Some(e) = (0..sc.universe).find(|&e| sc.frequency(e) == m) {
        return Err(Error::Input(format!("element {e} is in every set")));
    }
    let mut b = Builder::new();
    let central: Vec<usize> = (0..m).map(|set| b.add(Role::Central { set })).collect();
    b.clique(&central);
    for e in 0..sc.universe {
        let mut outer: Vec<usize> = sc
            .sets_containing(e)
            .into_iter()
            .map(|s| central[s])
            .collect();
        for _ in 0..m - sc.frequency(e) {
            outer.push(b.add(Role::Dummy { element: e }));
        }
        b.clique(&outer);
    }
    let (graph, roles) = b.finish();
    Ok(GadgetArtifact {
        kind: GadgetKind::Treewidth,
        graph,
        roles,
        target: m - 2,
        radius: None,
        sc: Some(sc.clone()),
        source: None,
    })
}

/// Central vertices map to their set; a dummy maps to the first set
/// containing its element.
pub fn map_tw_solution(a: &GadgetArtifact, y: &EditSet) -> Result<BTreeSet<usize>> {
    a.expect_kind(GadgetKind::Treewidth)?;
    check_vertices(a, y)?;
    let sc = a.set_cover()?;
    y.vertices
        .iter()
        .map(|&v| match a.role(v)? {
            Role::Central { set } => Ok(set),
            Role::Dummy { element } => Ok(sc.sets_containing(element)[0]),
            r => Err(Error::Internal(format!(
                "unexpected role {r:?} in treewidth gadget"
            ))),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Bounded degree

/// Set/element incidence graph with every element vertex padded by pendant
/// dummies to degree d + 1, where d = max(Δ, f_max).
pub fn gen_bdd_gadget(sc: &SetCoverInstance) -> Result<GadgetArtifact> {
    sc.check()?;
    let d = sc.max_set_size().max(sc.max_frequency());
    let mut b = Builder::new();
    let set_v: Vec<usize> = (0..sc.sets.len())
        .map(|set| b.add(Role::SetVertex { set }))
        .collect();
    let elem_v: Vec<usize> = (0..sc.universe)
        .map(|element| b.add(Role::ElementVertex { element }))
        .collect();
    for (s, members) in sc.sets.iter().enumerate() {
        for &e in members {
            b.join(set_v[s], elem_v[e]);
        }
    }
    for e in 0..sc.universe {
        for _ in 0..d + 1 - sc.frequency(e) {
            let p = b.add(Role::Pendant { element: e });
            b.join(elem_v[e], p);
        }
    }
    let (graph, roles) = b.finish();
    Ok(GadgetArtifact {
        kind: GadgetKind::BoundedDegree,
        graph,
        roles,
        target: d,
        radius: None,
        sc: Some(sc.clone()),
        source: None,
    })
}

/// Set vertices map to their set; element and pendant vertices map to the
/// first set containing the element.
pub fn map_bdd_solution(a: &GadgetArtifact, y: &EditSet) -> Result<BTreeSet<usize>> {
    a.expect_kind(GadgetKind::BoundedDegree)?;
    check_vertices(a, y)?;
    let sc = a.set_cover()?;
    y.vertices
        .iter()
        .map(|&v| match a.role(v)? {
            Role::SetVertex { set } => Ok(set),
            Role::ElementVertex { element } | Role::Pendant { element } => {
                Ok(sc.sets_containing(element)[0])
            }
            r => Err(Error::Internal(format!(
                "unexpected role {r:?} in bounded-degree gadget"
            ))),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Degeneracy

/// Identifies the designated deletion inside one set gadget.
#[derive(Clone, Debug)]
struct DeSetIds {
    hub: usize,
    w1: usize,
}

/// Degeneracy gadget for target r ≥ 2 (the generated graph has degeneracy
/// r + 1). Requires every element to lie in at least two sets.
///
/// Each set S gets a path x_1..x_r, an independent set w_1..w_r complete to
/// the path, a hub v_S adjacent to every w_j, and two chains of split gadgets
/// hanging off v_S. Each element e gets a cycle of r·f_e vertices in f_e
/// rows, r−1 hubs per row complete to that row and to the row's port; the
/// port of row i is wired to the chain ends of the i-th set containing e.
pub fn gen_de_gadget(sc: &SetCoverInstance, r: usize) -> Result<GadgetArtifact> {
    sc.check()?;
    if r < 2 {
        return Err(Error::Param(format!(
            "the degeneracy gadget needs r >= 2, got {r}"
        )));
    }
    if let Some(e) = (0..sc.universe).find(|&e| sc.frequency(e) < 2) {
        return Err(Error::Input(format!(
            "element {e} lies in fewer than two sets"
        )));
    }
    let mut b = Builder::new();

    // element gadgets first: ports[e][row]
    let mut ports: Vec<Vec<usize>> = Vec::with_capacity(sc.universe);
    for e in 0..sc.universe {
        let f = sc.frequency(e);
        let cycle: Vec<Vec<usize>> = (0..f)
            .map(|row| {
                (0..r)
                    .map(|index| {
                        b.add(Role::CycleVertex {
                            element: e,
                            row,
                            index,
                        })
                    })
                    .collect()
            })
            .collect();
        let flat: Vec<usize> = cycle.iter().flatten().copied().collect();
        for i in 0..flat.len() {
            b.join(flat[i], flat[(i + 1) % flat.len()]);
        }
        let mut row_ports = Vec::with_capacity(f);
        for (row, zs) in cycle.iter().enumerate() {
            let hubs: Vec<usize> = (0..r - 1)
                .map(|index| {
                    b.add(Role::Hub {
                        element: e,
                        row,
                        index,
                    })
                })
                .collect();
            let port = b.add(Role::Port { element: e, row });
            for &a in &hubs {
                for &z in zs.iter().chain([&port]) {
                    b.join(a, z);
                }
            }
            row_ports.push(port);
        }
        ports.push(row_ports);
    }

    let mut sets = Vec::with_capacity(sc.sets.len());
    for (s, members) in sc.sets.iter().enumerate() {
        let xs: Vec<usize> = (0..r)
            .map(|index| b.add(Role::SetPath { set: s, index }))
            .collect();
        for w in xs.windows(2) {
            b.join(w[0], w[1]);
        }
        let ws: Vec<usize> = (0..r)
            .map(|index| b.add(Role::SetW { set: s, index }))
            .collect();
        for &w in &ws {
            for &x in &xs {
                b.join(w, x);
            }
        }
        let hub = b.add(Role::SetHub { set: s });
        for &w in &ws {
            b.join(hub, w);
        }
        let targets: Vec<usize> = members
            .iter()
            .map(|&e| {
                let row = sc
                    .sets_containing(e)
                    .iter()
                    .position(|&t| t == s)
                    .expect("member set");
                ports[e][row]
            })
            .collect();
        for side in 0..2 {
            let mut parent = hub;
            let mut rest: &[usize] = &targets;
            let mut depth = 0;
            loop {
                let clique: Vec<usize> = (0..r)
                    .map(|j| {
                        b.add(Role::Split {
                            set: s,
                            side,
                            depth,
                            part: SplitPart::Clique(j),
                        })
                    })
                    .collect();
                b.clique(&clique);
                let top = b.add(Role::Split {
                    set: s,
                    side,
                    depth,
                    part: SplitPart::Top,
                });
                let bottom = b.add(Role::Split {
                    set: s,
                    side,
                    depth,
                    part: SplitPart::Bottom,
                });
                for &c in &clique {
                    b.join(top, c);
                    b.join(bottom, c);
                }
                b.join(bottom, parent);
                if rest.len() <= r {
                    for &p in rest {
                        b.join(top, p);
                    }
                    break;
                }
                for &p in &rest[..r - 1] {
                    b.join(top, p);
                }
                rest = &rest[r - 1..];
                parent = top;
                depth += 1;
            }
        }
        sets.push(DeSetIds { hub, w1: ws[0] });
    }
    let (graph, roles) = b.finish();
    Ok(GadgetArtifact {
        kind: GadgetKind::Degeneracy,
        graph,
        roles,
        target: r,
        radius: None,
        sc: Some(sc.clone()),
        source: None,
    })
}

/// Number of split copies beyond the two per set gadget: ⌈(|S| − r)/(r − 1)⌉
/// per side for sets larger than r.
pub fn de_extra_splits(set_size: usize, r: usize) -> usize {
    if set_size <= r {
        0
    } else {
        2 * (set_size - r).div_ceil(r - 1)
    }
}

fn de_set_ids(a: &GadgetArtifact) -> BTreeMap<usize, DeSetIds> {
    let mut ids: BTreeMap<usize, DeSetIds> = BTreeMap::new();
    for (v, role) in a.roles.iter().enumerate() {
        match *role {
            Role::SetHub { set } => ids.entry(set).or_insert(DeSetIds { hub: v, w1: v }).hub = v,
            Role::SetW { set, index: 0 } => {
                ids.entry(set).or_insert(DeSetIds { hub: v, w1: v }).w1 = v
            }
            _ => {}
        }
    }
    ids
}

/// The designated deletion for each chosen set: the hub v_S (vertex mode)
/// or the edge (v_S, w_1) (edge mode).
pub fn de_witness(a: &GadgetArtifact, cover: &BTreeSet<usize>, kind: EditKind) -> Result<EditSet> {
    a.expect_kind(GadgetKind::Degeneracy)?;
    let ids = de_set_ids(a);
    let mut pick = Vec::with_capacity(cover.len());
    for s in cover {
        pick.push(
            ids.get(s)
                .ok_or_else(|| Error::Param(format!("set {s} is not in the instance")))?,
        );
    }
    Ok(match kind {
        EditKind::Vertex => EditSet::from_vertices(&a.graph, pick.iter().map(|d| d.hub)),
        EditKind::Edge => EditSet::from_edges(&a.graph, pick.iter().map(|d| edge(d.hub, d.w1))),
    })
}

/// The set a vertex of the degeneracy gadget belongs to: its own set for
/// set-gadget and split vertices, the set of its row for element vertices.
fn de_owner(sc: &SetCoverInstance, role: Role) -> Option<usize> {
    match role {
        Role::SetPath { set, .. }
        | Role::SetW { set, .. }
        | Role::SetHub { set }
        | Role::Split { set, .. } => Some(set),
        Role::CycleVertex { element, row, .. }
        | Role::Hub { element, row, .. }
        | Role::Port { element, row } => Some(sc.sets_containing(element)[row]),
        _ => None,
    }
}

fn de_is_set_side(role: Role) -> bool {
    matches!(
        role,
        Role::SetPath { .. } | Role::SetW { .. } | Role::SetHub { .. } | Role::Split { .. }
    )
}

/// Map a deletion set to a cover by charging every deleted vertex or edge to
/// exactly one set (the set owning it; an edge prefers its set-side
/// endpoint), so the cover never exceeds the deletion set in size.
///
/// Any feasible deletion must touch, for every element e, the subgraph made
/// of e's element gadget, the set gadgets of sets containing e and the split
/// chains joining them — that subgraph alone has minimum degree r + 1 — and
/// every item of it is charged to a set containing e.
pub fn map_de_solution(a: &GadgetArtifact, y: &EditSet) -> Result<BTreeSet<usize>> {
    a.expect_kind(GadgetKind::Degeneracy)?;
    let sc = a.set_cover()?;
    let owner = |v: usize| -> Result<usize> {
        de_owner(sc, a.role(v)?)
            .ok_or_else(|| Error::Internal(format!("vertex {v} has no owning set")))
    };
    match y.kind {
        EditKind::Vertex => y.vertices.iter().map(|&v| owner(v)).collect(),
        EditKind::Edge => y
            .edges
            .iter()
            .map(|&(u, v)| {
                if !a.graph.has_edge(u, v) {
                    return Err(Error::InvalidEdit(format!(
                        "edge ({u},{v}) is not in the gadget"
                    )));
                }
                if de_is_set_side(a.role(u)?) {
                    owner(u)
                } else {
                    owner(v)
                }
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Star forest

/// Vertex-cover gadget for star-forest vertex deletion: subdivide every edge
/// once and hang 2n + 1 pendants off every original vertex.
pub fn gen_sf_vertex_gadget(g: &Graph) -> Result<GadgetArtifact> {
    let (h, ids) = g.compacted();
    let n = h.order();
    let mut b = Builder::new();
    let orig: Vec<usize> = (0..n)
        .map(|i| b.add(Role::Original { vertex: ids[i] }))
        .collect();
    for (u, v) in h.edges() {
        let s = b.add(Role::Subdivision {
            u: ids[u],
            v: ids[v],
        });
        b.join(orig[u], s);
        b.join(s, orig[v]);
    }
    for i in 0..n {
        for _ in 0..2 * n + 1 {
            let p = b.add(Role::Auxiliary { owner: ids[i] });
            b.join(orig[i], p);
        }
    }
    let (graph, roles) = b.finish();
    Ok(GadgetArtifact {
        kind: GadgetKind::StarForestVertex,
        graph,
        roles,
        target: 0,
        radius: None,
        sc: None,
        source: Some(g.clone()),
    })
}

/// Map a star-forest vertex deletion of the gadget to a vertex cover of the
/// source graph: originals map to themselves, pendants to their owner,
/// subdivision vertices to their smaller endpoint. Edges left uncovered
/// (possible only when the deletion is larger than 2n) are covered by their
/// smaller endpoint.
pub fn map_sf_vertex(a: &GadgetArtifact, y: &EditSet) -> Result<BTreeSet<usize>> {
    a.expect_kind(GadgetKind::StarForestVertex)?;
    check_vertices(a, y)?;
    let g = a
        .source
        .as_ref()
        .ok_or_else(|| Error::Internal("star-forest gadget without source graph".into()))?;
    let mut cover = BTreeSet::new();
    for &v in &y.vertices {
        cover.insert(match a.role(v)? {
            Role::Original { vertex } => vertex,
            Role::Auxiliary { owner } => owner,
            Role::Subdivision { u, v } => u.min(v),
            r => {
                return Err(Error::Internal(format!(
                    "unexpected role {r:?} in star-forest gadget"
                )))
            }
        });
    }
    for (u, v) in g.edges() {
        if !cover.contains(&u) && !cover.contains(&v) {
            cover.insert(u);
        }
    }
    Ok(cover)
}

/// The dominating set read off a star-forest edge deletion of `g` and the
/// size identity it satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SfEdgeIdentity {
    pub n: usize,
    pub m: usize,
    pub edit_size: usize,
    /// Star centres of G − y′ (isolated vertices included; the smaller end of
    /// a lone edge).
    pub dominating_set: BTreeSet<usize>,
    pub identity_holds: bool,
    pub dominates: bool,
}

/// For a star-forest edge deletion `y` of `g`, the star centres of `g − y`
/// form a dominating set of size n − m + |y|.
pub fn sf_edge_identity(g: &Graph, y: &EditSet) -> Result<SfEdgeIdentity> {
    check_edit_kind(y, EditKind::Edge)?;
    let h = crate::graph::apply_edits(g, y)?;
    if !crate::combinatorial::is_star_forest(&h) {
        return Err(Error::InfeasibleSolution(
            "the graph minus the deletion set is not a star forest".into(),
        ));
    }
    let mut centres = BTreeSet::new();
    for comp in h.components() {
        let centre = match comp.len() {
            1 | 2 => comp[0].min(*comp.last().unwrap()),
            _ => *comp
                .iter()
                .max_by_key(|&&v| (h.degree(v), std::cmp::Reverse(v)))
                .unwrap(),
        };
        centres.insert(centre);
    }
    let (n, m) = (g.order(), g.size());
    let dominates = g
        .vertices()
        .all(|v| centres.contains(&v) || g.neighbors(v).iter().any(|u| centres.contains(u)));
    Ok(SfEdgeIdentity {
        n,
        m,
        edit_size: y.len(),
        identity_holds: centres.len() + m == n + y.len(),
        dominating_set: centres,
        dominates,
    })
}

// ---------------------------------------------------------------------------
// Weak colouring number

/// ℓ = ⌊c/2⌋ and the smallest k with k ≥ 4·f_max and k ≥ ℓ + 3·f_max − 2.
pub fn wcn_parameters(f_max: usize, c: usize) -> (usize, usize) {
    let l = c / 2;
    (l, (4 * f_max).max((l + 3 * f_max).saturating_sub(2)))
}

/// Closed-form vertex count |F|(2k+1) + Σ_x (f_x² + (ℓ−3)f_x + k + 2).
pub fn wcn_vertex_count(sc: &SetCoverInstance, c: usize) -> usize {
    let (l, k) = wcn_parameters(sc.max_frequency(), c);
    // (ℓ − 3)·f_x can be negative; the per-element total never is.
    let per_element: i64 = (0..sc.universe)
        .map(|x| {
            let f = sc.frequency(x) as i64;
            f * f + (l as i64 - 3) * f + k as i64 + 2
        })
        .sum();
    sc.sets.len() * (2 * k + 1) + per_element as usize
}

/// Weak-colouring gadget for radius c ≥ 3.
///
/// The construction's parameter k counts reachable vertices other than the
/// source; this library's weak colouring number counts the source too, so
/// the artifact's `target` is k + 1 (the D² cliques alone have k + 1
/// vertices).
///
/// Per set: cliques D¹ (size k) and D² (size k+1) with distinguished
/// vertices v¹, v² joined by an edge. Per element x: a clique D_x of size
/// k − 3f_x + 2, and per set S ∋ x a clique D_{S,x} of size f_x and a path
/// p¹..p^ℓ with p¹ complete to D_x and D_{S,x}, and p^ℓ adjacent to v¹_S.
pub fn gen_wcn_gadget(sc: &SetCoverInstance, c: usize) -> Result<GadgetArtifact> {
    sc.check()?;
    if c < 3 {
        return Err(Error::Param(format!(
            "the weak-colouring gadget needs c >= 3, got {c}"
        )));
    }
    let (l, k) = wcn_parameters(sc.max_frequency(), c);
    let mut b = Builder::new();
    let mut v1 = Vec::with_capacity(sc.sets.len());
    for s in 0..sc.sets.len() {
        let mut d1: Vec<usize> = (0..k - 1)
            .map(|_| b.add(Role::Clique1 { set: s }))
            .collect();
        let hub1 = b.add(Role::Distinguished1 { set: s });
        d1.push(hub1);
        b.clique(&d1);
        let mut d2: Vec<usize> = (0..k).map(|_| b.add(Role::Clique2 { set: s })).collect();
        let hub2 = b.add(Role::Distinguished2 { set: s });
        d2.push(hub2);
        b.clique(&d2);
        b.join(hub1, hub2);
        v1.push(hub1);
    }
    for x in 0..sc.universe {
        let f = sc.frequency(x);
        let dx: Vec<usize> = (0..k + 2 - 3 * f)
            .map(|_| b.add(Role::ElementClique { element: x }))
            .collect();
        b.clique(&dx);
        for s in sc.sets_containing(x) {
            let dsx: Vec<usize> = (0..f)
                .map(|_| b.add(Role::SetElementClique { set: s, element: x }))
                .collect();
            b.clique(&dsx);
            let path: Vec<usize> = (0..l)
                .map(|index| {
                    b.add(Role::PathVertex {
                        set: s,
                        element: x,
                        index,
                    })
                })
                .collect();
            for w in path.windows(2) {
                b.join(w[0], w[1]);
            }
            for &u in dx.iter().chain(&dsx) {
                b.join(path[0], u);
            }
            b.join(path[l - 1], v1[s]);
        }
    }
    let (graph, roles) = b.finish();
    Ok(GadgetArtifact {
        kind: GadgetKind::WeakColoring,
        graph,
        roles,
        target: k + 1,
        radius: Some(c),
        sc: Some(sc.clone()),
        source: None,
    })
}

/// The canonical edit for a cover: v¹_S per chosen set (vertex mode) or the
/// edge (v¹_S, v²_S) (edge mode).
pub fn wcn_canonical_edit(
    a: &GadgetArtifact,
    cover: &BTreeSet<usize>,
    kind: EditKind,
) -> Result<EditSet> {
    a.expect_kind(GadgetKind::WeakColoring)?;
    let find = |want: Role| a.roles.iter().position(|&r| r == want);
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for &s in cover {
        let h1 = find(Role::Distinguished1 { set: s })
            .ok_or_else(|| Error::Param(format!("set {s} is not in the instance")))?;
        let h2 =
            find(Role::Distinguished2 { set: s }).expect("distinguished vertices come in pairs");
        vs.push(h1);
        es.push(edge(h1, h2));
    }
    Ok(match kind {
        EditKind::Vertex => EditSet::from_vertices(&a.graph, vs),
        EditKind::Edge => EditSet::from_edges(&a.graph, es),
    })
}

/// The ordering under which canonical solutions are checked. Listed from
/// the back (this library's orderings put reachable vertices first): all D¹
/// (without v¹), all D² (without v²), then per element its set-element
/// cliques, its own clique and its paths from the far end inwards (p^ℓ of
/// every set, …, p¹ of every set), then every v¹, then every v².
pub fn wcn_canonical_ordering(a: &GadgetArtifact) -> Result<VertexOrdering> {
    a.expect_kind(GadgetKind::WeakColoring)?;
    let sc = a.set_cover()?;
    let l = a.radius.unwrap_or(3) / 2;
    let mut order = Vec::with_capacity(a.roles.len());
    order.extend(a.vertices_where(|r| matches!(r, Role::Clique1 { .. })));
    order.extend(a.vertices_where(|r| matches!(r, Role::Clique2 { .. })));
    for x in 0..sc.universe {
        order.extend(a.vertices_where(
            |r| matches!(*r, Role::SetElementClique { element, .. } if element == x),
        ));
        order.extend(
            a.vertices_where(|r| matches!(*r, Role::ElementClique { element } if element == x)),
        );
        for depth in (0..l).rev() {
            order.extend(a.vertices_where(|r| matches!(*r, Role::PathVertex { element, index, .. } if element == x && index == depth)));
        }
    }
    order.extend(a.vertices_where(|r| matches!(r, Role::Distinguished1 { .. })));
    order.extend(a.vertices_where(|r| matches!(r, Role::Distinguished2 { .. })));
    order.reverse();
    Ok(VertexOrdering::new(order))
}

/// Charge every deleted vertex or edge to one set: set-gadget items and the
/// per-set parts of element gadgets to their set, an element's own clique
/// to the first set containing the element.
pub fn map_wcn_solution(a: &GadgetArtifact, y: &EditSet) -> Result<BTreeSet<usize>> {
    a.expect_kind(GadgetKind::WeakColoring)?;
    let sc = a.set_cover()?;
    let owner = |v: usize| -> Result<usize> {
        Ok(match a.role(v)? {
            Role::Clique1 { set }
            | Role::Distinguished1 { set }
            | Role::Clique2 { set }
            | Role::Distinguished2 { set }
            | Role::SetElementClique { set, .. }
            | Role::PathVertex { set, .. } => set,
            Role::ElementClique { element } => sc.sets_containing(element)[0],
            r => {
                return Err(Error::Internal(format!(
                    "unexpected role {r:?} in weak-colouring gadget"
                )))
            }
        })
    };
    match y.kind {
        EditKind::Vertex => y.vertices.iter().map(|&v| owner(v)).collect(),
        EditKind::Edge => y
            .edges
            .iter()
            .map(|&(u, v)| match a.role(u)? {
                Role::ElementClique { .. } => owner(v),
                _ => owner(u),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_edits, degeneracy};
    use crate::oracles::{
        exact_clique_number, exact_min_edit, exact_set_cover, exact_treewidth, EditPredicate,
        OracleBudget,
    };
    use crate::wcol::wcol_score;

    fn sc(universe: usize, sets: &[&[usize]]) -> SetCoverInstance {
        SetCoverInstance::new(
            universe,
            sets.iter().map(|s| s.iter().copied().collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn treewidth_gadget_small_example() {
        let inst = sc(3, &[&[0, 1], &[1, 2], &[2]]);
        let a = gen_tw_gadget(&inst).unwrap();
        assert_eq!(a.graph.order(), 7);
        assert_eq!(a.target, 1);
        let budget = OracleBudget::default();
        assert_eq!(exact_treewidth(&a.graph, &budget).unwrap(), 2);
        assert_eq!(exact_clique_number(&a.graph, &budget).unwrap(), 3);
        let opt = exact_min_edit(
            &a.graph,
            EditPredicate::TreewidthAtMost(1),
            EditKind::Vertex,
            &budget,
        )
        .unwrap();
        assert_eq!(opt.len(), exact_set_cover(&inst, &budget).unwrap().len());
        let cover = map_tw_solution(&a, &EditSet::from_vertices(&a.graph, [0, 1])).unwrap();
        assert_eq!(cover, [0, 1].into());
        let mapped = map_tw_solution(&a, &opt).unwrap();
        assert!(inst.is_cover(&mapped) && mapped.len() <= opt.len());
    }

    #[test]
    fn treewidth_gadget_preconditions() {
        assert!(
            matches!(gen_tw_gadget(&sc(2, &[&[0, 1], &[1]])), Err(Error::Input(m)) if m.contains("whole universe"))
        );
        assert!(
            matches!(gen_tw_gadget(&sc(2, &[&[0], &[0, 1]])), Err(Error::Input(m)) if m.contains("whole universe"))
        );
        assert!(
            matches!(gen_tw_gadget(&sc(3, &[&[0, 1], &[0, 2]])), Err(Error::Input(m)) if m.contains("every set"))
        );
    }

    #[test]
    fn bounded_degree_gadget() {
        let inst = sc(3, &[&[0, 1], &[1, 2], &[2]]);
        let a = gen_bdd_gadget(&inst).unwrap();
        assert_eq!(a.target, 2);
        for v in a.vertices_where(|r| matches!(r, Role::ElementVertex { .. })) {
            assert_eq!(a.graph.degree(v), 3);
        }
        let budget = OracleBudget::default();
        let opt = exact_min_edit(
            &a.graph,
            EditPredicate::MaxDegreeAtMost(2),
            EditKind::Vertex,
            &budget,
        )
        .unwrap();
        assert_eq!(opt.len(), 2);
        let pendant = a.vertices_where(|r| matches!(r, Role::Pendant { element: 0 }))[0];
        let cover = map_bdd_solution(&a, &EditSet::from_vertices(&a.graph, [pendant])).unwrap();
        assert_eq!(cover, [0].into());
    }

    #[test]
    fn degeneracy_gadget_example() {
        let inst = sc(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let a = gen_de_gadget(&inst, 2).unwrap();
        assert_eq!(degeneracy(&a.graph).0, 3);
        assert!(a.graph.order() <= 10 * 2 * 3 * 3);
        assert_eq!(a.roles.len(), a.graph.order());
        for kind in [EditKind::Vertex, EditKind::Edge] {
            let x = de_witness(&a, &[0, 1].into(), kind).unwrap();
            let h = apply_edits(&a.graph, &x).unwrap();
            assert!(degeneracy(&h).0 <= 2, "{kind:?}");
            assert_eq!(map_de_solution(&a, &x).unwrap(), [0, 1].into());
        }
        let x = de_witness(&a, &[0].into(), EditKind::Vertex).unwrap();
        assert_eq!(degeneracy(&apply_edits(&a.graph, &x).unwrap()).0, 3);
    }

    #[test]
    fn degeneracy_gadget_chains_splits() {
        let inst = sc(4, &[&[0, 1, 2, 3], &[0, 1], &[2, 3]]);
        let a = gen_de_gadget(&inst, 2).unwrap();
        let splits = |s: usize| {
            a.roles
                .iter()
                .filter(|r| matches!(r, Role::Split { set, part: SplitPart::Top, .. } if *set == s))
                .count()
        };
        assert_eq!(splits(0), 2 + de_extra_splits(4, 2));
        assert_eq!(splits(1), 2);
        assert!(a.graph.vertices().all(|v| !matches!(
            a.roles[v],
            Role::Split {
                part: SplitPart::Top,
                ..
            }
        ) || a.graph.degree(v) <= 2 + 2));
        assert_eq!(degeneracy(&a.graph).0, 3);
        assert!(gen_de_gadget(&sc(2, &[&[0, 1], &[1]]), 2).is_err());
        assert!(gen_de_gadget(&inst, 1).is_err());
    }

    #[test]
    fn star_forest_vertex_gadget() {
        let a = gen_sf_vertex_gadget(&Graph::cycle(3)).unwrap();
        assert_eq!(a.graph.order(), 27);
        let originals = a.vertices_where(|r| matches!(r, Role::Original { .. }));
        let x = EditSet::from_vertices(&a.graph, originals[..2].iter().copied());
        assert!(crate::combinatorial::is_star_forest(
            &apply_edits(&a.graph, &x).unwrap()
        ));
        assert_eq!(map_sf_vertex(&a, &x).unwrap(), [0, 1].into());
    }

    #[test]
    fn star_forest_edge_identity_on_c5() {
        let g = Graph::cycle(5);
        let y = EditSet::from_edges(&g, [(0, 1), (2, 3), (3, 4)]);
        let id = sf_edge_identity(&g, &y).unwrap();
        assert!(id.identity_holds && id.dominates);
        assert_eq!(id.dominating_set.len(), 3);
    }

    #[test]
    fn weak_colouring_gadget_size_and_canonical_order() {
        let inst = sc(2, &[&[0, 1], &[0, 1]]);
        assert_eq!(wcn_parameters(2, 3), (1, 8));
        assert_eq!(wcn_vertex_count(&inst, 3), 54);
        let a = gen_wcn_gadget(&inst, 3).unwrap();
        assert_eq!(a.graph.order(), 54);
        let l = wcn_canonical_ordering(&a).unwrap();
        assert!(l.is_ordering_of(&a.graph));
        assert!(wcol_score(&a.graph, &l, 3).score > a.target);
        for kind in [EditKind::Vertex, EditKind::Edge] {
            let x = wcn_canonical_edit(&a, &[0].into(), kind).unwrap();
            let h = apply_edits(&a.graph, &x).unwrap();
            let l = VertexOrdering::new(
                l.as_slice()
                    .iter()
                    .copied()
                    .filter(|&v| h.is_live(v))
                    .collect(),
            );
            assert_eq!(wcol_score(&h, &l, 3).score, a.target, "{kind:?}");
            assert_eq!(map_wcn_solution(&a, &x).unwrap(), [0].into());
        }
        assert!(gen_wcn_gadget(&inst, 2).is_err());
    }

    #[test]
    fn weak_colouring_target_is_forced_by_the_second_clique() {
        let inst = sc(2, &[&[0, 1], &[0, 1]]);
        let a = gen_wcn_gadget(&inst, 3).unwrap();
        let (_, k) = wcn_parameters(2, 3);
        let d2: std::collections::BTreeSet<usize> = a
            .vertices_where(|r| {
                matches!(
                    *r,
                    Role::Clique2 { set: 0 } | Role::Distinguished2 { set: 0 }
                )
            })
            .into_iter()
            .collect();
        assert_eq!(d2.len(), k + 1);
        let clique = a.graph.induced(&d2);
        assert_eq!(clique.size(), (k + 1) * k / 2);
        // any ordering scores at least the clique size, so k + 1 is the best a
        // canonical solution can certify
        assert!(
            wcol_score(
                &clique,
                &VertexOrdering::new(d2.iter().copied().collect()),
                3
            )
            .score
                == k + 1
        );
    }
}
