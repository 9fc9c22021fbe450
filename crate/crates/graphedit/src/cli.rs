//! Batch front-end: `edit`, `round`, `gen`, `check` and `oracle`.
//!
//! Every command writes a JSON [`ReportDocument`] (or generated files).
//! Exit codes: 0 success, 2 input/parameter error (including a rejected
//! certificate), 3 budget exceeded, 1 anything else.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::combinatorial::{
    bounded_degree_edge_edit, is_star_forest, star_forest_edge_edit, star_forest_vertex_edit,
};
use crate::degeneracy::{
    degen_reduce_to_r, local_ratio_vertex_edit, lp_edge_edit, lp_vertex_edit, BaseEditor,
};
use crate::error::{Error, Result};
use crate::graph::{apply_edits, degeneracy, EditKind, EditSet, Graph, VertexOrdering, Weight};
use crate::instances::{self, GadgetArtifact, PlantedClass, PlantedParams, SetCoverInstance};
use crate::io::{format_weight, parse_weight, read_graph, write_graph};
use crate::oracles::{
    exact_clique_number, exact_min_edit, exact_set_cover, exact_treewidth, EditPredicate,
    OracleBudget,
};
use crate::rounding::{
    check_feasible, exact_solution, structural_round, AnnotatedInstance, Editor, PipelineConfig,
    Problem, RoundingReport, SolverKind,
};
use crate::wcol::{exact_wcol, wc_edit, wcol_score};
use crate::width::{
    pathwidth_node_edit, tree_decomposition, treewidth_node_edit, PathDecomposition,
    SeparatorConfig, TreeDecomposition, WidthEditConfig,
};

pub const REPORT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "graphedit",
    version,
    about = "Edit graphs into structural classes, round optimisation problems through the edit, generate gadgets and check certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an editing algorithm and certify the achieved parameter.
    Edit(EditArgs),
    /// Edit, solve on the edited graph and lift the solution back.
    Round(RoundArgs),
    /// Generate gadgets, integrality-gap, planted or random instances.
    Gen(GenArgs),
    /// Re-validate a report's edit set and certificate against a graph.
    Check(CheckArgs),
    /// Run an exact oracle.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Degeneracy,
    Treewidth,
    Pathwidth,
    BoundedDegree,
    StarForest,
    Wcol,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Algo {
    LocalRatio,
    Lp,
    ReduceTo,
    Separator,
    Matching,
    HittingSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum KindArg {
    Vertex,
    Edge,
}

impl From<KindArg> for EditKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Vertex => EditKind::Vertex,
            KindArg::Edge => EditKind::Edge,
        }
    }
}

/// Target and algorithm parameters shared by `edit`, `round` and `oracle`.
#[derive(Args, Debug, Clone, Serialize)]
struct Params {
    /// Target degeneracy.
    #[arg(long)]
    r: Option<usize>,
    /// Local-ratio factor β.
    #[arg(long, default_value = "4")]
    beta: String,
    /// Rounding threshold ε (rational, e.g. 1/6).
    #[arg(long)]
    eps: Option<String>,
    /// Target treewidth / pathwidth.
    #[arg(long)]
    w: Option<usize>,
    /// Separator constant c1 of the width threshold.
    #[arg(long, default_value = "1")]
    c1: String,
    /// Target maximum degree.
    #[arg(long)]
    d: Option<usize>,
    /// Weak-colouring radius.
    #[arg(long)]
    c: Option<usize>,
    /// Target weak colouring number.
    #[arg(long)]
    k: Option<usize>,
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Param(format!("--{name} is required here")))
}

fn weight_param(s: &str, name: &str) -> Result<Weight> {
    parse_weight(s).map_err(|e| Error::Param(format!("--{name}: {e}")))
}

impl Params {
    fn beta(&self) -> Result<Weight> {
        weight_param(&self.beta, "beta")
    }
    fn c1(&self) -> Result<Weight> {
        weight_param(&self.c1, "c1")
    }
    fn eps_or(&self, default: &str) -> Result<Weight> {
        weight_param(self.eps.as_deref().unwrap_or(default), "eps")
    }

    fn predicate(&self, class: Class) -> Result<EditPredicate> {
        Ok(match class {
            Class::Degeneracy => EditPredicate::DegeneracyAtMost(need(self.r, "r")?),
            Class::Treewidth => EditPredicate::TreewidthAtMost(need(self.w, "w")?),
            Class::Pathwidth => {
                return Err(Error::Param(
                    "no exact oracle for pathwidth; use --class treewidth".into(),
                ))
            }
            Class::BoundedDegree => EditPredicate::MaxDegreeAtMost(need(self.d, "d")?),
            Class::StarForest => EditPredicate::StarForest,
            Class::Wcol => EditPredicate::WcolAtMost {
                c: need(self.c, "c")?,
                k: need(self.k, "k")?,
            },
        })
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct BudgetArgs {
    /// Largest graph the exact oracles accept.
    #[arg(long, default_value_t = 22)]
    max_vertices: usize,
    /// Largest edge count for edge-deletion enumeration.
    #[arg(long, default_value_t = 40)]
    max_edges: usize,
    /// Subsets an enumeration may test.
    #[arg(long, default_value_t = 20_000_000)]
    max_subsets: u64,
    /// Wall-clock cap per oracle call, in seconds.
    #[arg(long, default_value_t = 120)]
    timeout_secs: u64,
    /// Vertex cap for the exact weak-colouring search.
    #[arg(long, default_value_t = 9)]
    max_wcol_vertices: usize,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        OracleBudget {
            max_vertices: self.max_vertices,
            max_edges: self.max_edges,
            max_subsets: self.max_subsets,
            wall_clock: Duration::from_secs(self.timeout_secs),
            max_wcol_vertices: self.max_wcol_vertices,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct EditArgs {
    #[arg(long, value_enum)]
    class: Class,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, value_enum, default_value = "vertex")]
    kind: KindArg,
    #[command(flatten)]
    params: Params,
    /// Input graph(s). With several inputs `-o` names a directory.
    #[arg(short, long = "input", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Compare against the exact minimum edit.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Worker threads across input files.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum EditorArg {
    LocalRatio,
    LpVertex,
    LpEdge,
    Treewidth,
    BoundedDegree,
    StarForestVertex,
    StarForestEdge,
    WcolVertex,
    WcolEdge,
}

#[derive(Args, Debug, Serialize)]
struct RoundArgs {
    /// IS, VC, FVS, MMM, CRN, DS, ADS, EDS or MaxCut.
    #[arg(long)]
    problem: String,
    #[arg(long, value_enum)]
    editor: EditorArg,
    #[command(flatten)]
    params: Params,
    /// tree-dp, greedy-degeneracy or brute-force.
    #[arg(long, default_value = "tree-dp")]
    solver: String,
    /// Target set B for annotated dominating set (comma separated; default all).
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<usize>>,
    /// Domination radius for annotated dominating set.
    #[arg(long, default_value_t = 1)]
    radius: usize,
    /// Skip the exact oracles.
    #[arg(long)]
    no_measure: bool,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GadgetArg {
    ScTw,
    ScBdd,
    ScDe,
    VcSf,
    ScWcn,
    Gap,
    Planted,
    Gnp,
    RandomSc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum PlantedArg {
    Forest,
    Degenerate,
    KTree,
}

#[derive(Args, Debug, Serialize)]
struct GenArgs {
    #[arg(long, value_enum)]
    gadget: GadgetArg,
    /// Set-cover JSON input for the sc-* gadgets.
    #[arg(long)]
    sc: Option<PathBuf>,
    /// Graph input for vc-sf.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Degeneracy target for sc-de.
    #[arg(long)]
    r: Option<usize>,
    /// Radius for sc-wcn.
    #[arg(long)]
    c: Option<usize>,
    /// Size parameter: n for gap/planted/gnp, universe size for random-sc.
    #[arg(long)]
    n: Option<usize>,
    /// Number of sets for random-sc.
    #[arg(long)]
    sets: Option<usize>,
    /// Minimum element frequency for random-sc.
    #[arg(long, default_value_t = 1)]
    min_frequency: usize,
    #[arg(long, value_enum, default_value = "vertex")]
    mode: KindArg,
    #[arg(long, value_enum, default_value = "forest")]
    planted: PlantedArg,
    /// Degeneracy bound of a planted degenerate base.
    #[arg(long, default_value_t = 2)]
    planted_r: usize,
    /// k of a planted k-tree.
    #[arg(long, default_value_t = 2)]
    planted_k: usize,
    /// Noise amount for planted instances.
    #[arg(long, default_value_t = 0)]
    noise: usize,
    #[arg(long, value_enum, default_value = "edge")]
    noise_kind: KindArg,
    /// Edge probability for gnp.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph output (set-cover JSON for random-sc).
    #[arg(short, long)]
    output: PathBuf,
    /// Role-label sidecar JSON for gadgets.
    #[arg(long)]
    roles: Option<PathBuf>,
    /// Generation report (target parameter, planted edit, sizes).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct CheckArgs {
    /// Report produced by `edit` or `round`.
    #[arg(long)]
    certificate: PathBuf,
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum OracleWhat {
    Edit,
    Treewidth,
    Clique,
    Wcol,
    SetCover,
    Opt,
}

#[derive(Args, Debug, Serialize)]
struct OracleArgs {
    #[arg(long, value_enum)]
    what: OracleWhat,
    #[arg(long, value_enum)]
    class: Option<Class>,
    #[arg(long, value_enum, default_value = "vertex")]
    kind: KindArg,
    #[command(flatten)]
    params: Params,
    /// Problem for `--what opt`.
    #[arg(long)]
    problem: Option<String>,
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1)]
    radius: usize,
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(long)]
    sc: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

// ---------------------------------------------------------------------------
// Reports and certificates

/// Evidence for an achieved structural parameter of the edited graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    /// Every vertex has at most `value` neighbours later in the ordering.
    Ordering {
        ordering: VertexOrdering,
    },
    /// Weak c-reachability sets under the ordering have at most `value` vertices.
    WcolOrdering {
        ordering: VertexOrdering,
        c: usize,
    },
    TreeDecomposition {
        decomposition: TreeDecomposition,
    },
    PathDecomposition {
        decomposition: PathDecomposition,
    },
    /// Recomputed directly from the edited graph.
    MaxDegree,
    StarForest,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Achieved {
    pub parameter: String,
    pub value: usize,
    /// The bound the algorithm promises, when it has one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<f64>,
    /// Whether `value` respects `bound`. Recorded, not enforced: the
    /// certificate vouches for `value` either way.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub within_bound: Option<bool>,
    pub certificate: Certificate,
}

impl Achieved {
    fn with_bound(mut self, bound: Option<f64>) -> Self {
        self.bound = bound;
        self.within_bound = bound.map(|b| self.value as f64 <= b + 1e-9);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub opt: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

/// The JSON document every command emits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub tool_version: String,
    pub report_version: u32,
    /// SHA-256 of the input file(s), hex.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input_digest: Option<String>,
    pub subcommand: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edit: Option<EditSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cost: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub achieved: Option<Achieved>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleComparison>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rounding: Option<RoundingReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl ReportDocument {
    fn new(subcommand: &str, parameters: Value) -> Self {
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            report_version: REPORT_VERSION,
            input_digest: None,
            subcommand: subcommand.into(),
            parameters,
            edit: None,
            cost: None,
            achieved: None,
            oracle: None,
            rounding: None,
            result: None,
            timings_ms: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("report JSON: {e}")))
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Check `a` against the edited graph `h`.
pub fn validate_achieved(h: &Graph, a: &Achieved) -> Result<()> {
    let reject = |msg: String| Err(Error::Input(format!("certificate rejected: {msg}")));
    match &a.certificate {
        Certificate::Ordering { ordering } => {
            if !ordering.is_ordering_of(h) {
                return reject("ordering does not list the edited graph's vertices".into());
            }
            let f = ordering.max_forward_degree(h);
            if f > a.value {
                return reject(format!("forward degree {f} exceeds claimed {}", a.value));
            }
        }
        Certificate::WcolOrdering { ordering, c } => {
            if !ordering.is_ordering_of(h) {
                return reject("ordering does not list the edited graph's vertices".into());
            }
            let s = wcol_score(h, ordering, *c).score;
            if s > a.value {
                return reject(format!(
                    "weak {c}-colouring score {s} exceeds claimed {}",
                    a.value
                ));
            }
        }
        Certificate::TreeDecomposition { decomposition } => {
            decomposition
                .validate(h)
                .or_else(|e| reject(e.to_string()))?;
            if decomposition.width() > a.value {
                return reject(format!(
                    "decomposition width {} exceeds claimed {}",
                    decomposition.width(),
                    a.value
                ));
            }
        }
        Certificate::PathDecomposition { decomposition } => {
            decomposition
                .validate(h)
                .or_else(|e| reject(e.to_string()))?;
            if decomposition.width() > a.value {
                return reject(format!(
                    "path width {} exceeds claimed {}",
                    decomposition.width(),
                    a.value
                ));
            }
        }
        Certificate::MaxDegree => {
            if h.max_degree() > a.value {
                return reject(format!(
                    "maximum degree {} exceeds claimed {}",
                    h.max_degree(),
                    a.value
                ));
            }
        }
        Certificate::StarForest => {
            if !is_star_forest(h) {
                return reject("edited graph is not a star forest".into());
            }
        }
    }
    Ok(())
}

/// A certificate for the class parameter of `h` computed from scratch.
fn certify(class: Class, h: &Graph, c: Option<usize>) -> Achieved {
    match class {
        Class::Degeneracy => {
            let (r, order) = degeneracy(h);
            Achieved {
                parameter: "degeneracy".into(),
                value: r,
                bound: None,
                within_bound: None,
                certificate: Certificate::Ordering { ordering: order },
            }
        }
        Class::Treewidth | Class::Pathwidth => {
            let td = tree_decomposition(h, &SeparatorConfig::default());
            Achieved {
                parameter: "treewidth".into(),
                value: td.width(),
                bound: None,
                within_bound: None,
                certificate: Certificate::TreeDecomposition { decomposition: td },
            }
        }
        Class::BoundedDegree => Achieved {
            parameter: "max-degree".into(),
            value: h.max_degree(),
            bound: None,
            within_bound: None,
            certificate: Certificate::MaxDegree,
        },
        Class::StarForest => Achieved {
            parameter: "star-forest".into(),
            value: usize::from(!is_star_forest(h)),
            bound: None,
            within_bound: None,
            certificate: Certificate::StarForest,
        },
        Class::Wcol => {
            let c = c.unwrap_or(1);
            let ordering = degeneracy(h).1.reversed();
            let value = wcol_score(h, &ordering, c).score;
            Achieved {
                parameter: format!("wcol-{c}"),
                value,
                bound: None,
                within_bound: None,
                certificate: Certificate::WcolOrdering { ordering, c },
            }
        }
    }
}

fn run_edit_algorithm(
    g: &Graph,
    class: Class,
    algo: Algo,
    kind: EditKind,
    p: &Params,
) -> Result<(EditSet, Achieved)> {
    let invalid = || {
        Error::Param(format!(
            "algorithm {algo:?} with {kind:?} deletion is not available for class {class:?}; valid: degeneracy: local-ratio (vertex), lp (vertex|edge), reduce-to (vertex|edge); treewidth/pathwidth: separator (vertex); bounded-degree: matching (edge); star-forest: hitting-set (vertex|edge); wcol: lp (vertex|edge)"
        ))
    };
    let certified = |x: EditSet, bound: Option<f64>| -> Result<(EditSet, Achieved)> {
        let h = apply_edits(g, &x)?;
        Ok((x, certify(class, &h, p.c).with_bound(bound)))
    };
    match (class, algo, kind) {
        (Class::Degeneracy, Algo::LocalRatio, EditKind::Vertex) => {
            let r = need(p.r, "r")?;
            let beta = p.beta()?;
            let x = local_ratio_vertex_edit(g, r, beta)?;
            certified(
                x,
                Some(crate::degeneracy::lp_round::to_f64(beta) * r as f64),
            )
        }
        (Class::Degeneracy, Algo::Lp, _) => {
            let r = need(p.r, "r")?;
            let out = match kind {
                EditKind::Vertex => lp_vertex_edit(g, r, p.eps_or("1/6")?)?,
                EditKind::Edge => lp_edge_edit(g, r, p.eps_or("1/5")?)?,
            };
            // the rounded orientation bounds out-degrees, hence degeneracy ≤ 2·bound
            certified(out.edit, Some(2.0 * out.out_degree_bound as f64))
        }
        (Class::Degeneracy, Algo::ReduceTo, _) => {
            let r = need(p.r, "r")?;
            let base = match kind {
                EditKind::Vertex => BaseEditor::LocalRatio { beta: p.beta()? },
                EditKind::Edge => BaseEditor::LpEdge {
                    eps: p.eps_or("1/5")?,
                },
            };
            let out = degen_reduce_to_r(g, r, base, kind)?;
            certified(out.edit, Some(r as f64))
        }
        (Class::Treewidth, Algo::Separator, EditKind::Vertex) => {
            let out =
                treewidth_node_edit(g, need(p.w, "w")?, p.c1()?, &WidthEditConfig::default())?;
            let a = Achieved {
                parameter: "treewidth".into(),
                value: out.decomposition.width(),
                bound: None,
                within_bound: None,
                certificate: Certificate::TreeDecomposition {
                    decomposition: out.decomposition,
                },
            }
            .with_bound(Some(out.threshold));
            Ok((out.edit, a))
        }
        (Class::Pathwidth, Algo::Separator, EditKind::Vertex) => {
            let out =
                pathwidth_node_edit(g, need(p.w, "w")?, p.c1()?, &WidthEditConfig::default())?;
            let a = Achieved {
                parameter: "pathwidth".into(),
                value: out.path.width(),
                bound: None,
                within_bound: None,
                certificate: Certificate::PathDecomposition {
                    decomposition: out.path,
                },
            }
            .with_bound(Some(out.width_bound as f64));
            Ok((out.edit, a))
        }
        (Class::BoundedDegree, Algo::Matching, EditKind::Edge) => {
            let d = need(p.d, "d")?;
            certified(bounded_degree_edge_edit(g, d), Some(d as f64))
        }
        (Class::StarForest, Algo::HittingSet, EditKind::Vertex) => {
            certified(star_forest_vertex_edit(g), Some(0.0))
        }
        (Class::StarForest, Algo::HittingSet, EditKind::Edge) => {
            certified(star_forest_edge_edit(g), Some(0.0))
        }
        (Class::Wcol, Algo::Lp, _) => {
            let c = need(p.c, "c")?;
            let out = wc_edit(g, c, need(p.k, "k")?, p.eps_or("1/10")?, kind)?;
            let a = Achieved {
                parameter: format!("wcol-{c}"),
                value: out.ordering_score,
                bound: None,
                within_bound: None,
                certificate: Certificate::WcolOrdering {
                    ordering: out.ordering,
                    c,
                },
            }
            .with_bound(Some(out.width_bound));
            Ok((out.edit, a))
        }
        _ => Err(invalid()),
    }
}

// ---------------------------------------------------------------------------
// Commands

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, doc: &ReportDocument) -> Result<()> {
    match output {
        Some(p) => write_text(p, &doc.to_json()),
        None => {
            print!("{}", doc.to_json());
            Ok(())
        }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn edit_one(args: &EditArgs, input: &Path) -> Result<ReportDocument> {
    let text = read_text(input)?;
    let g = read_graph(&text)?;
    let mut doc = ReportDocument::new(
        "edit",
        json!({ "class": args.class, "algo": args.algo, "kind": args.kind, "params": args.params, "input": input }),
    );
    doc.input_digest = Some(digest(text.as_bytes()));
    let t = Instant::now();
    let (x, achieved) =
        run_edit_algorithm(&g, args.class, args.algo, args.kind.into(), &args.params)?;
    doc.timings_ms.insert("edit".into(), ms(t));
    doc.cost = Some(format_weight(&x.total_weight));
    if args.oracle {
        let t = Instant::now();
        let pred = args.params.predicate(if args.class == Class::Pathwidth {
            Class::Treewidth
        } else {
            args.class
        })?;
        doc.oracle = Some(
            match exact_min_edit(&g, pred, args.kind.into(), &args.budget.budget()) {
                Ok(opt) => OracleComparison {
                    status: "exact".into(),
                    opt: Some(opt.len()),
                    ratio: (!opt.is_empty()).then(|| x.len() as f64 / opt.len() as f64),
                    message: None,
                },
                Err(Error::Budget(m)) => OracleComparison {
                    status: "budget".into(),
                    opt: None,
                    ratio: None,
                    message: Some(m),
                },
                Err(e) => return Err(e),
            },
        );
        doc.timings_ms.insert("oracle".into(), ms(t));
    }
    doc.edit = Some(x);
    doc.achieved = Some(achieved);
    Ok(doc)
}

fn cmd_edit(args: &EditArgs) -> Result<()> {
    if args.inputs.len() == 1 {
        let doc = edit_one(args, &args.inputs[0])?;
        return emit(args.output.as_deref(), &doc);
    }
    let dir = args
        .output
        .as_ref()
        .ok_or_else(|| Error::Param("several inputs need -o <directory>".into()))?;
    std::fs::create_dir_all(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    let jobs = args.jobs.max(1);
    let chunk = args.inputs.len().div_ceil(jobs);
    let results: Vec<Result<()>> = std::thread::scope(|s| {
        let handles: Vec<_> = args
            .inputs
            .chunks(chunk)
            .map(|files| {
                s.spawn(move || -> Result<()> {
                    for f in files {
                        let doc = edit_one(args, f)?;
                        let name = f
                            .file_stem()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_else(|| "graph".into());
                        write_text(&dir.join(format!("{name}.json")), &doc.to_json())?;
                    }
                    Ok(())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(Error::Internal("worker panicked".into())))
            })
            .collect()
    });
    results.into_iter().collect()
}

fn editor_from(arg: EditorArg, p: &Params) -> Result<(Editor, Class)> {
    Ok(match arg {
        EditorArg::LocalRatio => (
            Editor::DegeneracyLocalRatio {
                r: need(p.r, "r")?,
                beta: p.beta()?,
            },
            Class::Degeneracy,
        ),
        EditorArg::LpVertex => (
            Editor::DegeneracyLpVertex {
                r: need(p.r, "r")?,
                eps: p.eps_or("1/6")?,
            },
            Class::Degeneracy,
        ),
        EditorArg::LpEdge => (
            Editor::DegeneracyLpEdge {
                r: need(p.r, "r")?,
                eps: p.eps_or("1/5")?,
            },
            Class::Degeneracy,
        ),
        EditorArg::Treewidth => (
            Editor::TreewidthVertex {
                w: need(p.w, "w")?,
                c1: p.c1()?,
            },
            Class::Treewidth,
        ),
        EditorArg::BoundedDegree => (
            Editor::BoundedDegreeEdge { d: need(p.d, "d")? },
            Class::BoundedDegree,
        ),
        EditorArg::StarForestVertex => (Editor::StarForestVertex, Class::StarForest),
        EditorArg::StarForestEdge => (Editor::StarForestEdge, Class::StarForest),
        EditorArg::WcolVertex => (
            Editor::WcolVertex {
                c: need(p.c, "c")?,
                k: need(p.k, "k")?,
                eps: p.eps_or("1/10")?,
            },
            Class::Wcol,
        ),
        EditorArg::WcolEdge => (
            Editor::WcolEdge {
                c: need(p.c, "c")?,
                k: need(p.k, "k")?,
                eps: p.eps_or("1/10")?,
            },
            Class::Wcol,
        ),
    })
}

fn annotated(g: &Graph, targets: &Option<Vec<usize>>, radius: usize) -> Result<AnnotatedInstance> {
    let b: BTreeSet<usize> = match targets {
        Some(t) => t.iter().copied().collect(),
        None => g.vertices().collect(),
    };
    AnnotatedInstance::new(g, b, radius)
}

fn cmd_round(args: &RoundArgs) -> Result<()> {
    let problem: Problem = args.problem.parse()?;
    let solver: SolverKind = args.solver.parse()?;
    let text = read_text(&args.input)?;
    let g = read_graph(&text)?;
    let inst = annotated(&g, &args.targets, args.radius)?;
    let (editor, class) = editor_from(args.editor, &args.params)?;
    let cfg = PipelineConfig {
        measure: !args.no_measure,
        oracle: args.budget.budget(),
        ..PipelineConfig::default()
    };
    let mut doc = ReportDocument::new(
        "round",
        json!({ "problem": problem, "editor": editor, "solver": solver, "targets": args.targets, "radius": args.radius, "input": args.input }),
    );
    doc.input_digest = Some(digest(text.as_bytes()));
    let t = Instant::now();
    let rep = structural_round(&inst, &editor, problem, solver, &cfg)?;
    doc.timings_ms.insert("pipeline".into(), ms(t));
    let h = apply_edits(&g, &rep.edit)?;
    doc.achieved = Some(certify(class, &h, args.params.c));
    doc.cost = Some(rep.lifted_cost.to_string());
    doc.edit = Some(rep.edit.clone());
    doc.rounding = Some(rep);
    emit(args.output.as_deref(), &doc)
}

fn load_sc(path: &Option<PathBuf>) -> Result<SetCoverInstance> {
    let p = path
        .as_ref()
        .ok_or_else(|| Error::Param("--sc <set-cover.json> is required".into()))?;
    SetCoverInstance::from_json(&read_text(p)?)
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let mut doc = ReportDocument::new(
        "gen",
        serde_json::to_value(args).expect("arguments serialise"),
    );
    doc.seed = Some(args.seed);
    let write_gadget = |a: &GadgetArtifact, doc: &mut ReportDocument| -> Result<()> {
        write_text(&args.output, &write_graph(&a.graph))?;
        if let Some(r) = &args.roles {
            write_text(
                r,
                &(serde_json::to_string_pretty(&a.sidecar()).expect("roles serialise") + "\n"),
            )?;
        }
        doc.result = Some(
            json!({ "kind": a.kind, "target": a.target, "radius": a.radius, "n": a.graph.order(), "m": a.graph.size() }),
        );
        Ok(())
    };
    match args.gadget {
        GadgetArg::ScTw => write_gadget(&instances::gen_tw_gadget(&load_sc(&args.sc)?)?, &mut doc)?,
        GadgetArg::ScBdd => {
            write_gadget(&instances::gen_bdd_gadget(&load_sc(&args.sc)?)?, &mut doc)?
        }
        GadgetArg::ScDe => write_gadget(
            &instances::gen_de_gadget(&load_sc(&args.sc)?, need(args.r, "r")?)?,
            &mut doc,
        )?,
        GadgetArg::ScWcn => write_gadget(
            &instances::gen_wcn_gadget(&load_sc(&args.sc)?, need(args.c, "c")?)?,
            &mut doc,
        )?,
        GadgetArg::VcSf => {
            let p = args
                .input
                .as_ref()
                .ok_or_else(|| Error::Param("vc-sf needs -i <graph>".into()))?;
            let text = read_text(p)?;
            doc.input_digest = Some(digest(text.as_bytes()));
            write_gadget(
                &instances::gen_sf_vertex_gadget(&read_graph(&text)?)?,
                &mut doc,
            )?
        }
        GadgetArg::Gap => {
            let (g, r) = instances::gen_integrality_gap(need(args.n, "n")?, args.mode.into())?;
            write_text(&args.output, &write_graph(&g))?;
            doc.result = Some(json!({ "r": r, "n": g.order(), "m": g.size() }));
        }
        GadgetArg::Planted => {
            let class = match args.planted {
                PlantedArg::Forest => PlantedClass::Forest,
                PlantedArg::Degenerate => PlantedClass::Degenerate { r: args.planted_r },
                PlantedArg::KTree => PlantedClass::KTree { k: args.planted_k },
            };
            let params = PlantedParams {
                n: need(args.n, "n")?,
                class,
                noise: args.noise,
                noise_kind: args.noise_kind.into(),
                seed: args.seed,
            };
            let inst = instances::gen_planted(&params)?;
            write_text(&args.output, &write_graph(&inst.graph))?;
            doc.result =
                Some(json!({ "class": class, "n": inst.graph.order(), "m": inst.graph.size() }));
            doc.edit = Some(inst.planted);
        }
        GadgetArg::Gnp => {
            let g = instances::gnp(need(args.n, "n")?, need(args.p, "p")?, args.seed)?;
            write_text(&args.output, &write_graph(&g))?;
            doc.result = Some(json!({ "n": g.order(), "m": g.size() }));
        }
        GadgetArg::RandomSc => {
            let sc = instances::random_set_cover(
                need(args.n, "n")?,
                need(args.sets, "sets")?,
                args.min_frequency,
                args.seed,
            )?;
            write_text(&args.output, &(sc.to_json() + "\n"))?;
            doc.result = Some(json!({ "universe": sc.universe, "sets": sc.sets.len() }));
        }
    }
    match &args.report {
        Some(p) => write_text(p, &doc.to_json()),
        None => Ok(()),
    }
}

/// Re-validate a report against the graph it claims to describe.
pub fn check_report(doc: &ReportDocument, graph_text: &str) -> Result<Value> {
    if let Some(d) = &doc.input_digest {
        if *d != digest(graph_text.as_bytes()) {
            return Err(Error::Input(
                "input digest does not match the report".into(),
            ));
        }
    }
    let g = read_graph(graph_text)?;
    let x = doc
        .edit
        .as_ref()
        .ok_or_else(|| Error::Input("report has no edit set".into()))?;
    let recomputed = match x.kind {
        EditKind::Vertex => EditSet::from_vertices(&g, x.vertices.iter().copied()),
        EditKind::Edge => EditSet::from_edges(&g, x.edges.iter().copied()),
    };
    if recomputed.total_weight != x.total_weight {
        return Err(Error::Input(format!(
            "edit weight {} does not match the graph ({})",
            format_weight(&x.total_weight),
            format_weight(&recomputed.total_weight)
        )));
    }
    let h = apply_edits(&g, x)?;
    let mut checked = vec!["edit"];
    if let Some(a) = &doc.achieved {
        validate_achieved(&h, a)?;
        checked.push("certificate");
    }
    if let Some(rep) = &doc.rounding {
        let inst = annotated(
            &g,
            &doc.parameters
                .get("targets")
                .and_then(|t| serde_json::from_value(t.clone()).ok()),
            {
                doc.parameters
                    .get("radius")
                    .and_then(Value::as_u64)
                    .unwrap_or(1) as usize
            },
        )?;
        check_feasible(rep.problem, &inst, &rep.lifted_solution)?;
        if rep.edit != *x {
            return Err(Error::Input(
                "rounding edit differs from the report edit".into(),
            ));
        }
        checked.push("lifted-solution");
    }
    Ok(json!({ "valid": true, "checked": checked }))
}

fn cmd_check(args: &CheckArgs) -> Result<()> {
    let doc = ReportDocument::from_json(&read_text(&args.certificate)?)?;
    let verdict = check_report(&doc, &read_text(&args.input)?)?;
    println!("{verdict}");
    Ok(())
}

fn cmd_oracle(args: &OracleArgs) -> Result<()> {
    let budget = args.budget.budget();
    let mut doc = ReportDocument::new(
        "oracle",
        serde_json::to_value(args).expect("arguments serialise"),
    );
    let graph = || -> Result<(Graph, String)> {
        let p = args
            .input
            .as_ref()
            .ok_or_else(|| Error::Param("this oracle needs -i <graph>".into()))?;
        let text = read_text(p)?;
        Ok((read_graph(&text)?, digest(text.as_bytes())))
    };
    let t = Instant::now();
    match args.what {
        OracleWhat::SetCover => {
            let sc = load_sc(&args.sc)?;
            let cover = exact_set_cover(&sc, &budget)?;
            doc.result = Some(json!({ "opt": cover.len(), "cover": cover }));
        }
        what => {
            let (g, d) = graph()?;
            doc.input_digest = Some(d);
            let result = match what {
                OracleWhat::Edit => {
                    let class = args
                        .class
                        .ok_or_else(|| Error::Param("--what edit needs --class".into()))?;
                    let x = exact_min_edit(
                        &g,
                        args.params.predicate(class)?,
                        args.kind.into(),
                        &budget,
                    )?;
                    let r = json!({ "opt": x.len() });
                    doc.edit = Some(x);
                    r
                }
                OracleWhat::Treewidth => json!({ "treewidth": exact_treewidth(&g, &budget)? }),
                OracleWhat::Clique => json!({ "clique_number": exact_clique_number(&g, &budget)? }),
                OracleWhat::Wcol => {
                    let c = need(args.params.c, "c")?;
                    json!({ "c": c, "wcol": exact_wcol(&g, c, &budget)? })
                }
                OracleWhat::Opt => {
                    let problem: Problem = args
                        .problem
                        .as_deref()
                        .ok_or_else(|| Error::Param("--what opt needs --problem".into()))?
                        .parse()?;
                    let inst = annotated(&g, &args.targets, args.radius)?;
                    let s = exact_solution(problem, &inst, &budget)?;
                    json!({ "problem": problem, "opt": crate::rounding::cost(problem, &g, &s), "solution": s })
                }
                OracleWhat::SetCover => unreachable!(),
            };
            doc.result = Some(result);
        }
    }
    doc.timings_ms.insert("oracle".into(), ms(t));
    emit(args.output.as_deref(), &doc)
}

/// Exit code for an error: 2 for bad input or parameters, 3 for an
/// exhausted budget, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::Input(_)
        | Error::Parse { .. }
        | Error::Param(_)
        | Error::InvalidEdit(_)
        | Error::InfeasibleSolution(_) => 2,
        Error::Budget(_) => 3,
        _ => 1,
    }
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Edit(a) => cmd_edit(a),
        Command::Round(a) => cmd_round(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Check(a) => cmd_check(a),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
