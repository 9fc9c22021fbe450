//! Edit → solve → lift, with the exact cost checks and the factor formulas.

use serde::{Deserialize, Serialize};

use crate::combinatorial::{
    bounded_degree_edge_edit, star_forest_edge_edit, star_forest_vertex_edit,
};
use crate::degeneracy::{local_ratio_vertex_edit, lp_edge_edit, lp_vertex_edit};
use crate::error::{Error, Result};
use crate::graph::{EditKind, EditSet, Graph, Weight};
use crate::oracles::{exact_min_edit, EditPredicate, OracleBudget};
use crate::wcol::wc_edit;
use crate::width::{treewidth_node_edit, WidthEditConfig};

use super::lift::{edit_type_for, edited_instance, lift};
use super::problems::{
    check_feasible, cost, exact_opt, spec, AnnotatedInstance, Problem, Sense, Solution,
};
use super::solvers::{solve, SolverConfig, SolverKind};

/// `ρ + (c + c′ρ)·αδ` for minimisation, `ρ − (c + c′ρ)·αδ` for maximisation.
pub fn factor(sense: Sense, rho: f64, c: f64, c_prime: f64, alpha_delta: f64) -> f64 {
    match sense {
        Sense::Min => rho + (c + c_prime * rho) * alpha_delta,
        Sense::Max => rho - (c + c_prime * rho) * alpha_delta,
    }
}

/// The editing step of the pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "editor", rename_all = "kebab-case")]
pub enum Editor {
    DegeneracyLocalRatio {
        r: usize,
        #[serde(with = "crate::io::ratio_serde")]
        beta: Weight,
    },
    DegeneracyLpVertex {
        r: usize,
        #[serde(with = "crate::io::ratio_serde")]
        eps: Weight,
    },
    DegeneracyLpEdge {
        r: usize,
        #[serde(with = "crate::io::ratio_serde")]
        eps: Weight,
    },
    TreewidthVertex {
        w: usize,
        #[serde(with = "crate::io::ratio_serde")]
        c1: Weight,
    },
    BoundedDegreeEdge {
        d: usize,
    },
    StarForestVertex,
    StarForestEdge,
    WcolVertex {
        c: usize,
        k: usize,
        #[serde(with = "crate::io::ratio_serde")]
        eps: Weight,
    },
    WcolEdge {
        c: usize,
        k: usize,
        #[serde(with = "crate::io::ratio_serde")]
        eps: Weight,
    },
    /// A precomputed edit set.
    Given {
        edit: EditSet,
    },
}

impl Editor {
    pub fn kind(&self) -> EditKind {
        match self {
            Editor::DegeneracyLocalRatio { .. }
            | Editor::DegeneracyLpVertex { .. }
            | Editor::TreewidthVertex { .. }
            | Editor::StarForestVertex
            | Editor::WcolVertex { .. } => EditKind::Vertex,
            Editor::DegeneracyLpEdge { .. }
            | Editor::BoundedDegreeEdge { .. }
            | Editor::StarForestEdge
            | Editor::WcolEdge { .. } => EditKind::Edge,
            Editor::Given { edit } => edit.kind,
        }
    }

    /// The target class, for measuring α̂ against the exact editing oracle.
    /// For the bicriteria editors this is the class at the *input* parameter.
    pub fn predicate(&self) -> Option<EditPredicate> {
        match *self {
            Editor::DegeneracyLocalRatio { r, .. }
            | Editor::DegeneracyLpVertex { r, .. }
            | Editor::DegeneracyLpEdge { r, .. } => Some(EditPredicate::DegeneracyAtMost(r)),
            Editor::TreewidthVertex { w, .. } => Some(EditPredicate::TreewidthAtMost(w)),
            Editor::BoundedDegreeEdge { d } => Some(EditPredicate::MaxDegreeAtMost(d)),
            Editor::StarForestVertex | Editor::StarForestEdge => Some(EditPredicate::StarForest),
            Editor::WcolVertex { c, k, .. } | Editor::WcolEdge { c, k, .. } => {
                Some(EditPredicate::WcolAtMost { c, k })
            }
            Editor::Given { .. } => None,
        }
    }

    pub fn run(&self, g: &Graph) -> Result<EditSet> {
        Ok(match self {
            Editor::DegeneracyLocalRatio { r, beta } => local_ratio_vertex_edit(g, *r, *beta)?,
            Editor::DegeneracyLpVertex { r, eps } => lp_vertex_edit(g, *r, *eps)?.edit,
            Editor::DegeneracyLpEdge { r, eps } => lp_edge_edit(g, *r, *eps)?.edit,
            Editor::TreewidthVertex { w, c1 } => {
                treewidth_node_edit(g, *w, *c1, &WidthEditConfig::default())?.edit
            }
            Editor::BoundedDegreeEdge { d } => bounded_degree_edge_edit(g, *d),
            Editor::StarForestVertex => star_forest_vertex_edit(g),
            Editor::StarForestEdge => star_forest_edge_edit(g),
            Editor::WcolVertex { c, k, eps } => wc_edit(g, *c, *k, *eps, EditKind::Vertex)?.edit,
            Editor::WcolEdge { c, k, eps } => wc_edit(g, *c, *k, *eps, EditKind::Edge)?.edit,
            Editor::Given { edit } => edit.clone(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub solver: SolverConfig,
    /// Run the exact oracles (edit OPT, problem OPT) when within budget.
    pub measure: bool,
    pub oracle: OracleBudget,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            solver: SolverConfig::default(),
            measure: true,
            oracle: OracleBudget::default(),
        }
    }
}

/// Achieved-factor evaluation. `alpha_delta = |X| / OPT(G)` is measured
/// only when the exact problem optimum is available; otherwise the factor
/// is conditional on the unknown α and δ.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorEvaluation {
    pub conditional: bool,
    pub alpha_delta: Option<f64>,
    /// The promised factor at the measured αδ.
    pub factor: Option<f64>,
    /// cost(S)/OPT(G) when OPT(G) is known.
    pub achieved: Option<f64>,
    /// Does the achieved ratio respect the promised factor?
    pub within_factor: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundingReport {
    pub problem: Problem,
    pub sense: Sense,
    pub editor: Editor,
    pub solver: String,
    pub edit: EditSet,
    pub edited_solution: Solution,
    pub lifted_solution: Solution,
    pub edited_cost: usize,
    pub lifted_cost: usize,
    pub c: usize,
    pub c_prime: usize,
    /// `cost(S) ≤ cost(S′) + c|X|` (min) or `cost(S) ≥ cost(S′) − c|X|` (max).
    pub cost_relation_holds: bool,
    pub rho: f64,
    pub opt_edit: Option<usize>,
    /// `|X| / OPT_edit` from the exact editing oracle.
    pub alpha_hat: Option<f64>,
    pub opt_original: Option<usize>,
    pub evaluation: FactorEvaluation,
}

/// Does the lifted cost obey the registered relation?
pub fn cost_relation(sense: Sense, lifted: usize, edited: usize, c: usize, x: usize) -> bool {
    match sense {
        Sense::Min => lifted <= edited + c * x,
        Sense::Max => lifted + c * x >= edited,
    }
}

/// Edit, solve on the edited instance, lift back, and check every bound
/// that can be checked exactly.
pub fn structural_round(
    inst: &AnnotatedInstance,
    editor: &Editor,
    problem: Problem,
    solver: SolverKind,
    cfg: &PipelineConfig,
) -> Result<RoundingReport> {
    let g = &inst.graph;
    let kind = editor.kind();
    let ps = spec(problem, edit_type_for(problem, kind))?;
    let x = editor.run(g).map_err(|e| e.in_stage("edit"))?;
    let edited = edited_instance(problem, inst, &x).map_err(|e| e.in_stage("edit"))?;
    let solved = solve(problem, &edited, solver, &cfg.solver).map_err(|e| e.in_stage("solve"))?;
    check_feasible(problem, &edited, &solved.solution).map_err(|e| e.in_stage("solve"))?;
    let s = lift(problem, &solved.solution, &x, inst).map_err(|e| e.in_stage("lift"))?;

    let sense = problem.sense();
    let edited_cost = cost(problem, &edited.graph, &solved.solution);
    let lifted_cost = cost(problem, g, &s);
    let holds = cost_relation(sense, lifted_cost, edited_cost, ps.c, x.len());

    let within = |r: Result<usize>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let (mut opt_edit, mut opt_original) = (None, None);
    if cfg.measure {
        if let Some(pred) = editor.predicate() {
            opt_edit = within(exact_min_edit(g, pred, kind, &cfg.oracle).map(|e| e.len()))
                .map_err(|e| e.in_stage("edit oracle"))?;
        }
        opt_original = within(exact_opt(problem, inst, &cfg.oracle))
            .map_err(|e| e.in_stage("problem oracle"))?;
    }
    let alpha_hat = opt_edit
        .filter(|&o| o > 0)
        .map(|o| x.len() as f64 / o as f64);
    let alpha_delta = opt_original
        .filter(|&o| o > 0)
        .map(|o| x.len() as f64 / o as f64);
    let promised =
        alpha_delta.map(|ad| factor(sense, solved.rho, ps.c as f64, ps.c_prime as f64, ad));
    let achieved = opt_original
        .filter(|&o| o > 0)
        .map(|o| lifted_cost as f64 / o as f64);
    let within_factor = match (achieved, promised) {
        (Some(a), Some(f)) => Some(match sense {
            Sense::Min => a <= f + 1e-9,
            Sense::Max => a >= f - 1e-9,
        }),
        _ => None,
    };
    Ok(RoundingReport {
        problem,
        sense,
        editor: editor.clone(),
        solver: solved.method,
        edit: x,
        edited_solution: solved.solution,
        lifted_solution: s,
        edited_cost,
        lifted_cost,
        c: ps.c,
        c_prime: ps.c_prime,
        cost_relation_holds: holds,
        rho: solved.rho,
        opt_edit,
        alpha_hat,
        opt_original,
        evaluation: FactorEvaluation {
            conditional: promised.is_none(),
            alpha_delta,
            factor: promised,
            achieved,
            within_factor,
        },
    })
}
