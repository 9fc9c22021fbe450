//! Structural rounding: edit into a class, solve there, lift back.

pub mod lift;
pub mod pipeline;
pub mod problems;
pub mod solvers;

pub use lift::{edit_type_for, edited_instance, lift};
pub use pipeline::{
    cost_relation, factor, structural_round, Editor, FactorEvaluation, PipelineConfig,
    RoundingReport,
};
pub use problems::{
    check_feasible, closed_neighborhood, cost, exact_opt, exact_solution, registry, spec,
    AnnotatedInstance, EditType, Problem, ProblemSpec, Sense, Solution,
};
pub use solvers::{
    certify_decomposition, greedy_independent_set, make_nice, solve, solve_on_class, Certificate,
    NiceDecomposition, Solved, SolverConfig, SolverKind,
};
