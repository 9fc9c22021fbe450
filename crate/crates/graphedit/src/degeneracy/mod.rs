//! Degeneracy editors: local ratio, LP rounding and the greedy by-one reducer.

pub mod by_one;
pub mod local_ratio;
pub mod lp_round;

pub use by_one::{
    degen_reduce_by_d, degen_reduce_by_one, degen_reduce_to_r, marked_edges, BaseEditor,
    ByOneOutcome, MarkState, ReduceToOutcome,
};
pub use local_ratio::{
    local_ratio_vertex_edit, local_ratio_vertex_edit_traced, Branch, LocalRatioOutcome,
    LocalRatioStep,
};
pub use lp_round::{lp_edge_edit, lp_vertex_edit, FractionalSolution, LpEditOutcome};
