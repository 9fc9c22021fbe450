//! Tree/path decompositions, balanced separators, and width editing.

pub mod builder;
pub mod decomposition;
pub mod editor;
pub mod separator;

pub use builder::{recursive_decomposition, tree_decomposition, BuildOutcome, BuildStep};
pub use decomposition::{
    decomposition_from_elimination, elimination_width, min_degree_ordering, PathDecomposition,
    TreeDecomposition,
};
pub use editor::{
    partition_lower_bound, pathwidth_node_edit, tree_to_path, treewidth_node_edit, width_threshold,
    PathEditOutcome, WidthEditConfig, WidthEditOutcome,
};
pub use separator::{balanced_separator, is_separator, SeparatorConfig, SeparatorResult};
