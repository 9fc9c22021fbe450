//! Bounded-degree edge deletion (exact) and star-forest editing (hitting set).

pub mod matching;
pub mod star_forest;

pub use matching::{
    bounded_degree_edge_edit, bounded_degree_edge_edit_brute, degree_demand, maximum_b_matching,
    maximum_matching,
};
pub use star_forest::{
    edge_occurrences, is_star_forest, star_forest_edge_edit, star_forest_vertex_edit,
    vertex_occurrences, HittingInstance,
};
