//! Randomised invariants over arbitrary small graphs.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use graphedit::combinatorial::{
    bounded_degree_edge_edit, bounded_degree_edge_edit_brute, is_star_forest,
    star_forest_edge_edit, star_forest_vertex_edit,
};
use graphedit::degeneracy::{
    degen_reduce_by_one, local_ratio_vertex_edit, lp_edge_edit, lp_vertex_edit,
};
use graphedit::graph::{apply_edits, degeneracy, k_core, orient_by_ordering};
use graphedit::io::{read_graph, write_graph};
use graphedit::lp::{solve_lp, Direction, LinearProgram, LpStatus, Relation};
use graphedit::rounding::{
    check_feasible, registry, structural_round, AnnotatedInstance, EditType, Editor,
    PipelineConfig, SolverKind,
};
use graphedit::wcol::wcol_score;
use graphedit::width::{tree_decomposition, tree_to_path, SeparatorConfig};
use graphedit::{EditKind, Graph, VertexOrdering, Weight};

use common::without;

/// A graph on `2..=max_n` vertices with each pair present independently.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            Graph::from_edges(n, &edges)
        })
    })
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.vertices().eq(b.vertices()) && a.edges().eq(b.edges())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_format_round_trips(g in graph(12)) {
        let h = read_graph(&write_graph(&g)).unwrap();
        prop_assert!(same_graph(&g, &h));
    }

    #[test]
    fn degeneracy_ordering_is_a_witness(g in graph(12)) {
        let (r, l) = degeneracy(&g);
        prop_assert!(l.is_ordering_of(&g));
        prop_assert_eq!(l.max_forward_degree(&g), r);
        // the (r+1)-core is empty and the r-core is not
        prop_assert_eq!(k_core(&g, r + 1).order(), 0);
        prop_assert!(r == 0 || k_core(&g, r).order() > 0);
        let o = orient_by_ordering(&g, &l);
        prop_assert!(o.validate(&g).is_ok());
        prop_assert_eq!(o.max_out_degree(), r);
    }

    #[test]
    fn first_weak_coloring_number_is_back_degree(g in graph(10)) {
        let (r, l) = degeneracy(&g);
        // reverse so that every vertex has at most r earlier neighbours
        prop_assert_eq!(wcol_score(&g, &l.reversed(), 1).score, r + 1);
    }

    #[test]
    fn local_ratio_is_feasible_and_minimal(g in graph(10), r in 1usize..=2) {
        let beta = Weight::from_integer(4);
        let x = local_ratio_vertex_edit(&g, r, beta).unwrap();
        let bound = 4 * r;
        prop_assert!(degeneracy(&apply_edits(&g, &x).unwrap()).0 <= bound);
        for &u in &x.vertices {
            let mut smaller = x.vertices.clone();
            smaller.remove(&u);
            prop_assert!(degeneracy(&without(&g, &smaller)).0 > bound);
        }
    }

    #[test]
    fn lp_rounding_meets_its_degeneracy_bounds(g in graph(9), r in 1usize..=2) {
        let out = lp_vertex_edit(&g, r, Weight::new(1, 6)).unwrap();
        let h = apply_edits(&g, &out.edit).unwrap();
        prop_assert!(degeneracy(&h).0 <= 6 * r);
        prop_assert!(out.orientation.validate(&h).is_ok());

        let out = lp_edge_edit(&g, r, Weight::new(1, 5)).unwrap();
        let h = apply_edits(&g, &out.edit).unwrap();
        prop_assert!(degeneracy(&h).0 <= 5 * r);
        prop_assert!(out.orientation.validate(&h).is_ok());
        prop_assert_eq!(out.edit.vertices.len(), 0);
    }

    #[test]
    fn reduce_by_one_lowers_degeneracy_exactly(g in graph(9)) {
        let r = degeneracy(&g).0;
        prop_assume!(r > 0);
        for mode in [EditKind::Vertex, EditKind::Edge] {
            let out = degen_reduce_by_one(&g, mode).unwrap();
            prop_assert_eq!(degeneracy(&apply_edits(&g, &out.edit).unwrap()).0, r - 1);
            prop_assert_eq!(out.monotonicity_violations, 0);
        }
    }

    #[test]
    fn matching_edit_is_optimal(g in graph(7), d in 1usize..=3) {
        prop_assume!(g.size() <= 14);
        let x = bounded_degree_edge_edit(&g, d);
        prop_assert!(apply_edits(&g, &x).unwrap().max_degree() <= d);
        let brute = bounded_degree_edge_edit_brute(&g, d).unwrap();
        prop_assert_eq!(x.len(), brute.len());
    }

    #[test]
    fn star_forest_editors_produce_star_forests(g in graph(11)) {
        prop_assert!(is_star_forest(&apply_edits(&g, &star_forest_vertex_edit(&g)).unwrap()));
        prop_assert!(is_star_forest(&apply_edits(&g, &star_forest_edge_edit(&g)).unwrap()));
    }

    #[test]
    fn decompositions_and_paths_are_valid(g in graph(12)) {
        let td = tree_decomposition(&g, &SeparatorConfig::default());
        prop_assert!(td.validate(&g).is_ok());
        let pd = tree_to_path(&td).unwrap();
        prop_assert!(pd.validate(&g).is_ok());
        prop_assert!(pd.width() + 1 <= (td.width() + 1) * td.height());
    }

    #[test]
    fn weak_coloring_score_is_monotone_in_radius(g in graph(9), seed in any::<u64>()) {
        let mut order: Vec<usize> = g.vertices().collect();
        // a cheap deterministic shuffle is enough here
        order.sort_by_key(|&v| (v as u64).wrapping_mul(seed | 1).rotate_left(17));
        let l = VertexOrdering::new(order);
        let scores: Vec<usize> = (1..=4).map(|c| wcol_score(&g, &l, c).score).collect();
        prop_assert!(scores.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(scores[3] <= g.order());
    }

    #[test]
    fn lifted_solutions_are_feasible(g in graph(8)) {
        let cfg = PipelineConfig { measure: false, ..Default::default() };
        for row in registry() {
            let editor = match row.edit {
                EditType::Edge => Editor::StarForestEdge,
                _ => Editor::StarForestVertex,
            };
            let inst = AnnotatedInstance::plain(&g);
            let rep = structural_round(&inst, &editor, row.problem, SolverKind::TreeDp, &cfg).unwrap();
            prop_assert!(check_feasible(row.problem, &inst, &rep.lifted_solution).is_ok(),
                "{} lifted solution infeasible", row.problem);
        }
    }

    /// Packing LPs: the origin is feasible, so the solver must report an
    /// optimum that is feasible and beats every sampled feasible point.
    #[test]
    fn simplex_solves_packing_lps(
        obj in proptest::collection::vec(0.0f64..5.0, 2..6),
        rows in proptest::collection::vec((proptest::collection::vec(0.0f64..3.0, 6), 0.5f64..6.0), 1..6),
        samples in proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, 6), 32),
    ) {
        let k = obj.len();
        let mut lp = LinearProgram::new();
        for j in 0..k {
            lp.add_var(format!("x{j}"), 0.0, 1.0);
        }
        for (a, b) in &rows {
            lp.add_constraint(a[..k].iter().copied().enumerate().collect(), Relation::Le, *b);
        }
        lp.set_objective(Direction::Maximize, obj.iter().copied().enumerate().collect());
        let sol = solve_lp(&lp, 1e-7).unwrap();
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        prop_assert!(lp.max_violation(&sol.values) <= 1e-6);
        for s in &samples {
            let x = &s[..k];
            if lp.max_violation(x) <= 0.0 {
                prop_assert!(lp.objective_value(x) <= sol.objective + 1e-6);
            }
        }
    }
}

#[test]
fn vertex_sets_survive_edits() {
    let g = Graph::grid(3, 3);
    let x = star_forest_vertex_edit(&g);
    let h = apply_edits(&g, &x).unwrap();
    let kept: BTreeSet<usize> = h.vertices().collect();
    assert_eq!(kept.len() + x.len(), g.order());
    assert!(x.vertices.iter().all(|v| !kept.contains(v)));
}
