//! Hardness gadgets built from a set-cover instance, with the optimal cover
//! read back from an optimal edit.
//!
//! `cargo run --example gadgets`

use graphedit::graph::degeneracy;
use graphedit::instances::{
    gen_bdd_gadget, gen_de_gadget, gen_tw_gadget, gen_wcn_gadget, map_tw_solution, wcn_parameters,
    SetCoverInstance,
};
use graphedit::oracles::{
    exact_min_edit, exact_set_cover, exact_treewidth, EditPredicate, OracleBudget,
};
use graphedit::EditKind;

fn main() -> graphedit::Result<()> {
    let sets = [vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![1, 3]];
    let sc = SetCoverInstance::new(
        4,
        sets.iter().map(|s| s.iter().copied().collect()).collect(),
    )?;
    let budget = OracleBudget {
        max_edges: 64,
        ..OracleBudget::default()
    };
    let cover = exact_set_cover(&sc, &budget)?;
    println!("set cover: {:?}, optimum {cover:?}", sc.sets);

    let tw = gen_tw_gadget(&sc)?;
    println!(
        "treewidth gadget: {} vertices, treewidth {}, target {}",
        tw.graph.order(),
        exact_treewidth(&tw.graph, &budget)?,
        tw.target
    );
    let opt = exact_min_edit(
        &tw.graph,
        EditPredicate::TreewidthAtMost(tw.target),
        EditKind::Vertex,
        &budget,
    )?;
    println!(
        "  optimal edit {:?} maps back to sets {:?}",
        opt.vertices,
        map_tw_solution(&tw, &opt)?
    );

    let bdd = gen_bdd_gadget(&sc)?;
    println!(
        "bounded-degree gadget: {} vertices, target degree {}",
        bdd.graph.order(),
        bdd.target
    );

    let de = gen_de_gadget(&sc, 2)?;
    println!(
        "degeneracy gadget: {} vertices, degeneracy {}",
        de.graph.order(),
        degeneracy(&de.graph).0
    );

    let (l, k) = wcn_parameters(sc.max_frequency(), 4);
    let wcn = gen_wcn_gadget(&sc, 4)?;
    println!(
        "weak-colouring gadget (c = 4, ℓ = {l}, k = {k}): {} vertices, target {}",
        wcn.graph.order(),
        wcn.target
    );
    Ok(())
}
