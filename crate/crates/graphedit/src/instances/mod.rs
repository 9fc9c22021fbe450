//! Instance generators: hardness gadgets with back-maps, integrality-gap
//! graphs, planted near-class graphs and random graphs.

pub mod gadgets;
pub mod integrality;
pub mod planted;
pub mod random;
pub mod setcover;

pub use gadgets::{
    de_witness, gen_bdd_gadget, gen_de_gadget, gen_sf_vertex_gadget, gen_tw_gadget, gen_wcn_gadget,
    map_bdd_solution, map_de_solution, map_sf_vertex, map_tw_solution, map_wcn_solution,
    sf_edge_identity, wcn_canonical_edit, wcn_canonical_ordering, wcn_parameters, wcn_vertex_count,
    GadgetArtifact, GadgetKind, Role, RoleSidecar, SfEdgeIdentity,
};
pub use integrality::gen_integrality_gap;
pub use planted::{gen_planted, PlantedClass, PlantedInstance, PlantedParams};
pub use random::{gnp, random_set_cover};
pub use setcover::SetCoverInstance;
