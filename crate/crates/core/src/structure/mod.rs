//! Biconnected components, shortest-path trees, min cycles and the
//! structural audit of equilibrium graphs.

mod audit;
mod blocks;
mod component;
mod crucial;
mod cycles;
mod spt;

pub use audit::{audit_equilibrium_structure, CheckRecord, CheckStatus, LemmaReport, Witness, WitnessObject, CHECK_IDS};
pub use blocks::{biconnected_components, cut_vertices, BiconnectedComponent};
pub use component::{
    closest_assignment, shopping_vertices, two_degree_paths, ClosestAssignment, ShoppingVertexSet, TreeRestriction,
    TwoDegreePath, TwoDegreePaths,
};
pub use crucial::{crucial_deviation, CrucialDeviation};
pub use cycles::{girth, is_cycle, is_directed_cycle, is_min_cycle, min_cycle_through_edge, shortest_cycle, MinCycle};
pub use spt::{shortest_path_tree, ShortestPathTree, TieRule};
