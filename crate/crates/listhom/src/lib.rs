//! List H-colouring of permutation and interval graphs.
//!
//! Decides, for an input graph `G`, a target graph `H`, and a list of
//! admissible targets per vertex, whether a list homomorphism `G -> H`
//! exists, and produces one when it does. The solver requires `G` to admit
//! a multi-chain ordering — a BFS layering whose consecutive layers induce
//! chain graphs — which both permutation graphs and interval graphs have.
//! A brute-force oracle and instance generators support testing.

pub mod chain;
pub mod error;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod rng;
pub mod solver;

pub use chain::{
    find_ordering, interval_start_vertex, is_chain_between, ordering_from,
    permutation_start_vertex, MultiChainOrdering,
};
pub use error::{Error, Result};
pub use graph::{
    bfs_layers, build_graph, connected_components, induced_subgraph, is_homomorphism, obeys_lists,
    DistanceLayers, Graph, Homomorphism, ListMapping, VertexMap,
};
pub use instances::{
    counterexample, interval_graph, permutation_graph, random_instance, random_intervals,
    random_permutation, Counterexample, Family, IntervalSpec, PermutationSpec, RandomInstance,
};
pub use oracle::{brute_force, brute_force_with_cap, count_homomorphisms, DEFAULT_SIZE_CAP};
pub use rng::SplitMix64;
pub use solver::{
    apply_reductions, build_configuration_graph, canonical_configurations, configuration_count,
    edge_test, enumerate_configurations, lh_solve, lh_solve_detailed, reachability,
    reduced_lists_for_edge, restrict_target, solve_base_small, universal_vertex_reduction,
    verify_edge_witness, ConfigEdge, ConfigGraph, Configuration, SolveResult, SolveStats,
    UniversalReduction,
};
