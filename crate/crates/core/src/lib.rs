//! Defective colouring of uniform hypergraphs.
//!
//! A vertex colouring is `d`-defective when every vertex lies in at most `d`
//! monochromatic edges. This crate holds the algorithmic core: the
//! hypergraph type, extremal and random generators, constructive sunflower
//! decomposition, local-search max-cut partitioning, the colouring engine
//! (nibble rounds with local resampling, Lovász-local-lemma colouring of
//! linear hypergraphs, the graph max-cut colourer, greedy proper colouring)
//! and the analysis layer (defect verifier, exact brute-force oracle, grid
//! lower-bound witness, Monte Carlo probes).
//!
//! The crate is `no_std` and only needs `alloc`. All randomness is driven by
//! explicit `u64` seeds through ChaCha8, so every result is reproducible.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod analysis;
pub mod arith;
pub mod colouring;
pub mod error;
pub mod generators;
pub mod hypergraph;
pub mod partition;
pub mod sunflower;

mod rng;

pub use analysis::{
    complete_lowerbound, exact_defective_chromatic, exact_defective_colouring, grid_defect_witness,
    mono_edge_probability, probe_bad_vertex, probe_mono_edge, verify, BadVertexProbe, DefectReport,
    GridWitness, ProbeStats,
};
pub use colouring::{
    adaptive_colouring, classify, graph_maxcut_colouring, greedy_proper, mono_degree, mono_degrees,
    naive_lll_linear, nibble_round, run_engine, theorem1_colouring, uniform_colouring,
    Classification, Colouring, Endgame, EndgameKind, EngineConfig, EngineRun, Mode, NibbleRound,
    RoundTrace,
};
pub use error::{Error, Result};
pub use generators::{complete, grid, random_bounded_degree, random_linear, Grid, GridVertex};
pub use hypergraph::{Hypergraph, IndexMap, VertexSet};
pub use partition::{max_cut_partition, pair_objective, MaxCut, Partition};
pub use sunflower::{decompose, find_sunflower, is_sunflower, Sunflower, SunflowerDecomposition};
