//! Isomorph-free generation of combinatorial maps (rotation systems) of a
//! prescribed genus or face count.
//!
//! The pipeline per input graph: relabel so vertex 0 has degree at least 3,
//! compute the automorphism group, then enumerate one map per isomorphism
//! class (mirror images identified) with [`embedder::enumerate`].

pub mod automorphism;
pub mod canonical;
pub mod catalog;
pub mod embedder;
pub mod error;
pub mod generate;
pub mod graph;
pub mod map;
pub mod run;

pub use automorphism::{
    apply_automorphism, compute_automorphism_group, relabel_for_generation, AutomorphismGroup,
    Permutation,
};
pub use canonical::{canonical_string, is_canonical, string_s, CanonicalString};
pub use embedder::{
    enumerate, enumerate_maps, EnumerateOptions, EnumerationStats, Mode, SearchTarget,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use map::{total_embedding_count, Map};
