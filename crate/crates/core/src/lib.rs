//! Grounding kernels, kernel cores, minimum grounding sets and
//! definitional-distance hierarchies of dictionary graphs.

pub mod dict;
pub mod error;
pub mod export;
pub mod graph;
pub mod grounding;
pub mod ingest;
pub mod kernel;
pub mod levels;
pub mod porter;
pub mod psyling;
pub mod scc;
pub mod stats;
pub mod synth;
pub mod toy;
