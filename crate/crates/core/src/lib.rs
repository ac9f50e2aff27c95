//! De Bruijn graph construction, repeat-model statistics and enumeration of
//! branching-bounded bubbles.

pub mod bubble;
pub mod debruijn;
pub mod error;
pub mod graph;
pub mod kmer;
pub mod repeat;
pub mod seqio;

pub use debruijn::{build_graph, DeBruijnGraph, GraphStats};
pub use error::{Error, Result};
pub use graph::{Digraph, VertexId};
pub use kmer::{hamming_distance, span, validate_reads, Kmer, NPolicy, Sequence};
