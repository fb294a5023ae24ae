//! Compression of qubit circuits onto qudit registers.
//!
//! The pipeline builds the weighted interaction graph of a qubit circuit,
//! finds a balanced minimum k-cut of it, encodes every group of qubits into a
//! single qudit, and rewrites the circuit so that gates inside a group become
//! local. A merge pass then fuses entangling gates acting on the same qudit
//! pair. Every rewrite can be checked by exact dense simulation.
//!
//! Numeric code is generic over the real scalar through [`Real`]; the aliases
//! at the bottom of this file fix the common `f64` and `f32` instantiations.

pub mod circuit;
pub mod compress;
pub mod error;
pub mod estimate;
pub mod graph;
pub mod library;
pub mod partition;
pub mod scalar;
pub mod simulator;

pub use circuit::{Circuit, CircuitStats, Gate, GateKind, WireSpec};
pub use compress::{
    compress, compression_bounds, embed_two_qubit_gate, full_pipeline, make_encoding, merge_pass,
    Bounds, CompressionReport, Encoding, MergeOptions, PartitionStrategy, PipelineOptions,
};
pub use error::{Error, Result};
pub use graph::{build_interaction_graph, contract_graph, ContractedGraph, WeightedGraph};
pub use partition::{
    enumerate_balanced_partitions, min_cut_exact, min_cut_heuristic, CutResult, Optimality,
    Partition,
};
pub use scalar::Real;
pub use simulator::{Matrix, StateVector};

/// Exact compression-ratio type.
pub type Ratio = num_rational::Ratio<u64>;

pub type C64 = num_complex::Complex<f64>;
pub type C32 = num_complex::Complex<f32>;

pub type Circuit64 = Circuit<f64>;
pub type Circuit32 = Circuit<f32>;
pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
