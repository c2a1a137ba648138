//! Maximum-degree experiments for random graphs with few edges.
//!
//! The crate solves for the threshold `ν(n, k)` that predicts the maximum
//! load of `k` balls in `n` bins, and samples the objects whose maximum
//! degree it governs: `G(n, m)`, complex-free graphs, rooted forests via the
//! Prüfer bijection, complex graphs with a prescribed core, and the
//! three-part pipeline built from them.

pub mod bins;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod nu;
pub mod pruefer;
pub mod samplers;
pub mod seed;

pub use bins::{LoadVector, LocationVector};
pub use error::{Error, ForestViolation, Result};
pub use experiment::{ConcentrationReport, ExperimentConfig, ExperimentKind, Verdict};
pub use graph::{
    Component, ComponentKind, Decomposition, Degrees, Edge, LabeledGraph, MultiGraph, Subgraph,
    Vertex,
};
pub use nu::{IntInterval, NuQuery, Regime, RegimeGates, RegimeSpec, TwoPointPrediction};
pub use pruefer::{PrueferSequence, RootedForest};
pub use samplers::{CoreGraph, PipelineOptions, PipelineSpec, SamplerCaps};
pub use seed::LabRng;
