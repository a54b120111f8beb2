//! Clique-recovery attacks against the public graph.
//!
//! Every attack sees only the graph and public parameters, never the hidden
//! clique. Each module implements one strategy with its own configuration
//! and failure modes; the harness adapts them to a common report shape.

pub mod dekel;
pub mod feige;
pub mod greedy;
pub mod metropolis;
pub mod spectral;
