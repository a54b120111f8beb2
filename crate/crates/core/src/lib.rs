//! Planted-clique workbench core.
//!
//! The pieces fit together like this: [`instance`] samples `G(n, p)` and
//! plants a hidden clique (the candidate one-way function), the [`attacks`]
//! try to recover a large clique from the public graph alone, [`harness`]
//! runs a registry of attacks against instances and scores pseudo-inversion,
//! [`oracle`] provides exact ground truth at small scales, and [`advisor`]
//! turns the attack cost model into minimum-parameter recommendations.
//!
//! Everything randomized flows through [`rng::RngState`] so a root seed
//! reproduces an entire experiment.

pub mod advisor;
pub mod attacks;
pub mod budget;
pub(crate) mod combinat;
pub mod dimacs;
pub mod error;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod normal;
pub mod oracle;
pub mod par;
pub mod rng;

#[cfg(test)]
pub(crate) mod testutil;

pub use combinat::ScanOutcome;
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use rng::RngState;
