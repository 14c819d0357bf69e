//! Exact finite-time consensus with positive-diagonal stochastic matrices.
//!
//! * [`ratlinalg`]: exact rational matrices and the stochastic / consistency /
//!   rank-one predicates.
//! * [`graph`]: directed graphs, bidirectional spanning trees, distance
//!   layerings, strong connectivity and simple-cycle enumeration.
//! * [`constructor`]: explicit sequences whose product is exactly the
//!   (weighted) averaging matrix on any graph with a bidirectional spanning tree.
//! * [`analysis`]: feasibility verdicts for directed graphs and executable
//!   impossibility checks.
//! * [`cli`]: file formats, simulator, verifier and the `ftconsensus` commands.

pub mod analysis;
pub mod cli;
pub mod constructor;
pub mod error;
pub mod graph;
pub mod ratlinalg;

pub use error::{Error, Result};
