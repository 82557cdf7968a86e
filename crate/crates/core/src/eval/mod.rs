//! Evaluation tooling: accuracy metrics, graph generators, result files,
//! benchmark sweeps and the command-line interface.

pub mod bench;
pub mod cli;
pub mod generate;
pub mod metrics;
pub mod results;
