//! Command-line front end and file formats for `penalty-core`: JSON run
//! configuration, CSV curves and region maps, report rendering, and a
//! threaded Monte Carlo driver that reproduces the serial estimates bit for
//! bit.

pub mod cli;
pub mod config;
pub mod output;
pub mod parallel;
pub mod report;

pub use config::{ConfigError, LambdaGrid, MonteCarloConfig, RegimeName, RunConfig};
pub use parallel::Threaded;
