//! Numerical engines that recompute the closed forms from equilibrium play
//! alone: region-split quadrature, Monte Carlo simulation, exhaustive grid
//! search and bisection.

pub mod bisect;
pub mod grid;
pub mod monte_carlo;
pub mod quadrature;
pub mod verify;

pub use bisect::bisect_boundary;
pub use grid::{grid_argmax, grid_argmax_refined};
pub use monte_carlo::{mc_pareto_probabilities, mc_welfare, McConfig, McEstimate, McProbabilities};
pub use quadrature::{quadrature_pareto_probabilities, quadrature_welfare};
pub use verify::{
    verify_report, verify_report_using, verify_report_with, CheckRecord, CheckStatus, ClosedForms, McExecutor, Serial,
    Standard, VerifyOptions, VerifyReport,
};
