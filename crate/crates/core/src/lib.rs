//! Penalties for unwelcome advances under power disparity.
//!
//! A man of type `θm ∈ [0, M]` chooses whether to make a quid pro quo
//! proposal to a woman of type `θw ∈ [0, 1]`; she accepts or rejects. A
//! penalty `λ` is charged on every proposal with probability `θw`. This crate
//! computes the equilibria of that game under complete and private
//! information, the welfare and consent objectives a planner may maximize,
//! the penalties that maximize them, and independent numerical oracles
//! (region-split quadrature, Monte Carlo play, grid search, bisection) used to
//! cross-check every closed form.
//!
//! The crate is `no_std` and only needs `alloc` for region maps and reports.
//! File formats, the CLI and the threaded Monte Carlo driver live in the
//! `penalty` crate.

#![no_std]

extern crate alloc;

pub mod complete;
pub mod consent;
pub mod model;
pub mod optimize;
pub mod oracles;
pub mod private;
pub mod welfare;

pub use complete::{
    classify_interaction, equilibrium_outcome, proposal_cutoff, region_map, thresholds, RegionCell,
    RegionMap, Thresholds,
};
pub use consent::{
    check_mon, check_rme, consent_optimal_penalty, consent_value, pareto_probabilities,
    AxiomViolation, ConsentError, ConsentObjective, ConsentOptimum, LinearConsent,
    ParetoProbabilities, ProbeConfig,
};
pub use model::{
    classify_pareto, payoff_accept, payoff_reject, AgentTypes, EquilibriumOutcome, ModelParams,
    ParetoClass, Path, PayoffPair, Penalty, Sig, Violation,
};
pub use private::{
    bayes_equilibrium, consent_analysis_pi, critical_gratification_pi, expected_social_welfare,
    expected_welfare_man, expected_welfare_man_variant, expected_welfare_woman, private_outcome, classify_private,
    private_pareto_probabilities,
    welfare_optimal_penalty_pi, woman_optimal_penalty_pi, BayesEquilibrium, PrivateConsentAnalysis,
    PrivateWelfareOptimum,
};
pub use welfare::{
    critical_gratification, critical_weight, man_welfare, social_welfare, welfare_curve_point,
    welfare_optimal_penalty, woman_optimal_penalty, woman_welfare, woman_welfare_at_optimum,
    FormulaVariant, WelfareCurvePoint, WelfareOptimum,
};

/// Which information structure the game is played under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Both types are common knowledge before the man moves.
    Complete,
    /// Each agent knows only their own type; types are independent uniforms.
    Private,
}

/// The agent whose welfare is being measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Agent {
    Man,
    Woman,
}
