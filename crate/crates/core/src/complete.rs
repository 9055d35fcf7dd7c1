//! Equilibrium under complete information.
//!
//! The woman accepts iff `(1+k)θm ≥ θw`; anticipating this, the man proposes
//! iff she would accept and `G − λθw ≥ 0`. Both indifferences resolve toward
//! the proposal going ahead, so a rejected proposal never occurs on the
//! equilibrium path.

use alloc::vec::Vec;

use crate::model::{
    classify_pareto, payoff_accept, AgentTypes, EquilibriumOutcome, ModelParams, ParetoClass, Path,
    Penalty,
};

/// Deterrence thresholds `λ_PC = G/((1+k)M)` and `λ_PI = G/(kM)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    /// Penalty up to which no proposal is deterred.
    pub lambda_pc: f64,
    /// Smallest penalty at which the type-`M` man has no conflicting
    /// interaction left.
    pub lambda_pi: f64,
}

pub fn thresholds(params: &ModelParams) -> Thresholds {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    Thresholds { lambda_pc: g / ((1.0 + k) * m), lambda_pi: g / (k * m) }
}

/// Highest woman type who receives a proposal from a man of type `man_type`:
/// `min{(1+k)θm, G/λ}`, with `G/0` read as `+∞`.
pub fn proposal_cutoff(params: &ModelParams, man_type: f64, penalty: Penalty) -> f64 {
    let acceptance = (1.0 + params.reward) * man_type;
    if penalty.value() == 0.0 {
        acceptance
    } else {
        acceptance.min(params.gratification / penalty.value())
    }
}

pub fn equilibrium_outcome(
    params: &ModelParams,
    types: AgentTypes,
    penalty: Penalty,
) -> EquilibriumOutcome {
    if types.woman <= proposal_cutoff(params, types.man, penalty) {
        EquilibriumOutcome {
            path: Path::ProposalAccepted,
            payoffs: payoff_accept(params, types, penalty),
        }
    } else {
        EquilibriumOutcome::no_proposal()
    }
}

pub fn classify_interaction(params: &ModelParams, types: AgentTypes, penalty: Penalty) -> ParetoClass {
    classify_pareto(&equilibrium_outcome(params, types, penalty))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionCell {
    pub man: f64,
    pub woman: f64,
    pub class: ParetoClass,
}

/// Classification of the type rectangle `[0, M] × [0, 1]` on a square grid
/// of cell centers, stored row-major with `θm` as the outer index.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionMap {
    pub resolution: usize,
    pub cells: Vec<RegionCell>,
}

impl RegionMap {
    pub fn cell(&self, man_index: usize, woman_index: usize) -> &RegionCell {
        &self.cells[man_index * self.resolution + woman_index]
    }

    pub fn count(&self, class: ParetoClass) -> usize {
        self.cells.iter().filter(|c| c.class == class).count()
    }
}

/// # Panics
///
/// If `resolution < 2`.
pub fn region_map(params: &ModelParams, penalty: Penalty, resolution: usize) -> RegionMap {
    assert!(resolution >= 2, "region map needs at least two cells per axis");
    let n = resolution as f64;
    let mut cells = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let man = (i as f64 + 0.5) * params.max_man_type / n;
        for j in 0..resolution {
            let woman = (j as f64 + 0.5) / n;
            let class = classify_interaction(params, AgentTypes::new(man, woman), penalty);
            cells.push(RegionCell { man, woman, class });
        }
    }
    RegionMap { resolution, cells }
}
