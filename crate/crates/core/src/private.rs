//! Private information: each agent knows only their own type.
//!
//! Given any threshold strategy of the woman, every man type expects the same
//! payoff from proposing, so either all types propose or none does. When all
//! propose, the woman accepts iff `θw ≤ θw^a = (1+k)M/2`. The man proposes
//! only when his expected payoff is strictly positive, i.e. `λ < λ̄ = (1+k)GM`.

use crate::consent::{check_mon, check_rme, ConsentError, ConsentObjective, ParetoProbabilities, ProbeConfig};
use crate::model::{
    classify_pareto, payoff_accept, payoff_reject, AgentTypes, EquilibriumOutcome, ModelParams,
    ParetoClass, Path, PayoffPair, Penalty,
};
use crate::welfare::FormulaVariant;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BayesEquilibrium {
    /// Whether every man type proposes.
    pub all_propose: bool,
    /// `θw^a`: the woman accepts iff her type is at most this.
    pub accept_threshold: f64,
    /// `θw^+`: the highest type expecting to be weakly better off after
    /// accepting.
    pub breakeven_threshold: f64,
    /// `λ̄`: smallest penalty deterring every proposal.
    pub deterrence_penalty: f64,
}

pub fn bayes_equilibrium(params: &ModelParams, penalty: Penalty) -> BayesEquilibrium {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    let deterrence_penalty = (1.0 + k) * g * m;
    BayesEquilibrium {
        all_propose: penalty.value() < deterrence_penalty,
        accept_threshold: (1.0 + k) * m / 2.0,
        breakeven_threshold: k * m / 2.0,
        deterrence_penalty,
    }
}

fn proposals_made(params: &ModelParams, penalty: Penalty) -> bool {
    bayes_equilibrium(params, penalty).all_propose
}

/// Equilibrium play for a realized pair of types.
pub fn private_outcome(params: &ModelParams, types: AgentTypes, penalty: Penalty) -> EquilibriumOutcome {
    let eq = bayes_equilibrium(params, penalty);
    if !eq.all_propose {
        EquilibriumOutcome::no_proposal()
    } else if types.woman <= eq.accept_threshold {
        EquilibriumOutcome { path: Path::ProposalAccepted, payoffs: payoff_accept(params, types, penalty) }
    } else {
        EquilibriumOutcome { path: Path::ProposalRejected, payoffs: payoff_reject(params, types, penalty) }
    }
}

/// Category of a woman type from interim expected payoffs: her own given her
/// equilibrium response, and the man's ex-ante payoff from proposing.
pub fn classify_private(params: &ModelParams, woman_type: f64, penalty: Penalty) -> ParetoClass {
    let eq = bayes_equilibrium(params, penalty);
    if !eq.all_propose {
        return ParetoClass::Neutral;
    }
    let (k, m) = (params.reward, params.max_man_type);
    let (path, woman) = if woman_type <= eq.accept_threshold {
        (Path::ProposalAccepted, k * m / 2.0 - woman_type)
    } else {
        (Path::ProposalRejected, -m / 2.0)
    };
    let man = 0.5 * (params.gratification * (1.0 + k) * m - penalty.value());
    classify_pareto(&EquilibriumOutcome { path, payoffs: PayoffPair { man, woman } })
}

/// `(M/8)((1+k)²M − 4)` while proposals are made, zero otherwise.
pub fn expected_welfare_woman(params: &ModelParams, penalty: Penalty) -> f64 {
    if !proposals_made(params, penalty) {
        return 0.0;
    }
    let (k, m) = (params.reward, params.max_man_type);
    m / 8.0 * ((1.0 + k) * (1.0 + k) * m - 4.0)
}

/// `½((1+k)GM − λ)` while proposals are made, zero otherwise.
///
/// This is the man's expected payoff from proposing, `G·θw^a − λ/2`, which is
/// the same for every man type.
pub fn expected_welfare_man(params: &ModelParams, penalty: Penalty) -> f64 {
    expected_welfare_man_variant(params, penalty, FormulaVariant::Rederived)
}

/// The man's expected welfare in either algebraic form. The displayed form
/// `(M/2)((1+k)GM − λ)` carries an extra factor of `M`.
pub fn expected_welfare_man_variant(params: &ModelParams, penalty: Penalty, variant: FormulaVariant) -> f64 {
    if !proposals_made(params, penalty) {
        return 0.0;
    }
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    let scale = match variant {
        FormulaVariant::AsPrinted => m / 2.0,
        FormulaVariant::Rederived => 0.5,
    };
    scale * ((1.0 + k) * g * m - penalty.value())
}

pub fn expected_social_welfare(params: &ModelParams, penalty: Penalty) -> f64 {
    let mu = params.man_weight;
    mu * expected_welfare_man(params, penalty) + (1.0 - mu) * expected_welfare_woman(params, penalty)
}

/// Smallest penalty maximizing the woman's expected welfare: `λ̄` when her
/// welfare under proposals is negative, zero otherwise.
pub fn woman_optimal_penalty_pi(params: &ModelParams) -> Penalty {
    let (k, m) = (params.reward, params.max_man_type);
    if (1.0 + k) * (1.0 + k) * m < 4.0 {
        Penalty::new(bayes_equilibrium(params, Penalty::ZERO).deterrence_penalty)
    } else {
        Penalty::ZERO
    }
}

/// `G̃_c = (1/(4(1+k)))·((1−μ)/μ)·(4 − (1+k)²M)`. Non-positive values mean a
/// zero penalty is welfare-optimal for every `G > 0`.
pub fn critical_gratification_pi(params: &ModelParams) -> f64 {
    let (k, m, mu) = (params.reward, params.max_man_type, params.man_weight);
    (1.0 / (4.0 * (1.0 + k))) * ((1.0 - mu) / mu) * (4.0 - (1.0 + k) * (1.0 + k) * m)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrivateWelfareOptimum {
    pub penalty: Penalty,
    /// Social welfare at a zero penalty; the alternative yields zero.
    pub zero_value: f64,
}

/// Social welfare falls linearly on `[0, λ̄)` and is zero beyond, so the
/// smallest optimum is zero when `Π(0) ≥ 0` and `λ̄` otherwise.
pub fn welfare_optimal_penalty_pi(params: &ModelParams) -> PrivateWelfareOptimum {
    let zero_value = expected_social_welfare(params, Penalty::ZERO);
    let penalty = if zero_value >= 0.0 {
        Penalty::ZERO
    } else {
        Penalty::new(bayes_equilibrium(params, Penalty::ZERO).deterrence_penalty)
    };
    PrivateWelfareOptimum { penalty, zero_value }
}

/// Ex-ante category probabilities. While proposals are made, woman types up
/// to `θw^+` expect a gain (improving) and the rest expect a loss
/// (conflicting); the man always expects a gain.
pub fn private_pareto_probabilities(params: &ModelParams, penalty: Penalty) -> ParetoProbabilities {
    let eq = bayes_equilibrium(params, penalty);
    if eq.all_propose {
        let improving = eq.breakeven_threshold;
        ParetoProbabilities::new(improving, 1.0 - improving, 0.0)
    } else {
        ParetoProbabilities::NEUTRAL
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrivateConsentAnalysis {
    pub probabilities: ParetoProbabilities,
    pub value: f64,
    /// `C(0, 0, 0)`, the value once every proposal is deterred.
    pub baseline_value: f64,
    /// Smallest penalty maximizing the objective.
    pub min_optimal_penalty: Penalty,
}

/// Evaluates a consent objective in the private regime.
///
/// The objective must pass the MON and RME probes; those axioms are what
/// guarantee deterring every proposal is optimal.
pub fn consent_analysis_pi<O: ConsentObjective + ?Sized>(
    params: &ModelParams,
    penalty: Penalty,
    objective: &O,
) -> Result<PrivateConsentAnalysis, ConsentError> {
    let probe = ProbeConfig::default();
    check_mon(objective, &probe).map_err(ConsentError::Axiom)?;
    check_rme(objective, &probe).map_err(ConsentError::Axiom)?;

    let probabilities = private_pareto_probabilities(params, penalty);
    let value = objective.evaluate(&probabilities);
    let baseline_value = objective.evaluate(&ParetoProbabilities::NEUTRAL);
    let proposing = private_pareto_probabilities(params, Penalty::ZERO);
    let min_optimal_penalty = if objective.evaluate(&proposing) < baseline_value {
        Penalty::new(bayes_equilibrium(params, Penalty::ZERO).deterrence_penalty)
    } else {
        Penalty::ZERO
    };
    Ok(PrivateConsentAnalysis { probabilities, value, baseline_value, min_optimal_penalty })
}
