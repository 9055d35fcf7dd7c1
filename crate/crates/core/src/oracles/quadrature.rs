//! Region-split Gauss–Legendre quadrature over the type rectangle.
//!
//! The integrand is whatever equilibrium play yields at each node, so nothing
//! here reuses a closed form. Each axis is cut at the boundaries where play
//! or classification changes; between cuts the integrand is a polynomial of
//! low degree and the 8-point rule is exact up to rounding.

use alloc::vec::Vec;

use crate::complete::equilibrium_outcome;
use crate::consent::ParetoProbabilities;
use crate::model::{classify_pareto, AgentTypes, EquilibriumOutcome, ModelParams, ParetoClass, Penalty};
use crate::private::{bayes_equilibrium, classify_private, private_outcome};
use crate::{Agent, Regime};

const NODES: [f64; 4] = [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const WEIGHTS: [f64; 4] = [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

fn gauss<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in NODES.iter().zip(WEIGHTS) {
        sum += w * (f(mid - half * x) + f(mid + half * x));
    }
    sum * half
}

/// Sorted breakpoints of `[lo, hi]`, keeping only cuts strictly inside.
fn pieces(lo: f64, hi: f64, cuts: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = cuts.iter().copied().filter(|c| c.is_finite() && *c > lo && *c < hi).collect();
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    pts
}

fn integrate_split<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, cuts: &[f64]) -> f64 {
    pieces(lo, hi, cuts).windows(2).map(|w| gauss(&mut f, w[0], w[1])).sum()
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// Mean of `value(play(θm, θw))` over `θm ~ U[0, M]`, `θw ~ U[0, 1]`.
fn expectation<F: Fn(AgentTypes) -> f64>(params: &ModelParams, penalty: Penalty, regime: Regime, value: F) -> f64 {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    let lambda = penalty.value();
    let total = match regime {
        Regime::Complete => {
            let outer = [ratio(g, lambda * (1.0 + k)), ratio(g, lambda * k), 1.0 / (1.0 + k), 1.0 / k];
            integrate_split(
                |man| {
                    let inner = [(1.0 + k) * man, k * man, ratio(g, lambda)];
                    integrate_split(|woman| value(AgentTypes::new(man, woman)), 0.0, 1.0, &inner)
                },
                0.0,
                m,
                &outer,
            )
        }
        Regime::Private => {
            let eq = bayes_equilibrium(params, penalty);
            let inner = [eq.accept_threshold, eq.breakeven_threshold];
            integrate_split(
                |man| integrate_split(|woman| value(AgentTypes::new(man, woman)), 0.0, 1.0, &inner),
                0.0,
                m,
                &[],
            )
        }
    };
    total / m
}

fn play(params: &ModelParams, types: AgentTypes, penalty: Penalty, regime: Regime) -> EquilibriumOutcome {
    match regime {
        Regime::Complete => equilibrium_outcome(params, types, penalty),
        Regime::Private => private_outcome(params, types, penalty),
    }
}

/// Expected equilibrium payoff of `agent`.
pub fn quadrature_welfare(params: &ModelParams, penalty: Penalty, agent: Agent, regime: Regime) -> f64 {
    expectation(params, penalty, regime, |types| {
        let payoffs = play(params, types, penalty, regime).payoffs;
        match agent {
            Agent::Man => payoffs.man,
            Agent::Woman => payoffs.woman,
        }
    })
}

/// Probability of each Pareto category. Complete information classifies
/// realized payoffs; private information classifies the woman's type.
pub fn quadrature_pareto_probabilities(params: &ModelParams, penalty: Penalty, regime: Regime) -> ParetoProbabilities {
    let classify = |types: AgentTypes| match regime {
        Regime::Complete => classify_pareto(&play(params, types, penalty, regime)),
        Regime::Private => classify_private(params, types.woman, penalty),
    };
    let share = |class: ParetoClass| expectation(params, penalty, regime, |t| if classify(t) == class { 1.0 } else { 0.0 });
    ParetoProbabilities::new(
        share(ParetoClass::Improving),
        share(ParetoClass::Conflicting),
        share(ParetoClass::Dominated),
    )
}
