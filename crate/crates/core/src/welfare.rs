//! Ex-ante welfare under complete information with independent uniform types,
//! `θm ~ U[0, M]` and `θw ~ U[0, 1]`.

use crate::complete::thresholds;
use crate::model::{ModelParams, Penalty};
use crate::optimize::{coarse_then_refine, Maximum};

/// Which algebraic form of a derived quantity to report.
///
/// Some displayed closed forms do not equal what their defining integrals
/// evaluate to. `AsPrinted` reproduces the displayed expression;
/// `Rederived` is the value implied by the welfare curves themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaVariant {
    AsPrinted,
    Rederived,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WelfareCurvePoint {
    pub lambda: f64,
    pub pi_w: f64,
    pub pi_m: f64,
    pub pi_social: f64,
}

pub fn welfare_curve_point(params: &ModelParams, penalty: Penalty) -> WelfareCurvePoint {
    let pi_w = woman_welfare(params, penalty);
    let pi_m = man_welfare(params, penalty);
    WelfareCurvePoint {
        lambda: penalty.value(),
        pi_w,
        pi_m,
        pi_social: params.man_weight * pi_m + (1.0 - params.man_weight) * pi_w,
    }
}

/// Woman's welfare while no proposal is deterred (`λ ≤ λ_PC`).
pub fn woman_welfare_undeterred(params: &ModelParams) -> f64 {
    let (k, m) = (params.reward, params.max_man_type);
    m * m / 6.0 * (k * k - 1.0)
}

/// Woman's welfare once `G/λ` caps the proposal region (`λ > λ_PC`).
pub fn woman_welfare_deterred(params: &ModelParams, lambda: f64) -> f64 {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    let inv = 1.0 / lambda;
    m * m / 6.0
        * (3.0 * k * g / m * inv - 3.0 * g * g / (m * m) * inv * inv
            + (2.0 + k) * g * g * g / ((1.0 + k) * (1.0 + k) * m * m * m) * inv * inv * inv)
}

pub fn woman_welfare(params: &ModelParams, penalty: Penalty) -> f64 {
    if penalty.value() <= thresholds(params).lambda_pc {
        woman_welfare_undeterred(params)
    } else {
        woman_welfare_deterred(params, penalty.value())
    }
}

pub fn man_welfare_undeterred(params: &ModelParams, lambda: f64) -> f64 {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    m * m / 6.0 * (3.0 * (1.0 + k) * g / m - lambda * (1.0 + k) * (1.0 + k))
}

pub fn man_welfare_deterred(params: &ModelParams, lambda: f64) -> f64 {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    let inv = 1.0 / lambda;
    m * m / 6.0 * (3.0 * g * g / (m * m) * inv - g * g * g / ((1.0 + k) * m * m * m) * inv * inv)
}

pub fn man_welfare(params: &ModelParams, penalty: Penalty) -> f64 {
    let lambda = penalty.value();
    if lambda <= thresholds(params).lambda_pc {
        man_welfare_undeterred(params, lambda)
    } else {
        man_welfare_deterred(params, lambda)
    }
}

/// `μ·Π_m + (1−μ)·Π_w`.
pub fn social_welfare(params: &ModelParams, penalty: Penalty) -> f64 {
    welfare_curve_point(params, penalty).pi_social
}

/// Penalty maximizing the woman's welfare alone, `((2+k)/(1+k))·G/(kM)`.
pub fn woman_optimal_penalty(params: &ModelParams) -> Penalty {
    let k = params.reward;
    Penalty::new((2.0 + k) / (1.0 + k) * thresholds(params).lambda_pi)
}

/// The woman's welfare at [`woman_optimal_penalty`].
///
/// The displayed form `(M²/6)·k²(3+4k+2k²)/(2+k)²` overstates the curve's
/// value `(M²/6)·k²(1+k)(3+k)/(2+k)²` by `(M²/6)·k⁴/(2+k)²`.
pub fn woman_welfare_at_optimum(params: &ModelParams, variant: FormulaVariant) -> f64 {
    let (k, m) = (params.reward, params.max_man_type);
    let scale = m * m / 6.0 * k * k / ((2.0 + k) * (2.0 + k));
    match variant {
        FormulaVariant::AsPrinted => scale * (3.0 + 4.0 * k + 2.0 * k * k),
        FormulaVariant::Rederived => scale * (1.0 + k) * (3.0 + k),
    }
}

/// Gratification above which a zero penalty is guaranteed to be the unique
/// welfare optimum. Sufficient, not necessary.
pub fn critical_gratification(params: &ModelParams, variant: FormulaVariant) -> f64 {
    let (k, m, mu) = (params.reward, params.max_man_type, params.man_weight);
    let odds = (1.0 - mu) / mu;
    match variant {
        FormulaVariant::AsPrinted => {
            m * odds * (k * k * k * k + 4.0 * k + 4.0) / ((1.0 + k) * (2.0 + k) * (2.0 + k))
        }
        FormulaVariant::Rederived => 4.0 * m * odds / ((2.0 + k) * (2.0 + k)),
    }
}

/// Weight on the man above which the critical gratification falls below
/// `(1+k)M`, the largest psychic cost borne at a zero penalty.
pub fn critical_weight(params: &ModelParams, variant: FormulaVariant) -> f64 {
    let k = params.reward;
    match variant {
        FormulaVariant::AsPrinted => {
            let a = k * k * k * k + 4.0 * k;
            (4.0 + a) / (8.0 + 2.0 * a + (6.0 * k * k * k + 13.0 * k * k + 8.0 * k))
        }
        FormulaVariant::Rederived => 4.0 / (4.0 + (1.0 + k) * (2.0 + k) * (2.0 + k)),
    }
}

/// Result of maximizing social welfare over the penalty.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WelfareOptimum {
    pub penalty: Penalty,
    /// `Π(0)`.
    pub zero_value: f64,
    /// Best value found on `[λ_PC, λ̃_w]`.
    pub interior: Maximum,
}

impl WelfareOptimum {
    pub fn value(&self) -> f64 {
        if self.penalty.value() == 0.0 {
            self.zero_value
        } else {
            self.interior.value
        }
    }
}

/// Tolerance under which `Π(0)` and the interior maximum count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Social-welfare-maximizing penalty.
///
/// The man's welfare falls with `λ` and the woman's is flat up to `λ_PC` and
/// falls past `λ̃_w`, so the optimum is either zero or in `[λ_PC, λ̃_w]`. The
/// interval is searched on a 1000-point grid refined to `1e-10`; ties go to
/// zero.
pub fn welfare_optimal_penalty(params: &ModelParams) -> WelfareOptimum {
    let lo = thresholds(params).lambda_pc;
    let hi = woman_optimal_penalty(params).value();
    let zero_value = social_welfare(params, Penalty::ZERO);
    let interior = coarse_then_refine(|l| social_welfare(params, Penalty::new(l)), lo, hi, 1000, 1e-10);
    let penalty = if zero_value >= interior.value - TIE_TOLERANCE {
        Penalty::ZERO
    } else {
        Penalty::new(interior.arg)
    };
    WelfareOptimum { penalty, zero_value, interior }
}
