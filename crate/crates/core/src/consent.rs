//! Consent-based objectives over the probabilities of Pareto categories.

use thiserror::Error;

use crate::complete::thresholds;
use crate::model::{ModelParams, ParetoClass, Penalty};

/// Probabilities `(φ_PI, φ_PC, φ_PD)` of an interaction being Pareto
/// improving, conflicting or dominated. The remainder is neutral.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ParetoProbabilities {
    pub improving: f64,
    pub conflicting: f64,
    pub dominated: f64,
}

impl ParetoProbabilities {
    pub const NEUTRAL: ParetoProbabilities =
        ParetoProbabilities { improving: 0.0, conflicting: 0.0, dominated: 0.0 };

    pub fn new(improving: f64, conflicting: f64, dominated: f64) -> Self {
        ParetoProbabilities { improving, conflicting, dominated }
    }

    pub fn neutral(&self) -> f64 {
        1.0 - self.improving - self.conflicting - self.dominated
    }

    pub fn get(&self, class: ParetoClass) -> f64 {
        match class {
            ParetoClass::Improving => self.improving,
            ParetoClass::Conflicting => self.conflicting,
            ParetoClass::Dominated => self.dominated,
            ParetoClass::Neutral => self.neutral(),
        }
    }

    fn shifted(mut self, class: ParetoClass, by: f64) -> Self {
        match class {
            ParetoClass::Improving => self.improving += by,
            ParetoClass::Conflicting => self.conflicting += by,
            ParetoClass::Dominated => self.dominated += by,
            ParetoClass::Neutral => {}
        }
        self
    }
}

/// A planner objective evaluated on category probabilities.
pub trait ConsentObjective {
    fn evaluate(&self, probabilities: &ParetoProbabilities) -> f64;
}

impl<F> ConsentObjective for F
where
    F: Fn(&ParetoProbabilities) -> f64,
{
    fn evaluate(&self, probabilities: &ParetoProbabilities) -> f64 {
        self(probabilities)
    }
}

/// `C = α·φ_PI − (φ_PC + φ_PD)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearConsent {
    pub alpha: f64,
}

impl LinearConsent {
    pub fn new(alpha: f64) -> Self {
        LinearConsent { alpha }
    }
}

impl ConsentObjective for LinearConsent {
    fn evaluate(&self, p: &ParetoProbabilities) -> f64 {
        self.alpha * p.improving - (p.conflicting + p.dominated)
    }
}

/// Category probabilities while no proposal is deterred: `(kM/2, M/2, 0)`.
pub fn probabilities_undeterred(params: &ModelParams) -> ParetoProbabilities {
    let (k, m) = (params.reward, params.max_man_type);
    ParetoProbabilities::new(k * m / 2.0, m / 2.0, 0.0)
}

/// Category probabilities for `λ_PC < λ ≤ λ_PI`, where only conflicting
/// proposals are deterred.
pub fn probabilities_partially_deterred(params: &ModelParams, lambda: f64) -> ParetoProbabilities {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    let conflicting = (g * m / lambda - k * m * m / 2.0 - g * g / (2.0 * (1.0 + k) * lambda * lambda)) / m;
    ParetoProbabilities::new(k * m / 2.0, conflicting, 0.0)
}

/// Category probabilities for `λ > λ_PI`, where improving proposals are
/// deterred as well.
pub fn probabilities_deterred(params: &ModelParams, lambda: f64) -> ParetoProbabilities {
    let ModelParams { gratification: g, reward: k, max_man_type: m, .. } = *params;
    let improving = (g * m / lambda - g * g / (2.0 * lambda * lambda * k)) / m;
    let conflicting = g * g / (2.0 * k * (1.0 + k) * lambda * lambda) / m;
    ParetoProbabilities::new(improving, conflicting, 0.0)
}

/// Equilibrium category probabilities under complete information.
pub fn pareto_probabilities(params: &ModelParams, penalty: Penalty) -> ParetoProbabilities {
    let t = thresholds(params);
    let lambda = penalty.value();
    if lambda <= t.lambda_pc {
        probabilities_undeterred(params)
    } else if lambda <= t.lambda_pi {
        probabilities_partially_deterred(params, lambda)
    } else {
        probabilities_deterred(params, lambda)
    }
}

pub fn consent_value<O: ConsentObjective + ?Sized>(params: &ModelParams, penalty: Penalty, objective: &O) -> f64 {
    objective.evaluate(&pareto_probabilities(params, penalty))
}

/// Which axiom a probe found violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// Strictly decreasing in `φ_PC` and `φ_PD`.
    Monotonicity,
    /// `∂C/∂φ_PI ≤ |∂C/∂φ_t|` for `t ∈ {PC, PD}`.
    RelativeMarginalEffects,
}

/// A witness point at which an objective breaks an axiom.
#[derive(Clone, Copy, Debug, PartialEq, Error)]
#[error("{axiom:?} fails along {along:?} at {at:?} (measured {measured:e})")]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub at: ParetoProbabilities,
    pub along: ParetoClass,
    /// Forward difference for MON, `∂C/∂φ_PI − |∂C/∂φ_t|` for RME.
    pub measured: f64,
}

/// Finite-difference probe settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeConfig {
    /// Simplex grid spacing is `1 / divisions`.
    pub divisions: usize,
    /// Finite-difference step.
    pub step: f64,
    /// Allowed slack on each inequality.
    pub tolerance: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { divisions: 40, step: 1e-3, tolerance: 1e-9 }
    }
}

fn simplex_grid(divisions: usize) -> impl Iterator<Item = ParetoProbabilities> {
    let n = divisions as f64;
    (0..=divisions).flat_map(move |i| {
        (0..=divisions - i).flat_map(move |j| {
            (0..=divisions - i - j)
                .map(move |l| ParetoProbabilities::new(i as f64 / n, j as f64 / n, l as f64 / n))
        })
    })
}

fn total(p: &ParetoProbabilities) -> f64 {
    p.improving + p.conflicting + p.dominated
}

/// Probes MON: any increase in `φ_PC` or `φ_PD` must lower the objective.
pub fn check_mon<O: ConsentObjective + ?Sized>(objective: &O, cfg: &ProbeConfig) -> Result<(), AxiomViolation> {
    let h = cfg.step;
    for at in simplex_grid(cfg.divisions) {
        if total(&at) > 1.0 - h {
            continue;
        }
        let base = objective.evaluate(&at);
        for along in [ParetoClass::Conflicting, ParetoClass::Dominated] {
            let diff = objective.evaluate(&at.shifted(along, h)) - base;
            if diff >= -cfg.tolerance || diff.is_nan() {
                return Err(AxiomViolation { axiom: Axiom::Monotonicity, at, along, measured: diff });
            }
        }
    }
    Ok(())
}

/// Probes RME by central differences on the interior of the simplex.
pub fn check_rme<O: ConsentObjective + ?Sized>(objective: &O, cfg: &ProbeConfig) -> Result<(), AxiomViolation> {
    let h = cfg.step;
    let slope = |at: ParetoProbabilities, along| {
        (objective.evaluate(&at.shifted(along, h)) - objective.evaluate(&at.shifted(along, -h))) / (2.0 * h)
    };
    for at in simplex_grid(cfg.divisions) {
        let interior = at.improving >= h && at.conflicting >= h && at.dominated >= h && total(&at) <= 1.0 - h;
        if !interior {
            continue;
        }
        let gain = slope(at, ParetoClass::Improving);
        for along in [ParetoClass::Conflicting, ParetoClass::Dominated] {
            let excess = gain - slope(at, along).abs();
            if excess > cfg.tolerance {
                return Err(AxiomViolation { axiom: Axiom::RelativeMarginalEffects, at, along, measured: excess });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Error)]
pub enum ConsentError {
    #[error("alpha = {0} is outside (0, 1]")]
    AlphaOutOfRange(f64),
    #[error("stationary value {stationary} is below the best branch value {best}")]
    NotGlobalMaximum { stationary: f64, best: f64 },
    #[error("objective fails an axiom: {0}")]
    Axiom(AxiomViolation),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsentOptimum {
    pub penalty: Penalty,
    pub value: f64,
}

/// Maximizer of the linear consent objective,
/// `λ*_c = ((1+α(1+k))/(α(1+k)))·G/(kM)`.
///
/// The closed form comes from the `λ > λ_PI` branch only, so its value is
/// compared against the flat branch, the supremum of the middle branch
/// (attained at `λ_PI`, where it is increasing) and the `λ → ∞` limit of zero.
pub fn consent_optimal_penalty(params: &ModelParams, alpha: f64) -> Result<ConsentOptimum, ConsentError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(ConsentError::AlphaOutOfRange(alpha));
    }
    let k = params.reward;
    let t = thresholds(params);
    let objective = LinearConsent::new(alpha);
    let lambda = (1.0 + alpha * (1.0 + k)) / (alpha * (1.0 + k)) * t.lambda_pi;
    let value = consent_value(params, Penalty::new(lambda), &objective);

    let flat = objective.evaluate(&probabilities_undeterred(params));
    let middle = objective.evaluate(&probabilities_partially_deterred(params, t.lambda_pi));
    let best = flat.max(middle).max(0.0);
    if value < best - 1e-12 {
        return Err(ConsentError::NotGlobalMaximum { stationary: value, best });
    }
    Ok(ConsentOptimum { penalty: Penalty::new(lambda), value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::welfare::woman_optimal_penalty;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn p0() -> ModelParams {
        ModelParams::new(1.0, 2.0, 0.3, 0.5, 1.0)
    }

    fn assert_probs(p: ParetoProbabilities, improving: f64, conflicting: f64) {
        assert_abs_diff_eq!(p.improving, improving, epsilon = 1e-6);
        assert_abs_diff_eq!(p.conflicting, conflicting, epsilon = 1e-6);
        assert_eq!(p.dominated, 0.0);
    }

    // Reference values: 8000×8000 midpoint-grid classification counts.
    #[test]
    fn probability_examples() {
        let p = p0();
        assert_probs(pareto_probabilities(&p, Penalty::new(1.0)), 0.3, 0.15);
        assert_probs(pareto_probabilities(&p, Penalty::new(1.4)), 0.3, 0.130839);
        assert_probs(pareto_probabilities(&p, Penalty::new(2.0)), 0.291667, 0.069444);
    }

    #[test]
    fn consent_value_examples() {
        let p = p0();
        let lin = LinearConsent::new(1.0);
        assert_abs_diff_eq!(consent_value(&p, Penalty::new(1.0), &lin), 0.15, epsilon = 1e-12);
        assert_abs_diff_eq!(consent_value(&p, Penalty::new(20.0 / 9.0), &lin), 0.225, epsilon = 1e-12);
        for alpha in [-2.0, 0.5, 1.0] {
            let v = consent_value(&p, Penalty::new(1e9), &LinearConsent::new(alpha));
            assert!(v.abs() < 1e-8);
        }
    }

    #[test]
    fn optimal_examples() {
        let p = p0();
        let opt = consent_optimal_penalty(&p, 1.0).unwrap();
        assert_abs_diff_eq!(opt.penalty.value(), 20.0 / 9.0, epsilon = 1e-12);
        let opt = consent_optimal_penalty(&p, 0.5).unwrap();
        assert_abs_diff_eq!(opt.penalty.value(), 25.0 / 9.0, epsilon = 1e-12);
        assert_eq!(
            consent_optimal_penalty(&p, 1.0).unwrap().penalty,
            woman_optimal_penalty(&p)
        );
        assert_eq!(consent_optimal_penalty(&p, 0.0), Err(ConsentError::AlphaOutOfRange(0.0)));
        assert_eq!(consent_optimal_penalty(&p, 1.5), Err(ConsentError::AlphaOutOfRange(1.5)));
    }

    #[test]
    fn mon_examples() {
        let cfg = ProbeConfig::default();
        assert!(check_mon(&LinearConsent::new(1.0), &cfg).is_ok());
        assert!(check_mon(&LinearConsent::new(-5.0), &cfg).is_ok());
        let bad = |p: &ParetoProbabilities| p.conflicting;
        let err = check_mon(&bad, &cfg).unwrap_err();
        assert_eq!(err.axiom, Axiom::Monotonicity);
        assert_eq!(err.along, ParetoClass::Conflicting);
        // flat in φ_PD is not strictly decreasing
        let flat_pd = |p: &ParetoProbabilities| p.improving - p.conflicting;
        assert_eq!(check_mon(&flat_pd, &cfg).unwrap_err().along, ParetoClass::Dominated);
    }

    #[test]
    fn rme_examples() {
        let cfg = ProbeConfig::default();
        assert!(check_rme(&LinearConsent::new(1.0), &cfg).is_ok());
        let err = check_rme(&LinearConsent::new(1.5), &cfg).unwrap_err();
        assert_eq!(err.axiom, Axiom::RelativeMarginalEffects);
        assert_abs_diff_eq!(err.measured, 0.5, epsilon = 1e-9);
        assert!(check_rme(&LinearConsent::new(-1.0), &cfg).is_ok());
    }

    #[test]
    fn nonlinear_objective_probe() {
        let cfg = ProbeConfig::default();
        // concave in φ_PI with slope ≤ 1: MON and RME both hold
        let ok = |p: &ParetoProbabilities| libm::sqrt(p.improving + 1.0) - 2.0 * p.conflicting - p.dominated;
        assert!(check_mon(&ok, &cfg).is_ok());
        assert!(check_rme(&ok, &cfg).is_ok());
        // slope in φ_PI reaches 3 near zero
        let steep = |p: &ParetoProbabilities| 3.0 * p.improving - 1.5 * p.improving * p.improving - p.conflicting - p.dominated;
        assert!(check_rme(&steep, &cfg).is_err());
    }

    fn valid_params() -> impl Strategy<Value = ModelParams> {
        (0.01f64..5.0, 0.05f64..5.0, 0.01f64..0.99).prop_map(|(g, k, frac)| {
            ModelParams::new(g, k, frac / (1.0 + k), 0.5, 1.0)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn probabilities_join_at_thresholds(p in valid_params()) {
            let t = thresholds(&p);
            let a = probabilities_undeterred(&p);
            let b = probabilities_partially_deterred(&p, t.lambda_pc);
            prop_assert!((a.conflicting - b.conflicting).abs() <= 1e-9);
            prop_assert!((a.improving - b.improving).abs() <= 1e-9);
            let c = probabilities_partially_deterred(&p, t.lambda_pi);
            let d = probabilities_deterred(&p, t.lambda_pi);
            prop_assert!((c.conflicting - d.conflicting).abs() <= 1e-9);
            prop_assert!((c.improving - d.improving).abs() <= 1e-9);
            let k = p.reward;
            prop_assert!((c.conflicting - p.max_man_type * k / (2.0 * (1.0 + k))).abs() <= 1e-9);
        }

        #[test]
        fn probabilities_in_simplex(p in valid_params(), l in 0.0f64..50.0) {
            let pr = pareto_probabilities(&p, Penalty::new(l));
            for v in [pr.improving, pr.conflicting, pr.dominated, pr.neutral()] {
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
            }
        }

        #[test]
        fn consent_flat_then_rising(p in valid_params(), u in 0.0f64..1.0, alpha in -3.0f64..1.0) {
            let t = thresholds(&p);
            let obj = LinearConsent::new(alpha);
            let c = |l: f64| consent_value(&p, Penalty::new(l), &obj);
            prop_assert_eq!(c(u * t.lambda_pc), c(0.0));
            let h = 1e-4 * (t.lambda_pi - t.lambda_pc);
            let l = t.lambda_pc + h + u * (t.lambda_pi - t.lambda_pc - 2.0 * h);
            prop_assert!(c(l + h) > c(l));
        }

        #[test]
        fn optimum_exceeds_lambda_pi_and_grows_with_g(p in valid_params(), alpha in 0.01f64..=1.0) {
            let t = thresholds(&p);
            let opt = consent_optimal_penalty(&p, alpha).unwrap();
            prop_assert!(opt.penalty.value() > t.lambda_pi);
            let richer = consent_optimal_penalty(&p.with_gratification(p.gratification * 1.5), alpha).unwrap();
            prop_assert!(richer.penalty.value() > opt.penalty.value());
        }

        #[test]
        fn alpha_one_matches_woman_optimum(p in valid_params()) {
            let a = consent_optimal_penalty(&p, 1.0).unwrap().penalty.value();
            let b = woman_optimal_penalty(&p).value();
            prop_assert!((a - b).abs() <= 1e-12 * b.max(1.0));
        }
    }
}
