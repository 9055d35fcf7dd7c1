//! Parameters, types, stage payoffs and the payoff-based Pareto classifier.

use alloc::vec::Vec;
use core::fmt;

/// The environment of one interaction plus the planner's objective weights.
///
/// Fields are public; operations elsewhere in the crate assume
/// [`ModelParams::validate`] has passed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Gratification `G` the man obtains when his proposal is accepted.
    pub gratification: f64,
    /// Reward power `k` of the man.
    pub reward: f64,
    /// Upper end `M` of the man's type support.
    pub max_man_type: f64,
    /// Weight `μ` on the man's welfare in the utilitarian objective.
    pub man_weight: f64,
    /// Weight `α` on the probability of Pareto-improving interactions in the
    /// linear consent objective.
    pub alpha: f64,
}

/// One violated model assumption.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Violation {
    /// A1: gratification must be strictly positive.
    Gratification(f64),
    /// A1: reward power must be strictly positive.
    Reward(f64),
    /// A2: `(1+k)M` must be strictly below one.
    Rejection { product: f64 },
    /// `M` must be strictly positive.
    MaxManType(f64),
    /// `μ` must lie strictly inside `(0, 1)`.
    ManWeight(f64),
    /// `α` must be finite.
    Alpha(f64),
}

impl Violation {
    /// Short tag of the violated assumption.
    pub fn assumption(&self) -> &'static str {
        match self {
            Violation::Gratification(_) | Violation::Reward(_) => "A1",
            Violation::Rejection { .. } => "A2",
            Violation::MaxManType(_) => "M-range",
            Violation::ManWeight(_) => "mu-range",
            Violation::Alpha(_) => "alpha-range",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Gratification(g) => write!(f, "A1 violated: G = {} must be > 0", Sig(g)),
            Violation::Reward(k) => write!(f, "A1 violated: k = {} must be > 0", Sig(k)),
            Violation::Rejection { product } => {
                write!(f, "A2 violated: (1+k)M = {} \u{2265} 1", Sig(product))
            }
            Violation::MaxManType(m) => write!(f, "M-range violated: M = {} must be > 0", Sig(m)),
            Violation::ManWeight(mu) => {
                write!(f, "mu-range violated: mu = {} must lie in (0, 1)", Sig(mu))
            }
            Violation::Alpha(a) => write!(f, "alpha-range violated: alpha = {} must be finite", Sig(a)),
        }
    }
}

/// Formats a float with nine significant digits and no trailing zeros.
#[derive(Clone, Copy, Debug)]
pub struct Sig(pub f64);

impl fmt::Display for Sig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.0;
        if !x.is_finite() || x == 0.0 {
            return write!(f, "{}", x);
        }
        let magnitude = libm::floor(libm::log10(x.abs())) as i32;
        let decimals = (8 - magnitude).max(0) as usize;
        let s = alloc::format!("{:.*}", decimals, x);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.')
        } else {
            s.as_str()
        };
        f.write_str(s)
    }
}

impl ModelParams {
    pub fn new(gratification: f64, reward: f64, max_man_type: f64, man_weight: f64, alpha: f64) -> Self {
        ModelParams { gratification, reward, max_man_type, man_weight, alpha }
    }

    /// Checks A1, A2 and the weight ranges, returning every violation found.
    // negated comparisons so that NaN fields fail
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if !(self.gratification > 0.0 && self.gratification.is_finite()) {
            violations.push(Violation::Gratification(self.gratification));
        }
        if !(self.reward > 0.0 && self.reward.is_finite()) {
            violations.push(Violation::Reward(self.reward));
        }
        if !(self.max_man_type > 0.0) {
            violations.push(Violation::MaxManType(self.max_man_type));
        }
        let product = (1.0 + self.reward) * self.max_man_type;
        if !(product < 1.0) {
            violations.push(Violation::Rejection { product });
        }
        if !(self.man_weight > 0.0 && self.man_weight < 1.0) {
            violations.push(Violation::ManWeight(self.man_weight));
        }
        if !self.alpha.is_finite() {
            violations.push(Violation::Alpha(self.alpha));
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn with_gratification(self, gratification: f64) -> Self {
        ModelParams { gratification, ..self }
    }

    pub fn with_man_weight(self, man_weight: f64) -> Self {
        ModelParams { man_weight, ..self }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        ModelParams { alpha, ..self }
    }
}

/// A `(θm, θw)` pair locating one interaction in type space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AgentTypes {
    /// Probability the man rewards acceptance and punishes rejection.
    pub man: f64,
    /// Psychic cost of accepting for the woman, also her reporting probability.
    pub woman: f64,
}

impl AgentTypes {
    pub fn new(man: f64, woman: f64) -> Self {
        AgentTypes { man, woman }
    }

    pub fn is_within(&self, params: &ModelParams) -> bool {
        (0.0..=params.max_man_type).contains(&self.man) && (0.0..=1.0).contains(&self.woman)
    }
}

/// Size `λ ≥ 0` of the penalty for making an unwelcome advance.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Penalty(f64);

impl Penalty {
    pub const ZERO: Penalty = Penalty(0.0);

    /// # Panics
    ///
    /// If `lambda` is negative or NaN.
    pub fn new(lambda: f64) -> Self {
        Self::try_new(lambda).expect("penalty must be a non-negative number")
    }

    pub fn try_new(lambda: f64) -> Option<Self> {
        (lambda >= 0.0).then_some(Penalty(lambda))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Realized payoffs `(u_m, u_w)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PayoffPair {
    pub man: f64,
    pub woman: f64,
}

impl PayoffPair {
    pub const BASELINE: PayoffPair = PayoffPair { man: 0.0, woman: 0.0 };
}

/// The path realized in the game tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    NoProposal,
    ProposalAccepted,
    ProposalRejected,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumOutcome {
    pub path: Path,
    pub payoffs: PayoffPair,
}

impl EquilibriumOutcome {
    pub fn no_proposal() -> Self {
        EquilibriumOutcome { path: Path::NoProposal, payoffs: PayoffPair::BASELINE }
    }
}

/// Pareto category of an interaction relative to the zero baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParetoClass {
    Neutral,
    Dominated,
    Conflicting,
    Improving,
}

impl ParetoClass {
    /// Two-letter label used in region-map files.
    pub fn code(self) -> &'static str {
        match self {
            ParetoClass::Neutral => "PN",
            ParetoClass::Dominated => "PD",
            ParetoClass::Conflicting => "PC",
            ParetoClass::Improving => "PI",
        }
    }
}

/// Payoffs when the proposal is made and accepted: `(G − λθw, kθm − θw)`.
pub fn payoff_accept(params: &ModelParams, types: AgentTypes, penalty: Penalty) -> PayoffPair {
    PayoffPair {
        man: params.gratification - penalty.value() * types.woman,
        woman: params.reward * types.man - types.woman,
    }
}

/// Payoffs when the proposal is made and rejected: `(−λθw, −θm)`.
pub fn payoff_reject(_params: &ModelParams, types: AgentTypes, penalty: Penalty) -> PayoffPair {
    PayoffPair { man: -penalty.value() * types.woman, woman: -types.man }
}

/// Classifies an outcome from its realized payoffs.
///
/// Without a proposal the interaction is neutral. With one, both payoffs
/// strictly negative is dominated, one strictly negative is conflicting, and
/// both weakly positive is improving (a zero payoff after a proposal counts
/// as improving).
pub fn classify_pareto(outcome: &EquilibriumOutcome) -> ParetoClass {
    if outcome.path == Path::NoProposal {
        return ParetoClass::Neutral;
    }
    let PayoffPair { man, woman } = outcome.payoffs;
    match (man < 0.0, woman < 0.0) {
        (true, true) => ParetoClass::Dominated,
        (true, false) | (false, true) => ParetoClass::Conflicting,
        (false, false) => ParetoClass::Improving,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn p0() -> ModelParams {
        ModelParams::new(1.0, 2.0, 0.3, 0.5, 1.0)
    }

    #[test]
    fn validate_examples() {
        assert!(p0().validate().is_ok());

        let errs = ModelParams::new(1.0, 1.0, 0.6, 0.5, 1.0).validate().unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].assumption(), "A2");
        assert_eq!(errs[0].to_string(), "A2 violated: (1+k)M = 1.2 \u{2265} 1");

        let errs = ModelParams::new(0.0, 2.0, 0.3, 0.5, 1.0).validate().unwrap_err();
        assert_eq!(errs, [Violation::Gratification(0.0)]);
        assert_eq!(errs[0].assumption(), "A1");
    }

    #[test]
    fn validate_collects_every_violation() {
        let errs = ModelParams::new(-1.0, 0.0, 2.0, 1.0, f64::NAN).validate().unwrap_err();
        let tags: Vec<_> = errs.iter().map(Violation::assumption).collect();
        assert_eq!(tags, ["A1", "A1", "A2", "mu-range", "alpha-range"]);
    }

    #[test]
    fn accept_payoffs() {
        let p = p0();
        let out = payoff_accept(&p, AgentTypes::new(0.2, 0.5), Penalty::ZERO);
        assert_abs_diff_eq!(out.man, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.woman, -0.1, epsilon = 1e-15);

        let out = payoff_accept(&p, AgentTypes::new(0.2, 0.3), Penalty::new(2.0));
        assert_abs_diff_eq!(out.man, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(out.woman, 0.1, epsilon = 1e-15);

        let out = payoff_accept(&p, AgentTypes::new(0.0, 0.0), Penalty::ZERO);
        assert_eq!(out, PayoffPair { man: 1.0, woman: 0.0 });
    }

    #[test]
    fn reject_payoffs() {
        let p = p0();
        let out = payoff_reject(&p, AgentTypes::new(0.2, 0.5), Penalty::new(2.0));
        assert_eq!(out, PayoffPair { man: -1.0, woman: -0.2 });
        let out = payoff_reject(&p, AgentTypes::new(0.0, 0.0), Penalty::new(3.0));
        assert_eq!(out.man, 0.0);
        assert_eq!(out.woman, 0.0);
        let out = payoff_reject(&p, AgentTypes::new(0.3, 1.0), Penalty::ZERO);
        assert_eq!(out.man, 0.0);
        assert_eq!(out.woman, -0.3);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_pareto(&EquilibriumOutcome::no_proposal()), ParetoClass::Neutral);
        let accepted = |man, woman| EquilibriumOutcome {
            path: Path::ProposalAccepted,
            payoffs: PayoffPair { man, woman },
        };
        assert_eq!(classify_pareto(&accepted(1.0, -0.1)), ParetoClass::Conflicting);
        assert_eq!(classify_pareto(&accepted(0.4, 0.1)), ParetoClass::Improving);
        // boundary: woman exactly at baseline
        assert_eq!(classify_pareto(&accepted(0.4, 0.0)), ParetoClass::Improving);
        let rejected = EquilibriumOutcome {
            path: Path::ProposalRejected,
            payoffs: PayoffPair { man: -1.0, woman: -0.2 },
        };
        assert_eq!(classify_pareto(&rejected), ParetoClass::Dominated);
    }

    #[test]
    fn penalty_rejects_negative() {
        assert!(Penalty::try_new(-0.1).is_none());
        assert!(Penalty::try_new(f64::NAN).is_none());
        assert_eq!(Penalty::try_new(0.0), Some(Penalty::ZERO));
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(Sig(1.2000000000000002).to_string(), "1.2");
        assert_eq!(Sig(2.2222222222222223).to_string(), "2.22222222");
        assert_eq!(Sig(0.0558641975308642).to_string(), "0.0558641975");
        assert_eq!(Sig(-0.125).to_string(), "-0.125");
        assert_eq!(Sig(0.0).to_string(), "0");
        assert_eq!(Sig(1234.5).to_string(), "1234.5");
    }

    fn valid_params() -> impl Strategy<Value = ModelParams> {
        (0.01f64..5.0, 0.05f64..5.0, 0.01f64..0.99, 0.01f64..0.99).prop_map(|(g, k, frac, mu)| {
            ModelParams::new(g, k, frac / (1.0 + k), mu, 1.0)
        })
    }

    proptest! {
        #[test]
        fn marginal_gain_identity(p in valid_params(), um in 0.0f64..1.0, w in 0.0f64..1.0, l in 0.0f64..10.0) {
            let t = AgentTypes::new(um * p.max_man_type, w);
            let pen = Penalty::new(l);
            let gain = payoff_accept(&p, t, pen).woman - payoff_reject(&p, t, pen).woman;
            let expected = (1.0 + p.reward) * t.man - t.woman;
            prop_assert!((gain - expected).abs() <= 1e-12);
        }

        #[test]
        fn rejection_never_pays(p in valid_params(), um in 0.0f64..1.0, w in 0.0f64..1.0, l in 0.0f64..10.0) {
            let t = AgentTypes::new(um * p.max_man_type, w);
            let out = payoff_reject(&p, t, Penalty::new(l));
            prop_assert!(out.man <= 0.0 && out.woman <= 0.0);
        }

        #[test]
        fn generated_params_validate(p in valid_params()) {
            prop_assert!(p.validate().is_ok());
        }
    }
}
