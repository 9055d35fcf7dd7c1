//! Monte Carlo play of the game.
//!
//! Samples are split into fixed chunks of [`CHUNK_LEN`] draws. Chunk `i`
//! draws from ChaCha8 seeded with the root seed via `seed_from_u64` and
//! switched to stream `i`, so every chunk is an independent, reproducible
//! sequence. Per-chunk moments are merged in chunk order, which makes the
//! result a function of `(samples, seed)` alone: any executor that computes
//! the chunks, serially or on threads, and merges them in order gets the
//! same bits. [`McConfig::batches`] only tells such an executor how many
//! workers to use; this crate always runs serially.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complete::equilibrium_outcome;
use crate::consent::ParetoProbabilities;
use crate::model::{classify_pareto, AgentTypes, ModelParams, ParetoClass, Penalty};
use crate::private::{classify_private, private_outcome};
use crate::{Agent, Regime};

/// Draws per chunk.
pub const CHUNK_LEN: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub batches: usize,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        McConfig { samples, seed, batches: 1 }
    }

    pub fn with_batches(self, batches: usize) -> Self {
        McConfig { batches, ..self }
    }

    pub fn chunk_count(&self) -> u64 {
        self.samples.div_ceil(CHUNK_LEN)
    }

    /// Number of draws in chunk `index`; the last chunk may be short.
    pub fn chunk_len(&self, index: u64) -> u64 {
        (self.samples - index * CHUNK_LEN).min(CHUNK_LEN)
    }
}

pub fn chunk_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform on `[0, 1)` with 53 random bits.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn draw_types(params: &ModelParams, rng: &mut ChaCha8Rng) -> AgentTypes {
    let man = params.max_man_type * unit(rng);
    let woman = unit(rng);
    AgentTypes::new(man, woman)
}

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }

    pub fn estimate(&self) -> McEstimate {
        let std_error = if self.count > 1 {
            let n = self.count as f64;
            libm::sqrt(self.m2 / (n - 1.0) / n)
        } else {
            0.0
        };
        McEstimate { mean: self.mean, std_error }
    }
}

/// Tallies indexed by [`ParetoClass`] order: neutral, dominated,
/// conflicting, improving.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts(pub [u64; 4]);

impl ClassCounts {
    fn slot(class: ParetoClass) -> usize {
        match class {
            ParetoClass::Neutral => 0,
            ParetoClass::Dominated => 1,
            ParetoClass::Conflicting => 2,
            ParetoClass::Improving => 3,
        }
    }

    pub fn record(&mut self, class: ParetoClass) {
        self.0[Self::slot(class)] += 1;
    }

    pub fn merge(self, other: ClassCounts) -> ClassCounts {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a += b;
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn estimate(&self) -> McProbabilities {
        let n = self.total() as f64;
        let share = |class| self.0[Self::slot(class)] as f64 / n;
        let se = |q: f64| libm::sqrt(q * (1.0 - q) / n);
        let estimate = ParetoProbabilities::new(
            share(ParetoClass::Improving),
            share(ParetoClass::Conflicting),
            share(ParetoClass::Dominated),
        );
        let std_error = ParetoProbabilities::new(se(estimate.improving), se(estimate.conflicting), se(estimate.dominated));
        McProbabilities { estimate, std_error }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
}

impl McEstimate {
    /// Whether `value` lies within `sigmas` standard errors of the mean.
    pub fn contains(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.std_error + 1e-12
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McProbabilities {
    pub estimate: ParetoProbabilities,
    pub std_error: ParetoProbabilities,
}

/// Payoff moments of one chunk.
pub fn welfare_chunk(
    params: &ModelParams,
    penalty: Penalty,
    agent: Agent,
    regime: Regime,
    cfg: &McConfig,
    index: u64,
) -> Moments {
    let mut rng = chunk_rng(cfg.seed, index);
    let mut moments = Moments::default();
    for _ in 0..cfg.chunk_len(index) {
        let types = draw_types(params, &mut rng);
        let outcome = match regime {
            Regime::Complete => equilibrium_outcome(params, types, penalty),
            Regime::Private => private_outcome(params, types, penalty),
        };
        moments.push(match agent {
            Agent::Man => outcome.payoffs.man,
            Agent::Woman => outcome.payoffs.woman,
        });
    }
    moments
}

/// Category tallies of one chunk.
pub fn class_chunk(params: &ModelParams, penalty: Penalty, regime: Regime, cfg: &McConfig, index: u64) -> ClassCounts {
    let mut rng = chunk_rng(cfg.seed, index);
    let mut counts = ClassCounts::default();
    for _ in 0..cfg.chunk_len(index) {
        let types = draw_types(params, &mut rng);
        counts.record(match regime {
            Regime::Complete => classify_pareto(&equilibrium_outcome(params, types, penalty)),
            Regime::Private => classify_private(params, types.woman, penalty),
        });
    }
    counts
}

/// # Panics
///
/// If `cfg.samples == 0`.
pub fn mc_welfare(params: &ModelParams, penalty: Penalty, agent: Agent, regime: Regime, cfg: &McConfig) -> McEstimate {
    assert!(cfg.samples > 0, "Monte Carlo needs at least one sample");
    (0..cfg.chunk_count())
        .map(|i| welfare_chunk(params, penalty, agent, regime, cfg, i))
        .fold(Moments::default(), Moments::merge)
        .estimate()
}

/// # Panics
///
/// If `cfg.samples == 0`.
pub fn mc_pareto_probabilities(params: &ModelParams, penalty: Penalty, regime: Regime, cfg: &McConfig) -> McProbabilities {
    assert!(cfg.samples > 0, "Monte Carlo needs at least one sample");
    (0..cfg.chunk_count())
        .map(|i| class_chunk(params, penalty, regime, cfg, i))
        .fold(ClassCounts::default(), ClassCounts::merge)
        .estimate()
}
