//! Threaded Monte Carlo driver.
//!
//! Chunks are spread over `cfg.batches` scoped threads, then merged in chunk
//! order, so the estimates are bit-identical to the serial ones in
//! `penalty_core::oracles`.

use std::thread;

use penalty_core::oracles::monte_carlo::{class_chunk, welfare_chunk, ClassCounts, Moments};
use penalty_core::oracles::{McConfig, McEstimate, McExecutor, McProbabilities};
use penalty_core::{Agent, ModelParams, Penalty, Regime};

/// Evaluates `chunk(i)` for every chunk index on up to `workers` threads and
/// returns the results in index order.
fn map_chunks<T, F>(count: u64, workers: usize, chunk: F) -> Vec<T>
where
    T: Send + Default + Clone,
    F: Fn(u64) -> T + Sync,
{
    let workers = workers.clamp(1, count.max(1) as usize);
    let mut results = vec![T::default(); count as usize];
    let per = results.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        for (w, slots) in results.chunks_mut(per).enumerate() {
            let chunk = &chunk;
            s.spawn(move || {
                let start = (w * per) as u64;
                for (offset, slot) in slots.iter_mut().enumerate() {
                    *slot = chunk(start + offset as u64);
                }
            });
        }
    });
    results
}

pub fn mc_welfare(p: &ModelParams, pen: Penalty, agent: Agent, regime: Regime, cfg: &McConfig) -> McEstimate {
    assert!(cfg.samples > 0, "Monte Carlo needs at least one sample");
    map_chunks(cfg.chunk_count(), cfg.batches, |i| welfare_chunk(p, pen, agent, regime, cfg, i))
        .into_iter()
        .fold(Moments::default(), Moments::merge)
        .estimate()
}

pub fn mc_pareto_probabilities(p: &ModelParams, pen: Penalty, regime: Regime, cfg: &McConfig) -> McProbabilities {
    assert!(cfg.samples > 0, "Monte Carlo needs at least one sample");
    map_chunks(cfg.chunk_count(), cfg.batches, |i| class_chunk(p, pen, regime, cfg, i))
        .into_iter()
        .fold(ClassCounts::default(), ClassCounts::merge)
        .estimate()
}

/// [`McExecutor`] backed by the threaded driver.
#[derive(Clone, Copy, Debug, Default)]
pub struct Threaded;

impl McExecutor for Threaded {
    fn welfare(&self, p: &ModelParams, pen: Penalty, agent: Agent, regime: Regime, cfg: &McConfig) -> McEstimate {
        mc_welfare(p, pen, agent, regime, cfg)
    }

    fn probabilities(&self, p: &ModelParams, pen: Penalty, regime: Regime, cfg: &McConfig) -> McProbabilities {
        mc_pareto_probabilities(p, pen, regime, cfg)
    }
}
