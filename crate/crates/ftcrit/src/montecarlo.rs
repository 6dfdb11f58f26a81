//! Monte Carlo estimators for unreliability and component criticality, used
//! as a statistical cross-check against the exact results.
//!
//! Draws come from a counter-based generator keyed on
//! `(seed, sample index, event index)`, so estimates are bit-for-bit
//! reproducible and samples are independent of evaluation order.

use std::num::NonZeroU64;

use crate::error::{Error, Result};
use crate::eval::{eval_gate, ForcedAssignment};
use crate::model::StateVector;
use crate::model::{ComponentState, FaultTree};
use crate::prob::{ProbAssignment, TimePoint};

/// Simulation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub samples: NonZeroU64,
    pub seed: u64,
    pub t: TimePoint,
}

/// A Monte Carlo estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    /// Number of samples the mean is taken over (for criticality, the
    /// number of system-failure samples).
    pub samples: u64,
}

// splitmix64 finalizer; statistically strong enough for stratified Bernoulli
// draws and fully deterministic across platforms.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn unit_draw(seed: u64, sample: u64, event: u64) -> f64 {
    let h = mix64(mix64(mix64(seed ^ 0x9e37_79b9_7f4a_7c15) ^ sample) ^ event);
    // top 53 bits → [0, 1)
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn draw_state(probs: &ProbAssignment, seed: u64, sample: u64, state: &mut StateVector) {
    for i in 0..probs.len() {
        let failed = unit_draw(seed, sample, i as u64) < probs.get(i);
        state.set(i, ComponentState::from_failed(failed));
    }
}

fn binomial_estimate(successes: u64, n: u64) -> McEstimate {
    let mean = successes as f64 / n as f64;
    McEstimate {
        mean,
        std_error: (mean * (1.0 - mean) / n as f64).sqrt(),
        samples: n,
    }
}

/// Estimates system unreliability at `cfg.t` by sampling each event as an
/// independent Bernoulli draw of its exponential failure probability.
pub fn estimate_unreliability(tree: &FaultTree, cfg: &McConfig) -> Result<McEstimate> {
    let probs = ProbAssignment::at_time(tree, cfg.t)?;
    let none = ForcedAssignment::empty();
    let mut state = StateVector::all_working(tree.event_count());
    let mut failures = 0u64;
    for sample in 0..cfg.samples.get() {
        draw_state(&probs, cfg.seed, sample, &mut state);
        if eval_gate(tree.compiled(), &state, &none) {
            failures += 1;
        }
    }
    Ok(binomial_estimate(failures, cfg.samples.get()))
}

/// Estimates the criticality of component `id`: among samples where the
/// system fails, the fraction in which `id` has failed and repairing it
/// alone would restore the system. Errors with [`Error::NoFailureSamples`]
/// when no sample fails.
pub fn estimate_criticality(tree: &FaultTree, cfg: &McConfig, id: &str) -> Result<McEstimate> {
    let idx = tree.resolve(id)?;
    let probs = ProbAssignment::at_time(tree, cfg.t)?;
    let none = ForcedAssignment::empty();
    let mut state = StateVector::all_working(tree.event_count());
    let mut system_failures = 0u64;
    let mut critical = 0u64;
    for sample in 0..cfg.samples.get() {
        draw_state(&probs, cfg.seed, sample, &mut state);
        if !eval_gate(tree.compiled(), &state, &none) {
            continue;
        }
        system_failures += 1;
        if state.bit(idx) {
            state.set(idx, ComponentState::Working);
            let repaired = eval_gate(tree.compiled(), &state, &none);
            state.set(idx, ComponentState::Failed);
            if !repaired {
                critical += 1;
            }
        }
    }
    if system_failures == 0 {
        return Err(Error::NoFailureSamples);
    }
    Ok(binomial_estimate(critical, system_failures))
}
