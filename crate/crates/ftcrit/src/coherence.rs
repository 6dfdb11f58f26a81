//! Coherent-system checks by exhaustive state enumeration: the two boundary
//! conditions, monotonicity of the structure function, and component
//! relevance.
//!
//! Coherence is decided structurally over boolean states rather than over
//! probability values, which is exact and finite.

use crate::error::{Error, Result};
use crate::eval::{eval_gate, ForcedAssignment};
use crate::limits;
use crate::model::{ComponentState, FaultTree, StateVector};

/// Outcome of the monotonicity check. A violation carries the first witness
/// in enumeration order: the lowest state mask, then the lowest event index,
/// where failing `event` flips the top event from occurring to not occurring.
#[derive(Debug, Clone, PartialEq)]
pub enum Monotonicity {
    Monotone,
    Violated { state: StateVector, event: String },
}

impl Monotonicity {
    pub fn is_monotone(&self) -> bool {
        matches!(self, Monotonicity::Monotone)
    }
}

/// Full coherence verdict for a tree.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceReport {
    /// φ(all working) = 0.
    pub boundary_zero: bool,
    /// φ(all failed) = 1.
    pub boundary_one: bool,
    pub monotone: bool,
    pub monotone_witness: Option<(StateVector, String)>,
    /// Ids of events whose state never changes φ, in declaration order.
    pub irrelevant: Vec<String>,
    pub is_coherent: bool,
}

fn check_cap(tree: &FaultTree) -> Result<usize> {
    let n = tree.event_count();
    let cap = limits::max_events();
    if n > cap {
        return Err(Error::TooManyEvents { n, cap });
    }
    Ok(n)
}

/// Boundary conditions: `(φ(all working) = 0, φ(all failed) = 1)`.
pub fn check_boundaries(tree: &FaultTree) -> Result<(bool, bool)> {
    let n = check_cap(tree)?;
    let none = ForcedAssignment::empty();
    let zero = !eval_gate(tree.compiled(), &StateVector::all_working(n), &none);
    let one = eval_gate(tree.compiled(), &StateVector::all_failed(n), &none);
    Ok((zero, one))
}

/// Checks that failing any single working component never un-fails the
/// system: for every state `s` and event `e` working in `s`,
/// `φ(s) ≤ φ(s[e := failed])`.
pub fn check_monotone(tree: &FaultTree) -> Result<Monotonicity> {
    let n = check_cap(tree)?;
    let none = ForcedAssignment::empty();
    let mut state = StateVector::all_working(n);
    for mask in 0..(1u64 << n) {
        for i in 0..n {
            state.set(i, ComponentState::from_failed((mask >> i) & 1 == 1));
        }
        let base = eval_gate(tree.compiled(), &state, &none);
        if !base {
            continue;
        }
        for i in 0..n {
            if state.bit(i) {
                continue;
            }
            state.set(i, ComponentState::Failed);
            let flipped = eval_gate(tree.compiled(), &state, &none);
            state.set(i, ComponentState::Working);
            if !flipped {
                return Ok(Monotonicity::Violated {
                    state: StateVector::from_mask(mask, n),
                    event: tree.event(i).id().to_string(),
                });
            }
        }
    }
    Ok(Monotonicity::Monotone)
}

/// Ids of irrelevant events: those with no state `s` where flipping the
/// event changes φ. Returned in declaration order.
pub fn check_relevance(tree: &FaultTree) -> Result<Vec<String>> {
    let n = check_cap(tree)?;
    let none = ForcedAssignment::empty();
    let mut irrelevant = Vec::new();
    let mut state = StateVector::all_working(n);
    'events: for i in 0..n {
        for mask in 0..(1u64 << n) {
            if (mask >> i) & 1 == 1 {
                continue;
            }
            for j in 0..n {
                state.set(j, ComponentState::from_failed((mask >> j) & 1 == 1));
            }
            let working = eval_gate(tree.compiled(), &state, &none);
            state.set(i, ComponentState::Failed);
            let failed = eval_gate(tree.compiled(), &state, &none);
            if working != failed {
                continue 'events;
            }
        }
        irrelevant.push(tree.event(i).id().to_string());
    }
    Ok(irrelevant)
}

/// Runs every check and assembles the verdict. The tree is coherent iff both
/// boundary conditions hold, φ is monotone, and no event is irrelevant.
pub fn coherence_report(tree: &FaultTree) -> Result<CoherenceReport> {
    let (boundary_zero, boundary_one) = check_boundaries(tree)?;
    let monotonicity = check_monotone(tree)?;
    let irrelevant = check_relevance(tree)?;
    let (monotone, monotone_witness) = match monotonicity {
        Monotonicity::Monotone => (true, None),
        Monotonicity::Violated { state, event } => (false, Some((state, event))),
    };
    let is_coherent = boundary_zero && boundary_one && monotone && irrelevant.is_empty();
    Ok(CoherenceReport {
        boundary_zero,
        boundary_one,
        monotone,
        monotone_witness,
        irrelevant,
        is_coherent,
    })
}
