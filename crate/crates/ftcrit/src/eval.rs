//! Structure-function evaluation: φ over a state vector, state-forcing views,
//! and the exhaustive brute-force probability oracle that every other
//! probability computation is validated against.

use crate::error::{Error, Result};
use crate::limits;
use crate::model::{CGate, ComponentState, FaultTree, StateVector};
use crate::numeric::CompensatedSum;

/// Partial assignment pinning selected components to a fixed state,
/// independent of the state vector an evaluation is run against.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ForcedAssignment {
    // sorted by event index; tiny in practice (the importance measures force
    // at most two components)
    entries: Vec<(usize, ComponentState)>,
}

impl ForcedAssignment {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Resolves `(id, state)` pairs against the tree. A later pair for the
    /// same id overwrites the earlier one.
    pub fn new(tree: &FaultTree, pairs: &[(&str, ComponentState)]) -> Result<Self> {
        let mut forced = Self::empty();
        for (id, state) in pairs {
            let idx = tree.resolve(id)?;
            forced.set(idx, *state);
        }
        Ok(forced)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Option<ComponentState> {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub(crate) fn set(&mut self, index: usize, state: ComponentState) {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(i) => self.entries[i].1 = state,
            Err(i) => self.entries.insert(i, (index, state)),
        }
    }
}

#[inline]
pub(crate) fn eval_gate(gate: &CGate, state: &StateVector, forced: &ForcedAssignment) -> bool {
    match gate {
        CGate::And(cs) => cs.iter().all(|c| eval_gate(c, state, forced)),
        CGate::Or(cs) => cs.iter().any(|c| eval_gate(c, state, forced)),
        CGate::Not(c) => !eval_gate(c, state, forced),
        CGate::Leaf(i) => match forced.get(*i) {
            Some(s) => s.is_failed(),
            None => state.bit(*i),
        },
    }
}

fn check_state_len(tree: &FaultTree, state: &StateVector) -> Result<()> {
    // A longer vector still covers the tree's event set; only a shorter one
    // leaves a component without a state.
    if state.len() < tree.event_count() {
        return Err(Error::MissingState(
            tree.event(state.len()).id().to_string(),
        ));
    }
    Ok(())
}

/// The structure function φ: true iff the top event occurs in `state`.
///
/// AND is the conjunction of its children, OR the disjunction, NOT the
/// negation, and a leaf reads the component state; an empty AND is true and
/// an empty OR false.
pub fn phi(tree: &FaultTree, state: &StateVector) -> Result<bool> {
    check_state_len(tree, state)?;
    Ok(eval_gate(
        tree.compiled(),
        state,
        &ForcedAssignment::empty(),
    ))
}

/// View of a tree in which forced components evaluate to their forced state
/// regardless of the state vector; unforced behavior is unchanged. The
/// underlying tree is never mutated.
#[derive(Debug, Clone)]
pub struct ForcedView<'t> {
    tree: &'t FaultTree,
    forced: ForcedAssignment,
}

impl<'t> ForcedView<'t> {
    pub fn tree(&self) -> &'t FaultTree {
        self.tree
    }

    pub fn forced(&self) -> &ForcedAssignment {
        &self.forced
    }

    pub fn phi(&self, state: &StateVector) -> Result<bool> {
        check_state_len(self.tree, state)?;
        Ok(eval_gate(self.tree.compiled(), state, &self.forced))
    }
}

/// Wraps a tree with a forcing view. See [`ForcedAssignment::new`] for how
/// forcings are built (unknown ids error there).
pub fn force(tree: &FaultTree, forced: ForcedAssignment) -> ForcedView<'_> {
    ForcedView { tree, forced }
}

/// Exhaustive-enumeration failure probability under per-event independence:
/// the sum over all residual states (forced components pinned) of
/// `[φ = 1] · Π (pᵢ if failed else 1−pᵢ)` over the unforced components.
///
/// `probs` is indexed by the tree's event ordering. Exact up to floating
/// rounding; the accumulation order is fixed, so results are reproducible.
pub fn oracle_probability(
    tree: &FaultTree,
    probs: &[f64],
    forced: &ForcedAssignment,
) -> Result<f64> {
    let n = tree.event_count();
    if probs.len() < n {
        return Err(Error::MissingState(
            tree.event(probs.len()).id().to_string(),
        ));
    }
    for &p in &probs[..n] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
    }

    let unforced: Vec<usize> = (0..n).filter(|&i| forced.get(i).is_none()).collect();
    let k = unforced.len();
    let cap = limits::max_events();
    if k > cap {
        return Err(Error::TooManyEvents { n: k, cap });
    }

    let mut state = StateVector::all_working(n);
    for (idx, st) in (0..n).filter_map(|i| forced.get(i).map(|s| (i, s))) {
        state.set(idx, st);
    }

    let mut acc = CompensatedSum::new();
    for mask in 0..(1u64 << k) {
        let mut weight = 1.0;
        for (bit, &idx) in unforced.iter().enumerate() {
            let failed = (mask >> bit) & 1 == 1;
            state.set(idx, ComponentState::from_failed(failed));
            weight *= if failed { probs[idx] } else { 1.0 - probs[idx] };
        }
        if eval_gate(tree.compiled(), &state, &ForcedAssignment::empty()) {
            acc.add(weight);
        }
    }
    Ok(acc.total().clamp(0.0, 1.0))
}
