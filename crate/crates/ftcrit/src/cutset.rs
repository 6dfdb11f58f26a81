//! Conversion of NOT-free trees to OR-of-ANDs normal form and minimization
//! to minimal cut sets.
//!
//! Cuts are bit sets indexed by the tree's fixed event ordering, so subset
//! tests during absorption cost O(words).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::limits;
use crate::model::{CGate, FaultTree, StateVector};

/// A set of event indices backed by 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventSet {
    words: Vec<u64>,
}

impl EventSet {
    fn empty(words: usize) -> Self {
        Self {
            words: vec![0; words],
        }
    }

    fn insert(&mut self, index: usize) {
        self.words[index / 64] |= 1u64 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.words
            .get(index / 64)
            .is_some_and(|w| (w >> (index % 64)) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn union(&self, other: &EventSet) -> EventSet {
        EventSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &EventSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Member event indices, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| (word >> b) & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }

    /// True when every member is failed in `state`.
    pub fn all_failed_in(&self, state: &StateVector) -> bool {
        self.indices().all(|i| state.bit(i))
    }

    // Canonical cut order: by size, then lexicographically by ascending
    // member indices.
    fn canonical_cmp(&self, other: &EventSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

/// An OR-of-ANDs normal form: the system fails iff every member of some cut
/// has failed. After [`minimize`], cuts form an antichain in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct CutSetForm {
    cuts: Vec<EventSet>,
    event_count: usize,
}

impl CutSetForm {
    pub fn cuts(&self) -> &[EventSet] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn event_count(&self) -> usize {
        self.event_count
    }

    /// Evaluates the form against a state vector: true iff some cut has all
    /// members failed.
    pub fn evaluate(&self, state: &StateVector) -> Result<bool> {
        if state.len() < self.event_count {
            return Err(Error::MissingState(format!("index {}", state.len())));
        }
        Ok(self.cuts.iter().any(|c| c.all_failed_in(state)))
    }

    /// Renders each cut as the ids of its members, in canonical member order.
    pub fn ids<'t>(&self, tree: &'t FaultTree) -> Vec<Vec<&'t str>> {
        self.cuts
            .iter()
            .map(|c| c.indices().map(|i| tree.event(i).id()).collect())
            .collect()
    }
}

/// Expands a NOT-free tree into OR-of-ANDs form by distributing AND over OR
/// top-down, with idempotent reduction inside each cut. The result is
/// logically equivalent to the tree but not yet minimized.
pub fn to_cutsets(tree: &FaultTree) -> Result<CutSetForm> {
    to_cutsets_with_cap(tree, limits::DEFAULT_MAX_EXPANSION_CUTS)
}

/// [`to_cutsets`] with an explicit bound on intermediate cut counts; the
/// expansion aborts with [`Error::ExpansionTooLarge`] beyond it.
pub fn to_cutsets_with_cap(tree: &FaultTree, cap: usize) -> Result<CutSetForm> {
    if !tree.is_not_free() {
        return Err(Error::NotFreeViolation);
    }
    let words = tree.event_count().div_ceil(64).max(1);
    let mut cuts = expand(tree.compiled(), words, cap)?;
    cuts.sort_by(|a, b| a.canonical_cmp(b));
    Ok(CutSetForm {
        cuts,
        event_count: tree.event_count(),
    })
}

fn expand(gate: &CGate, words: usize, cap: usize) -> Result<Vec<EventSet>> {
    match gate {
        CGate::Leaf(i) => {
            let mut c = EventSet::empty(words);
            c.insert(*i);
            Ok(vec![c])
        }
        CGate::Or(children) => {
            let mut cuts = Vec::new();
            for child in children {
                cuts.extend(expand(child, words, cap)?);
                if cuts.len() > cap {
                    return Err(Error::ExpansionTooLarge { cap });
                }
            }
            Ok(cuts)
        }
        CGate::And(children) => {
            let mut acc = vec![EventSet::empty(words)];
            for child in children {
                let rhs = expand(child, words, cap)?;
                if acc.len().saturating_mul(rhs.len()) > cap {
                    return Err(Error::ExpansionTooLarge { cap });
                }
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for a in &acc {
                    for b in &rhs {
                        next.push(a.union(b));
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        CGate::Not(_) => Err(Error::NotFreeViolation),
    }
}

/// Removes duplicates and absorbed supersets and restores canonical order.
/// Idempotent, and logically equivalent to its input.
pub fn minimize(form: &CutSetForm) -> CutSetForm {
    let mut sorted: Vec<EventSet> = form.cuts.clone();
    sorted.sort_by(|a, b| a.canonical_cmp(b));
    let mut kept: Vec<EventSet> = Vec::new();
    for cut in sorted {
        // candidates are processed smallest-first, so any absorber of `cut`
        // is already in `kept`; an identical cut absorbs as a subset too
        if !kept.iter().any(|k| k.is_subset_of(&cut)) {
            kept.push(cut);
        }
    }
    CutSetForm {
        cuts: kept,
        event_count: form.event_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::phi;
    use crate::model::{all_states, BasicEvent, Gate};
    use proptest::prelude::*;

    fn ev(id: &str) -> BasicEvent {
        BasicEvent::new(id, "", 0.0).unwrap()
    }

    fn tree(ids: &[&str], top: Gate) -> FaultTree {
        FaultTree::new(ids.iter().map(|i| ev(i)).collect(), top).unwrap()
    }

    fn cut_ids(form: &CutSetForm, tree: &FaultTree) -> Vec<Vec<String>> {
        form.ids(tree)
            .into_iter()
            .map(|c| c.into_iter().map(String::from).collect())
            .collect()
    }

    #[test]
    fn already_normal_form() {
        let t = tree(
            &["x1", "x2", "x3"],
            Gate::Or(vec![
                Gate::atomic("x1"),
                Gate::And(vec![Gate::atomic("x2"), Gate::atomic("x3")]),
            ]),
        );
        let form = to_cutsets(&t).unwrap();
        assert_eq!(cut_ids(&form, &t), vec![vec!["x1"], vec!["x2", "x3"]]);
    }

    #[test]
    fn and_of_ors_distributes() {
        let t = tree(
            &["x1", "x2", "x3", "x4"],
            Gate::And(vec![
                Gate::Or(vec![Gate::atomic("x1"), Gate::atomic("x2")]),
                Gate::Or(vec![Gate::atomic("x3"), Gate::atomic("x4")]),
            ]),
        );
        let form = to_cutsets(&t).unwrap();
        assert_eq!(
            cut_ids(&form, &t),
            vec![
                vec!["x1", "x3"],
                vec!["x1", "x4"],
                vec!["x2", "x3"],
                vec!["x2", "x4"],
            ]
        );
        // exhaustive equivalence over all 16 states
        for s in all_states(&t).unwrap() {
            assert_eq!(form.evaluate(&s).unwrap(), phi(&t, &s).unwrap());
        }
    }

    #[test]
    fn not_rejected() {
        let t = tree(&["x1"], !Gate::atomic("x1"));
        assert_eq!(to_cutsets(&t).unwrap_err(), Error::NotFreeViolation);
    }

    #[test]
    fn absorption_drops_supersets() {
        let t = tree(
            &["x1", "x2"],
            Gate::Or(vec![
                Gate::atomic("x1"),
                Gate::And(vec![Gate::atomic("x1"), Gate::atomic("x2")]),
            ]),
        );
        let form = minimize(&to_cutsets(&t).unwrap());
        assert_eq!(cut_ids(&form, &t), vec![vec!["x1"]]);
    }

    #[test]
    fn duplicate_cuts_merge() {
        // x1∧x2 and x2∧x1 are the same bit set
        let t = tree(
            &["x1", "x2"],
            Gate::Or(vec![
                Gate::And(vec![Gate::atomic("x1"), Gate::atomic("x2")]),
                Gate::And(vec![Gate::atomic("x2"), Gate::atomic("x1")]),
            ]),
        );
        let form = minimize(&to_cutsets(&t).unwrap());
        assert_eq!(cut_ids(&form, &t), vec![vec!["x1", "x2"]]);
    }

    #[test]
    fn minimize_is_idempotent() {
        let t = tree(
            &["x1", "x2", "x3"],
            Gate::Or(vec![
                Gate::atomic("x1"),
                Gate::And(vec![Gate::atomic("x1"), Gate::atomic("x2")]),
                Gate::And(vec![Gate::atomic("x2"), Gate::atomic("x3")]),
            ]),
        );
        let once = minimize(&to_cutsets(&t).unwrap());
        assert_eq!(minimize(&once), once);
    }

    #[test]
    fn constant_one_is_single_empty_cut() {
        let t = tree(
            &["x1"],
            Gate::Or(vec![Gate::atomic("x1"), Gate::And(vec![])]),
        );
        let form = minimize(&to_cutsets(&t).unwrap());
        assert_eq!(form.len(), 1);
        assert!(form.cuts()[0].is_empty());
    }

    #[test]
    fn expansion_bound_enforced() {
        // AND of 4 ORs of 4 distinct events = 256 cuts
        let ids: Vec<String> = (0..16).map(|i| format!("x{i}")).collect();
        let top = Gate::And(
            (0..4)
                .map(|g| Gate::Or((0..4).map(|i| Gate::atomic(&ids[g * 4 + i])).collect()))
                .collect(),
        );
        let t = FaultTree::new(ids.iter().map(|i| ev(i)).collect(), top);
        let t = t.unwrap();
        assert!(matches!(
            to_cutsets_with_cap(&t, 100).unwrap_err(),
            Error::ExpansionTooLarge { cap: 100 }
        ));
        assert_eq!(to_cutsets_with_cap(&t, 256).unwrap().len(), 256);
    }

    fn arb_not_free_gate() -> impl Strategy<Value = Gate> {
        let leaf = (0u8..8).prop_map(|i| Gate::Atomic(format!("x{i}")));
        leaf.prop_recursive(3, 20, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 1..4).prop_map(Gate::And),
                proptest::collection::vec(inner, 1..4).prop_map(Gate::Or),
            ]
        })
    }

    fn tree_over_referenced(gate: Gate) -> FaultTree {
        fn collect(g: &Gate, ids: &mut Vec<String>) {
            match g {
                Gate::And(cs) | Gate::Or(cs) => cs.iter().for_each(|c| collect(c, ids)),
                Gate::Not(c) => collect(c, ids),
                Gate::Atomic(id) => {
                    if !ids.contains(id) {
                        ids.push(id.clone());
                    }
                }
            }
        }
        let mut ids = Vec::new();
        collect(&gate, &mut ids);
        ids.sort();
        FaultTree::new(ids.iter().map(|i| ev(i)).collect(), gate).unwrap()
    }

    proptest! {
        // Minimized cut sets must evaluate identically to φ on every state,
        // and each retained cut must be minimal: dropping any member leaves a
        // witness state where the top event no longer occurs.
        #[test]
        fn minimized_form_is_equivalent_and_minimal(gate in arb_not_free_gate()) {
            let t = tree_over_referenced(gate);
            let form = minimize(&to_cutsets(&t).unwrap());
            for s in all_states(&t).unwrap() {
                prop_assert_eq!(form.evaluate(&s).unwrap(), phi(&t, &s).unwrap());
            }
            let n = t.event_count();
            for cut in form.cuts() {
                for dropped in cut.indices() {
                    let mut s = StateVector::all_working(n);
                    for i in cut.indices().filter(|&i| i != dropped) {
                        s.set(i, crate::model::ComponentState::Failed);
                    }
                    prop_assert!(!phi(&t, &s).unwrap(), "cut not minimal");
                }
            }
        }

        #[test]
        fn minimize_idempotent_prop(gate in arb_not_free_gate()) {
            let t = tree_over_referenced(gate);
            let once = minimize(&to_cutsets(&t).unwrap());
            prop_assert_eq!(minimize(&once), once);
        }
    }
}
