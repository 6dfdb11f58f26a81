//! Core fault-tree data model: basic events, gates, validated trees, and
//! component state vectors.
//!
//! A [`FaultTree`] couples a list of [`BasicEvent`]s (leaf failure modes with
//! exponential failure rates) with a [`Gate`] structure over them and a
//! designated top event. Construction validates the wiring — every leaf
//! reference resolves, every declared event is referenced — so downstream
//! analyses never re-check it. All model values are immutable after
//! construction.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::limits;

/// State of a single component: `Working` (0) or `Failed` (1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentState {
    Working,
    Failed,
}

impl ComponentState {
    pub fn is_failed(self) -> bool {
        matches!(self, ComponentState::Failed)
    }

    pub fn from_failed(failed: bool) -> Self {
        if failed {
            ComponentState::Failed
        } else {
            ComponentState::Working
        }
    }
}

/// A leaf failure mode with an exponential failure rate λ (unit: 1/hour).
#[derive(Debug, Clone, PartialEq)]
pub struct BasicEvent {
    id: String,
    label: String,
    rate: f64,
}

impl BasicEvent {
    /// Rejects empty ids and negative or non-finite rates.
    pub fn new(id: impl Into<String>, label: impl Into<String>, rate: f64) -> Result<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(Error::EmptyEventId);
        }
        if !(rate.is_finite() && rate >= 0.0) {
            return Err(Error::NegativeRate(rate));
        }
        Ok(Self {
            id,
            label: label.into(),
            rate,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Failure rate λ in 1/hour.
    pub fn rate(&self) -> f64 {
        self.rate
    }
}

/// Structure-function AST over basic events.
///
/// `And`/`Or` accept any number of children; an empty `And` is the certain
/// event and an empty `Or` the impossible event. Derived gates (NAND, NOR,
/// XOR) desugar into this core at construction, see [`Gate::nand`],
/// [`Gate::nor`] and [`Gate::xor`]. NOT is representable but makes a tree
/// non-coherent; cut-set and probability analyses reject it.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    And(Vec<Gate>),
    Or(Vec<Gate>),
    Not(Box<Gate>),
    Atomic(String),
}

impl std::ops::Not for Gate {
    type Output = Gate;

    fn not(self) -> Gate {
        Gate::Not(Box::new(self))
    }
}

impl Gate {
    pub fn atomic(id: impl Into<String>) -> Self {
        Gate::Atomic(id.into())
    }

    /// NAND over two child lists: the output occurs when none of `negated`
    /// occur while all of `plain` do. Desugars to
    /// `AND(NOT n₁, …, NOT nₖ, p₁, …, pₘ)`.
    pub fn nand(negated: Vec<Gate>, plain: Vec<Gate>) -> Self {
        let children = negated.into_iter().map(|g| !g).chain(plain).collect();
        Gate::And(children)
    }

    /// NOR: the output occurs when none of the children occur. Desugars to
    /// `NOT(OR(children))`.
    pub fn nor(children: Vec<Gate>) -> Self {
        !Gate::Or(children)
    }

    /// Two-input XOR: exactly one of the children occurs. Desugars to
    /// `OR(AND(NOT a, b), AND(a, NOT b))`.
    pub fn xor(a: Gate, b: Gate) -> Self {
        Gate::Or(vec![
            Gate::And(vec![!a.clone(), b.clone()]),
            Gate::And(vec![a, !b]),
        ])
    }

    /// True when the gate contains no NOT node.
    pub fn is_not_free(&self) -> bool {
        match self {
            Gate::And(cs) | Gate::Or(cs) => cs.iter().all(Gate::is_not_free),
            Gate::Not(_) => false,
            Gate::Atomic(_) => true,
        }
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            Gate::And(cs) | Gate::Or(cs) => {
                for c in cs {
                    c.visit_atoms(f);
                }
            }
            Gate::Not(c) => c.visit_atoms(f),
            Gate::Atomic(id) => f(id),
        }
    }
}

/// Index-resolved mirror of [`Gate`], built once at tree construction so the
/// evaluation hot paths never touch the id table.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum CGate {
    And(Vec<CGate>),
    Or(Vec<CGate>),
    Not(Box<CGate>),
    Leaf(usize),
}

fn compile(gate: &Gate, index: &HashMap<String, usize>) -> CGate {
    match gate {
        Gate::And(cs) => CGate::And(cs.iter().map(|c| compile(c, index)).collect()),
        Gate::Or(cs) => CGate::Or(cs.iter().map(|c| compile(c, index)).collect()),
        Gate::Not(c) => CGate::Not(Box::new(compile(c, index))),
        Gate::Atomic(id) => CGate::Leaf(index[id.as_str()]),
    }
}

/// A validated fault tree: declared basic events plus the top-event gate.
#[derive(Debug, Clone)]
pub struct FaultTree {
    events: Vec<BasicEvent>,
    top: Gate,
    index: HashMap<String, usize>,
    compiled: CGate,
    repeated_events: bool,
}

impl PartialEq for FaultTree {
    fn eq(&self, other: &Self) -> bool {
        self.events == other.events && self.top == other.top
    }
}

impl FaultTree {
    /// Builds and validates a tree.
    ///
    /// Every `Atomic` leaf must reference a declared event and every declared
    /// event must be referenced. A leafless top gate is only legal when no
    /// events are declared (the constant trees `AND()` / `OR()`); otherwise
    /// it reports [`Error::EmptyTree`] rather than flagging each declared
    /// event as unused.
    pub fn new(events: Vec<BasicEvent>, top: Gate) -> Result<Self> {
        let mut index = HashMap::with_capacity(events.len());
        for (i, ev) in events.iter().enumerate() {
            if index.insert(ev.id.clone(), i).is_some() {
                return Err(Error::DuplicateEventId(ev.id.clone()));
            }
        }

        let mut counts = vec![0usize; events.len()];
        let mut dangling: Option<String> = None;
        let mut referenced_any = false;
        top.visit_atoms(&mut |id| {
            referenced_any = true;
            match index.get(id) {
                Some(&i) => counts[i] += 1,
                None => {
                    if dangling.is_none() {
                        dangling = Some(id.to_string());
                    }
                }
            }
        });
        if let Some(id) = dangling {
            return Err(Error::DanglingReference(id));
        }
        if !referenced_any && !events.is_empty() {
            return Err(Error::EmptyTree);
        }
        if let Some(i) = counts.iter().position(|&c| c == 0) {
            return Err(Error::UnusedEvent(events[i].id.clone()));
        }

        let repeated_events = counts.iter().any(|&c| c >= 2);
        let compiled = compile(&top, &index);
        Ok(Self {
            events,
            top,
            index,
            compiled,
            repeated_events,
        })
    }

    pub fn events(&self) -> &[BasicEvent] {
        &self.events
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn top(&self) -> &Gate {
        &self.top
    }

    /// Position of `id` in the tree's fixed event ordering.
    pub fn event_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn event(&self, index: usize) -> &BasicEvent {
        &self.events[index]
    }

    /// True iff some event id appears in two or more `Atomic` leaves.
    pub fn repeated_events(&self) -> bool {
        self.repeated_events
    }

    pub fn is_not_free(&self) -> bool {
        self.top.is_not_free()
    }

    pub(crate) fn compiled(&self) -> &CGate {
        &self.compiled
    }

    pub(crate) fn resolve(&self, id: &str) -> Result<usize> {
        self.event_index(id)
            .ok_or_else(|| Error::UnknownEvent(id.to_string()))
    }
}

/// Total assignment of each component to `Working` or `Failed`, in the
/// owning tree's fixed event ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateVector {
    words: Vec<u64>,
    n: usize,
}

impl StateVector {
    pub fn all_working(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
            n,
        }
    }

    pub fn all_failed(n: usize) -> Self {
        let mut v = Self::all_working(n);
        for i in 0..n {
            v.set(i, ComponentState::Failed);
        }
        v
    }

    /// Builds a vector over `n ≤ 64` components from a bit mask
    /// (bit i set ⇔ component i failed).
    pub fn from_mask(mask: u64, n: usize) -> Self {
        assert!(n <= 64, "mask-based construction is limited to 64 events");
        let mut words = vec![0; n.div_ceil(64)];
        if !words.is_empty() {
            words[0] = if n == 64 {
                mask
            } else {
                mask & ((1u64 << n) - 1)
            };
        }
        Self { words, n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> Option<ComponentState> {
        (i < self.n).then(|| ComponentState::from_failed(self.bit(i)))
    }

    pub fn set(&mut self, i: usize, state: ComponentState) {
        assert!(i < self.n);
        let (w, b) = (i / 64, i % 64);
        if state.is_failed() {
            self.words[w] |= 1u64 << b;
        } else {
            self.words[w] &= !(1u64 << b);
        }
    }

    /// Copy with component `i` set to `state`.
    pub fn with(&self, i: usize, state: ComponentState) -> Self {
        let mut v = self.clone();
        v.set(i, state);
        v
    }

    /// Indices of failed components, ascending.
    pub fn failed_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&i| self.bit(i))
    }

    #[inline]
    pub(crate) fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }
}

/// Iterator over all `2^n` state vectors of a tree, in ascending mask order
/// (bit i of the mask ⇔ event i failed).
#[derive(Debug)]
pub struct AllStates {
    next: u64,
    remaining: u64,
    n: usize,
}

impl Iterator for AllStates {
    type Item = StateVector;

    fn next(&mut self) -> Option<StateVector> {
        if self.remaining == 0 {
            return None;
        }
        let v = StateVector::from_mask(self.next, self.n);
        self.next += 1;
        self.remaining -= 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Enumerates every state vector of the tree. Errors with
/// [`Error::TooManyEvents`] beyond the configured cap
/// (see [`limits::max_events`]).
pub fn all_states(tree: &FaultTree) -> Result<AllStates> {
    let n = tree.event_count();
    let cap = limits::max_events();
    if n > cap {
        return Err(Error::TooManyEvents { n, cap });
    }
    Ok(AllStates {
        next: 0,
        remaining: 1u64 << n,
        n,
    })
}
