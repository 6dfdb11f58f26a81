//! Exact failure probability: the exponential failure distribution, per-gate
//! closed forms, probabilistic inclusion-exclusion over cut sets, and system
//! unreliability.
//!
//! Trees without repeated events evaluate bottom-up with the per-gate closed
//! forms, which is exact under event independence. Trees with repeated events
//! go through minimal cut sets and inclusion-exclusion instead, since their
//! subtrees are no longer independent.

use crate::cutset::{minimize, to_cutsets, CutSetForm};
use crate::error::{Error, Result};
use crate::eval::ForcedAssignment;
use crate::limits;
use crate::model::{CGate, FaultTree};
use crate::numeric::CompensatedSum;

/// A point in time, in hours. Construction rejects negative or non-finite
/// values so downstream math never sees them.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TimePoint(f64);

impl TimePoint {
    pub fn new(hours: f64) -> Result<Self> {
        if !(hours.is_finite() && hours >= 0.0) {
            return Err(Error::NegativeTime(hours));
        }
        Ok(Self(hours))
    }

    pub fn hours(self) -> f64 {
        self.0
    }
}

/// Exponential failure CDF `1 − e^(−λt)`, clamped to [0, 1].
pub fn exp_cdf(rate: f64, t: TimePoint) -> Result<f64> {
    if !(rate.is_finite() && rate >= 0.0) {
        return Err(Error::NegativeRate(rate));
    }
    // -expm1(-x) keeps full precision for small λt and never exceeds 1
    Ok(-f64::exp_m1(-rate * t.hours()))
}

fn check_probs(probs: &[f64]) -> Result<()> {
    for &p in probs {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
    }
    Ok(())
}

/// Failure probability of an AND gate: the product of its inputs.
/// The empty product is 1 (the certain event).
pub fn and_prob(probs: &[f64]) -> Result<f64> {
    check_probs(probs)?;
    Ok(probs.iter().product())
}

/// Failure probability of an OR gate: `1 − Π(1 − pᵢ)`.
/// The empty case is 0 (the impossible event).
pub fn or_prob(probs: &[f64]) -> Result<f64> {
    check_probs(probs)?;
    Ok(1.0 - probs.iter().map(|p| 1.0 - p).product::<f64>())
}

/// Failure probability of a NAND gate over (negated, plain) input lists:
/// `Π(1 − pᵢ) · Π pⱼ`.
pub fn nand_prob(negated: &[f64], plain: &[f64]) -> Result<f64> {
    check_probs(negated)?;
    check_probs(plain)?;
    Ok(negated.iter().map(|p| 1.0 - p).product::<f64>() * plain.iter().product::<f64>())
}

/// Failure probability of a NOR gate, `Π(1 − pᵢ)`. Computed as
/// `1 − F_OR` so the complement identity holds bit-exactly.
pub fn nor_prob(probs: &[f64]) -> Result<f64> {
    Ok(1.0 - or_prob(probs)?)
}

/// Failure probability of a two-input XOR gate:
/// `(1 − p_a)·p_b + p_a·(1 − p_b)`.
pub fn xor_prob(pa: f64, pb: f64) -> Result<f64> {
    check_probs(&[pa, pb])?;
    Ok((1.0 - pa) * pb + pa * (1.0 - pb))
}

/// Total assignment of a failure probability to every event of a tree, in
/// the tree's fixed event ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbAssignment {
    probs: Vec<f64>,
}

impl ProbAssignment {
    /// Probability per event from a closure over the tree's events.
    pub fn new(tree: &FaultTree, mut prob_of: impl FnMut(usize) -> f64) -> Result<Self> {
        let probs: Vec<f64> = (0..tree.event_count()).map(&mut prob_of).collect();
        check_probs(&probs)?;
        Ok(Self { probs })
    }

    /// `(id, probability)` pairs; every event must be covered exactly once.
    pub fn from_pairs(tree: &FaultTree, pairs: &[(&str, f64)]) -> Result<Self> {
        let mut probs = vec![f64::NAN; tree.event_count()];
        for (id, p) in pairs {
            let idx = tree.resolve(id)?;
            probs[idx] = *p;
        }
        if let Some(missing) = probs.iter().position(|p| p.is_nan()) {
            return Err(Error::MissingState(tree.event(missing).id().to_string()));
        }
        check_probs(&probs)?;
        Ok(Self { probs })
    }

    /// Per-event exponential failure probabilities `1 − e^(−λᵢ t)`.
    pub fn at_time(tree: &FaultTree, t: TimePoint) -> Result<Self> {
        let probs = tree
            .events()
            .iter()
            .map(|ev| exp_cdf(ev.rate(), t))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self { probs })
    }

    pub fn get(&self, index: usize) -> f64 {
        self.probs[index]
    }

    /// Replaces one probability; used e.g. for finite-difference checks.
    pub fn set(&mut self, index: usize, p: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        self.probs[index] = p;
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Probability that at least one cut has all members failed, by
/// inclusion-exclusion over all nonempty subsets of cuts: under independence
/// the intersection of cut events has probability `Π p(e)` over the union of
/// their members.
pub fn pie_probability(form: &CutSetForm, probs: &ProbAssignment) -> Result<f64> {
    pie_probability_with_cap(form, probs, limits::DEFAULT_MAX_CUTS)
}

/// [`pie_probability`] with an explicit cut-count cap (the subset count is
/// `2^m − 1`).
pub fn pie_probability_with_cap(
    form: &CutSetForm,
    probs: &ProbAssignment,
    cap: usize,
) -> Result<f64> {
    let m = form.len();
    if m > cap {
        return Err(Error::TooManyCuts { m, cap });
    }
    if probs.len() < form.event_count() {
        return Err(Error::MissingState(format!("index {}", probs.len())));
    }
    check_probs(probs.as_slice())?;

    // Depth-first include/exclude over cuts, carrying the product over the
    // union of members incrementally (a trail records which members each
    // include added, so backtracking never divides). Terms are accumulated
    // per subset cardinality and combined ascending with alternating signs,
    // which limits cancellation between the large low-order terms.
    struct SubsetSums<'a> {
        cuts: &'a [crate::cutset::EventSet],
        probs: &'a [f64],
        in_union: Vec<bool>,
        trail: Vec<usize>,
        by_cardinality: Vec<CompensatedSum>,
    }

    impl SubsetSums<'_> {
        fn dfs(&mut self, idx: usize, size: usize, product: f64) {
            if idx == self.cuts.len() {
                if size > 0 {
                    self.by_cardinality[size].add(product);
                }
                return;
            }
            self.dfs(idx + 1, size, product);
            let mark = self.trail.len();
            let mut included = product;
            for e in self.cuts[idx].indices() {
                if !self.in_union[e] {
                    self.in_union[e] = true;
                    self.trail.push(e);
                    included *= self.probs[e];
                }
            }
            self.dfs(idx + 1, size + 1, included);
            for t in mark..self.trail.len() {
                self.in_union[self.trail[t]] = false;
            }
            self.trail.truncate(mark);
        }
    }

    let mut sums = SubsetSums {
        cuts: form.cuts(),
        probs: probs.as_slice(),
        in_union: vec![false; form.event_count()],
        trail: Vec::with_capacity(form.event_count()),
        by_cardinality: vec![CompensatedSum::new(); m + 1],
    };
    sums.dfs(0, 0, 1.0);
    let by_cardinality = sums.by_cardinality;

    let mut total = CompensatedSum::new();
    for (k, sum) in by_cardinality.iter().enumerate().skip(1) {
        let term = sum.total();
        total.add(if k % 2 == 1 { term } else { -term });
    }
    let result = total.total();
    if !(-1e-9..=1.0 + 1e-9).contains(&result) {
        return Err(Error::NumericalInstability(result));
    }
    Ok(result.clamp(0.0, 1.0))
}

pub(crate) enum UnreliabilityPath {
    BottomUp,
    Cuts(CutSetForm),
}

pub(crate) fn unreliability_path(tree: &FaultTree) -> Result<UnreliabilityPath> {
    if !tree.is_not_free() {
        return Err(Error::NotFreeViolation);
    }
    if tree.repeated_events() {
        Ok(UnreliabilityPath::Cuts(minimize(&to_cutsets(tree)?)))
    } else {
        Ok(UnreliabilityPath::BottomUp)
    }
}

fn bottom_up(gate: &CGate, probs: &[f64], forced: &ForcedAssignment) -> f64 {
    match gate {
        CGate::And(cs) => cs.iter().map(|c| bottom_up(c, probs, forced)).product(),
        CGate::Or(cs) => {
            1.0 - cs
                .iter()
                .map(|c| 1.0 - bottom_up(c, probs, forced))
                .product::<f64>()
        }
        CGate::Not(c) => 1.0 - bottom_up(c, probs, forced),
        CGate::Leaf(i) => match forced.get(*i) {
            Some(s) => {
                if s.is_failed() {
                    1.0
                } else {
                    0.0
                }
            }
            None => probs[*i],
        },
    }
}

pub(crate) fn unreliability_via(
    path: &UnreliabilityPath,
    tree: &FaultTree,
    probs: &ProbAssignment,
    forced: &ForcedAssignment,
) -> Result<f64> {
    match path {
        UnreliabilityPath::BottomUp => Ok(bottom_up(tree.compiled(), probs.as_slice(), forced)),
        UnreliabilityPath::Cuts(form) => {
            if forced.is_empty() {
                pie_probability(form, probs)
            } else {
                // forcing is exactly a degenerate 0/1 probability under
                // independence, which inclusion-exclusion handles exactly
                let mut substituted = probs.clone();
                for i in 0..tree.event_count() {
                    if let Some(s) = forced.get(i) {
                        substituted.set(i, if s.is_failed() { 1.0 } else { 0.0 })?;
                    }
                }
                pie_probability(form, &substituted)
            }
        }
    }
}

/// System unreliability under an explicit probability assignment, with
/// selected components optionally forced to a fixed state. Requires a
/// NOT-free tree.
pub fn unreliability_at(
    tree: &FaultTree,
    probs: &ProbAssignment,
    forced: &ForcedAssignment,
) -> Result<f64> {
    check_probs(probs.as_slice())?;
    let path = unreliability_path(tree)?;
    unreliability_via(&path, tree, probs, forced)
}

/// System unreliability at time `t`: per-event probabilities come from the
/// exponential failure law, then the tree is evaluated bottom-up (no repeated
/// events) or via minimal cut sets and inclusion-exclusion (repeated events).
pub fn system_unreliability(tree: &FaultTree, t: TimePoint) -> Result<f64> {
    let probs = ProbAssignment::at_time(tree, t)?;
    unreliability_at(tree, &probs, &ForcedAssignment::empty())
}
