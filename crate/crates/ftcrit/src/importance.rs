//! Component importance measures and the relative-importance comparison
//! between component pairs.
//!
//! All measures force component states through the same exact evaluation
//! path as [`crate::prob::system_unreliability`] (bottom-up without repeated
//! events, minimal cut sets plus inclusion-exclusion with them), so a
//! measure is never computed by a different approximation than the baseline
//! it is compared against.

use crate::error::{Error, Result};
use crate::eval::{eval_gate, ForcedAssignment};
use crate::limits;
use crate::model::{ComponentState, FaultTree, StateVector};
use crate::prob::{
    unreliability_path, unreliability_via, ProbAssignment, TimePoint, UnreliabilityPath,
};

/// Which state the component is forced to in the Fussell-Vesely numerator.
///
/// `ForcedWorking` is the conventional measure: the fractional reduction of
/// system unreliability when the component is made perfect; it stays in
/// [0, 1] for coherent trees. `ForcedFailedAsPaper` substitutes the
/// component forced failed instead, reproducing one published formal
/// definition literally; for coherent trees it is nonpositive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FvOrientation {
    #[default]
    ForcedWorking,
    ForcedFailedAsPaper,
}

/// Importance measures available for ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Birnbaum,
    FussellVesely,
    Rrw,
    Raw,
}

struct Context<'t> {
    tree: &'t FaultTree,
    path: UnreliabilityPath,
    probs: ProbAssignment,
}

impl<'t> Context<'t> {
    fn at_time(tree: &'t FaultTree, t: TimePoint) -> Result<Self> {
        Ok(Self {
            tree,
            path: unreliability_path(tree)?,
            probs: ProbAssignment::at_time(tree, t)?,
        })
    }

    fn with_probs(tree: &'t FaultTree, probs: ProbAssignment) -> Result<Self> {
        Ok(Self {
            tree,
            path: unreliability_path(tree)?,
            probs,
        })
    }

    fn unreliability(&self, forced: &ForcedAssignment) -> Result<f64> {
        unreliability_via(&self.path, self.tree, &self.probs, forced)
    }

    fn forced1(&self, i: usize, s: ComponentState) -> Result<f64> {
        let mut f = ForcedAssignment::empty();
        f.set(i, s);
        self.unreliability(&f)
    }

    fn forced2(&self, i: usize, si: ComponentState, j: usize, sj: ComponentState) -> Result<f64> {
        let mut f = ForcedAssignment::empty();
        f.set(i, si);
        f.set(j, sj);
        self.unreliability(&f)
    }
}

/// Birnbaum importance of component `id` at time `t`: the probability the
/// component is critical, `Pr(φ | id failed) − Pr(φ | id working)`. Equals
/// the partial derivative of system unreliability in the component's failure
/// probability.
pub fn birnbaum(tree: &FaultTree, t: TimePoint, id: &str) -> Result<f64> {
    let i = tree.resolve(id)?;
    let ctx = Context::at_time(tree, t)?;
    Ok(ctx.forced1(i, ComponentState::Failed)? - ctx.forced1(i, ComponentState::Working)?)
}

/// Mixed second partial of system unreliability in the failure probabilities
/// of two distinct components, evaluated at `probs`:
/// `Pr(1ᵢ,1ⱼ) − Pr(1ᵢ,0ⱼ) − Pr(0ᵢ,1ⱼ) + Pr(0ᵢ,0ⱼ)`.
///
/// Terms are combined in an order canonical in the component pair, so the
/// swap symmetry `mixed_second(i, j) = mixed_second(j, i)` holds bit-exactly.
pub fn mixed_second(
    tree: &FaultTree,
    probs: &ProbAssignment,
    id_i: &str,
    id_j: &str,
) -> Result<f64> {
    let (i, j) = resolve_pair(tree, id_i, id_j)?;
    let ctx = Context::with_probs(tree, probs.clone())?;
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    use ComponentState::{Failed, Working};
    Ok(ctx.forced2(lo, Failed, hi, Failed)?
        - ctx.forced2(lo, Failed, hi, Working)?
        - ctx.forced2(lo, Working, hi, Failed)?
        + ctx.forced2(lo, Working, hi, Working)?)
}

fn resolve_pair(tree: &FaultTree, id_i: &str, id_j: &str) -> Result<(usize, usize)> {
    let i = tree.resolve(id_i)?;
    let j = tree.resolve(id_j)?;
    if i == j {
        return Err(Error::SameIndex(id_i.to_string()));
    }
    Ok((i, j))
}

fn residual_cap_check(tree: &FaultTree) -> Result<usize> {
    let n = tree.event_count();
    let residual = n.saturating_sub(2);
    let cap = limits::max_events();
    if residual > cap {
        return Err(Error::TooManyEvents { n: residual, cap });
    }
    Ok(n)
}

/// Exhaustively enumerates each residual state twice with the forcings of
/// `i` and `j` swapped. Returns true iff
/// `φ(1ᵢ,0ⱼ,s) = φ(0ᵢ,1ⱼ,s)` for every residual state `s`.
pub fn permutation_equivalent(tree: &FaultTree, id_i: &str, id_j: &str) -> Result<bool> {
    let (i, j) = resolve_pair(tree, id_i, id_j)?;
    let n = residual_cap_check(tree)?;
    use ComponentState::{Failed, Working};
    let mut fa = ForcedAssignment::empty();
    fa.set(i, Failed);
    fa.set(j, Working);
    let mut fb = ForcedAssignment::empty();
    fb.set(i, Working);
    fb.set(j, Failed);
    Ok(for_each_residual_state(
        &[i, j],
        |state| eval_gate(tree.compiled(), state, &fa) == eval_gate(tree.compiled(), state, &fb),
        n,
    ))
}

// Runs `check` on every assignment of the `n` events outside `pinned`;
// returns false on the first failing state.
fn for_each_residual_state(
    pinned: &[usize],
    mut check: impl FnMut(&StateVector) -> bool,
    n: usize,
) -> bool {
    let residual: Vec<usize> = (0..n).filter(|k| !pinned.contains(k)).collect();
    let mut state = StateVector::all_working(n);
    for mask in 0..(1u64 << residual.len()) {
        for (bit, &idx) in residual.iter().enumerate() {
            state.set(idx, ComponentState::from_failed((mask >> bit) & 1 == 1));
        }
        if !check(&state) {
            return false;
        }
    }
    true
}

/// Fussell-Vesely importance: `(F_sys − F_sys[id forced]) / F_sys`, with the
/// forcing chosen by `orientation`. Errors with
/// [`Error::SystemNeverFails`] when the system cannot fail at `t`.
pub fn fussell_vesely(
    tree: &FaultTree,
    t: TimePoint,
    id: &str,
    orientation: FvOrientation,
) -> Result<f64> {
    let i = tree.resolve(id)?;
    let ctx = Context::at_time(tree, t)?;
    let f_sys = ctx.unreliability(&ForcedAssignment::empty())?;
    if f_sys == 0.0 {
        return Err(Error::SystemNeverFails);
    }
    let forced_state = match orientation {
        FvOrientation::ForcedWorking => ComponentState::Working,
        FvOrientation::ForcedFailedAsPaper => ComponentState::Failed,
    };
    Ok((f_sys - ctx.forced1(i, forced_state)?) / f_sys)
}

fn rrw_from(f_sys: f64, f_working: f64) -> f64 {
    if f_working > 0.0 {
        f_sys / f_working
    } else if f_sys > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Risk Reduction Worth: `F_sys / F_sys[id forced working]`; +∞ when forcing
/// the component working eliminates failure entirely, 1 when both are 0.
pub fn rrw(tree: &FaultTree, t: TimePoint, id: &str) -> Result<f64> {
    let i = tree.resolve(id)?;
    let ctx = Context::at_time(tree, t)?;
    let f_sys = ctx.unreliability(&ForcedAssignment::empty())?;
    Ok(rrw_from(f_sys, ctx.forced1(i, ComponentState::Working)?))
}

/// Risk Achievement Worth: `F_sys[id forced failed] / F_sys`. Errors with
/// [`Error::SystemNeverFails`] when the baseline is 0 but the forced value
/// is not; returns 1 when both are 0.
pub fn raw(tree: &FaultTree, t: TimePoint, id: &str) -> Result<f64> {
    let i = tree.resolve(id)?;
    let ctx = Context::at_time(tree, t)?;
    let f_sys = ctx.unreliability(&ForcedAssignment::empty())?;
    let f_failed = ctx.forced1(i, ComponentState::Failed)?;
    if f_sys > 0.0 {
        Ok(f_failed / f_sys)
    } else if f_failed > 0.0 {
        Err(Error::SystemNeverFails)
    } else {
        Ok(1.0)
    }
}

/// Per-component importance values at one time point.
#[derive(Debug, Clone, PartialEq)]
pub struct ImportanceRow {
    pub id: String,
    pub birnbaum: f64,
    pub fussell_vesely: f64,
    pub rrw: f64,
    pub raw: f64,
}

/// All importance measures for every component, plus the descending Birnbaum
/// ranking (ties broken by ascending event id).
#[derive(Debug, Clone, PartialEq)]
pub struct ImportanceReport {
    pub t: TimePoint,
    /// One row per event, in declaration order.
    pub rows: Vec<ImportanceRow>,
    /// Event ids in descending Birnbaum order.
    pub ranking: Vec<String>,
}

impl ImportanceReport {
    pub fn row(&self, id: &str) -> Option<&ImportanceRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// 1-based rank of each event under `measure` (descending, +∞ first,
    /// ties by ascending id), indexed like `rows`.
    pub fn ranks_under(&self, measure: Measure) -> Vec<usize> {
        let order = rank_order(&self.rows, measure);
        let mut ranks = vec![0; self.rows.len()];
        for (rank0, &row_idx) in order.iter().enumerate() {
            ranks[row_idx] = rank0 + 1;
        }
        ranks
    }
}

fn measure_value(row: &ImportanceRow, measure: Measure) -> f64 {
    match measure {
        Measure::Birnbaum => row.birnbaum,
        Measure::FussellVesely => row.fussell_vesely,
        Measure::Rrw => row.rrw,
        Measure::Raw => row.raw,
    }
}

fn rank_order(rows: &[ImportanceRow], measure: Measure) -> Vec<usize> {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| {
        measure_value(&rows[b], measure)
            .total_cmp(&measure_value(&rows[a], measure))
            .then_with(|| rows[a].id.cmp(&rows[b].id))
    });
    order
}

/// Computes every measure for every component. `paper_literal` switches the
/// ratio measures (FV, RRW, RAW) to the source-literal forcings for audits;
/// Birnbaum is identical in both modes. Errors with
/// [`Error::SystemNeverFails`] when `F_sys(t) = 0`, since the ratio measures
/// are undefined there.
pub fn importance_report(
    tree: &FaultTree,
    t: TimePoint,
    paper_literal: bool,
) -> Result<ImportanceReport> {
    let ctx = Context::at_time(tree, t)?;
    let f_sys = ctx.unreliability(&ForcedAssignment::empty())?;
    if f_sys == 0.0 {
        return Err(Error::SystemNeverFails);
    }
    let mut rows = Vec::with_capacity(tree.event_count());
    for i in 0..tree.event_count() {
        let f_working = ctx.forced1(i, ComponentState::Working)?;
        let f_failed = ctx.forced1(i, ComponentState::Failed)?;
        let (fussell_vesely, rrw, raw) = if paper_literal {
            (
                (f_sys - f_failed) / f_sys,
                rrw_from(f_sys, f_failed),
                f_working / f_sys,
            )
        } else {
            (
                (f_sys - f_working) / f_sys,
                rrw_from(f_sys, f_working),
                f_failed / f_sys,
            )
        };
        rows.push(ImportanceRow {
            id: tree.event(i).id().to_string(),
            birnbaum: f_failed - f_working,
            fussell_vesely,
            rrw,
            raw,
        });
    }
    let ranking = rank_order(&rows, Measure::Birnbaum)
        .into_iter()
        .map(|i| rows[i].id.clone())
        .collect();
    Ok(ImportanceReport { t, rows, ranking })
}

/// Ranks components by `measure`, descending (+∞ above every finite value),
/// ties broken by ascending event id. Uses the standard measure
/// orientations. Birnbaum ranking works even when the system cannot fail at
/// `t`; the ratio measures require `F_sys(t) > 0` like
/// [`importance_report`].
pub fn rank(tree: &FaultTree, t: TimePoint, measure: Measure) -> Result<Vec<(String, f64)>> {
    let mut values: Vec<(String, f64)> = match measure {
        Measure::Birnbaum => {
            let ctx = Context::at_time(tree, t)?;
            (0..tree.event_count())
                .map(|i| {
                    Ok((
                        tree.event(i).id().to_string(),
                        ctx.forced1(i, ComponentState::Failed)?
                            - ctx.forced1(i, ComponentState::Working)?,
                    ))
                })
                .collect::<Result<_>>()?
        }
        _ => {
            let report = importance_report(tree, t, false)?;
            report
                .rows
                .iter()
                .map(|row| (row.id.clone(), measure_value(row, measure)))
                .collect()
        }
    };
    values.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(values)
}

/// Sign certificate for the mixed second partial over the whole probability
/// cube of the residual components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedPartialSign {
    NonNegativeEverywhere,
    Indeterminate,
}

/// Ordering of the two components' failure probabilities at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbOrdering {
    ILeJ,
    JLeI,
    Equal,
}

/// Outcome of the relative-importance comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `I_β(i) ≤ I_β(j)`.
    ILeJ,
    /// `I_β(j) ≤ I_β(i)`.
    JLeI,
    /// The comparison theorem's preconditions do not hold; inspect the
    /// reported Birnbaum values directly.
    TheoremInapplicable,
}

/// Relative importance of a component pair: the comparison theorem's
/// preconditions, the implied verdict when they hold, and the directly
/// computed Birnbaum values either way.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeComparison {
    pub i: String,
    pub j: String,
    pub permutation_equivalent: bool,
    pub mixed_partial_sign: MixedPartialSign,
    pub prob_ordering: ProbOrdering,
    pub verdict: Verdict,
    pub birnbaum_i: f64,
    pub birnbaum_j: f64,
}

// The mixed partial is multilinear in each residual probability, so its
// extrema over the cube lie at 0/1 vertices, where it reduces to the
// four-term φ sum on a deterministic residual state. Checking every residual
// state therefore decides nonnegativity over the entire cube, grid points
// included, exactly.
fn mixed_partial_nonnegative(tree: &FaultTree, i: usize, j: usize) -> Result<bool> {
    let n = residual_cap_check(tree)?;
    use ComponentState::{Failed, Working};
    let combos = [
        (Failed, Failed, 1i32),
        (Failed, Working, -1),
        (Working, Failed, -1),
        (Working, Working, 1),
    ];
    let forced: Vec<(ForcedAssignment, i32)> = combos
        .iter()
        .map(|&(si, sj, sign)| {
            let mut f = ForcedAssignment::empty();
            f.set(i, si);
            f.set(j, sj);
            (f, sign)
        })
        .collect();
    Ok(for_each_residual_state(
        &[i, j],
        |state| {
            let value: i32 = forced
                .iter()
                .map(|(f, sign)| sign * i32::from(eval_gate(tree.compiled(), state, f)))
                .sum();
            value >= 0
        },
        n,
    ))
}

/// Compares the relative Birnbaum importance of components `i` and `j` at
/// time `t`.
///
/// When `i` and `j` are permutation equivalent, the mixed second partial is
/// nonnegative everywhere, and `Fᵢ(t) ≤ Fⱼ(t)`, the comparison theorem gives
/// `I_β(j) ≤ I_β(i)` (symmetrically with the roles swapped). The implied
/// verdict is additionally checked against the directly computed values and
/// downgraded to [`Verdict::TheoremInapplicable`] if they ever disagree; the
/// direct values are always reported.
pub fn relative_compare(
    tree: &FaultTree,
    t: TimePoint,
    id_i: &str,
    id_j: &str,
) -> Result<RelativeComparison> {
    let (i, j) = resolve_pair(tree, id_i, id_j)?;
    let perm = permutation_equivalent(tree, id_i, id_j)?;
    let sign = if mixed_partial_nonnegative(tree, i, j)? {
        MixedPartialSign::NonNegativeEverywhere
    } else {
        MixedPartialSign::Indeterminate
    };

    let ctx = Context::at_time(tree, t)?;
    let p_i = ctx.probs.get(i);
    let p_j = ctx.probs.get(j);
    let prob_ordering = if p_i == p_j {
        ProbOrdering::Equal
    } else if p_i < p_j {
        ProbOrdering::ILeJ
    } else {
        ProbOrdering::JLeI
    };

    use ComponentState::{Failed, Working};
    let birnbaum_i = ctx.forced1(i, Failed)? - ctx.forced1(i, Working)?;
    let birnbaum_j = ctx.forced1(j, Failed)? - ctx.forced1(j, Working)?;

    let verdict = if perm && sign == MixedPartialSign::NonNegativeEverywhere {
        // theorem direction: the component with the smaller failure
        // probability has the larger Birnbaum importance
        let implied = match prob_ordering {
            ProbOrdering::ILeJ | ProbOrdering::Equal => Verdict::JLeI,
            ProbOrdering::JLeI => Verdict::ILeJ,
        };
        let consistent = match implied {
            Verdict::JLeI => birnbaum_j <= birnbaum_i + 1e-9,
            Verdict::ILeJ => birnbaum_i <= birnbaum_j + 1e-9,
            Verdict::TheoremInapplicable => true,
        };
        if consistent {
            implied
        } else {
            Verdict::TheoremInapplicable
        }
    } else {
        Verdict::TheoremInapplicable
    };

    Ok(RelativeComparison {
        i: id_i.to_string(),
        j: id_j.to_string(),
        permutation_equivalent: perm,
        mixed_partial_sign: sign,
        prob_ordering,
        verdict,
        birnbaum_i,
        birnbaum_j,
    })
}
