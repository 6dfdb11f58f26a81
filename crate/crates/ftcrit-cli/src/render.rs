//! Output rendering: 17-significant-digit CSV values and the JSON mirror of
//! every report. Numbers are never re-rounded beyond the format itself, so
//! printed values parse back to the exact library doubles.

use ftcrit::coherence::CoherenceReport;
use ftcrit::cutset::CutSetForm;
use ftcrit::importance::{
    ImportanceReport, Measure, MixedPartialSign, ProbOrdering, RelativeComparison, Verdict,
};
use ftcrit::montecarlo::McEstimate;
use ftcrit::FaultTree;
use serde_json::{json, Value};

/// 17 significant digits: enough to reproduce the exact double. Zero prints
/// as `0` and infinities as `inf`/`-inf`.
pub fn fmt_value(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Time values print in shortest round-trip form, which is also exact.
pub fn fmt_time(x: f64) -> String {
    format!("{x}")
}

/// JSON numbers cannot be infinite; those become the string `"inf"` to match
/// the CSV rendering.
pub fn json_number(x: f64) -> Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None => json!(if x > 0.0 { "inf" } else { "-inf" }),
    }
}

pub fn mcs_text(form: &CutSetForm, tree: &FaultTree) -> String {
    let mut out = String::new();
    for cut in form.ids(tree) {
        out.push_str(&cut.join(","));
        out.push('\n');
    }
    out
}

pub fn mcs_json(form: &CutSetForm, tree: &FaultTree) -> Value {
    json!({ "cuts": form.ids(tree) })
}

pub fn curve_text(points: &[(f64, f64)]) -> String {
    let mut out = String::from("t,unreliability\n");
    for &(t, f) in points {
        out.push_str(&format!("{},{}\n", fmt_time(t), fmt_value(f)));
    }
    out
}

pub fn curve_json(points: &[(f64, f64)]) -> Value {
    json!({
        "points": points
            .iter()
            .map(|&(t, f)| json!({ "t": json_number(t), "unreliability": json_number(f) }))
            .collect::<Vec<_>>()
    })
}

fn witness_text(report: &CoherenceReport, tree: &FaultTree) -> String {
    match &report.monotone_witness {
        None => "(none)".to_string(),
        Some((state, event)) => {
            let failed: Vec<&str> = state.failed_indices().map(|i| tree.event(i).id()).collect();
            format!("failed={{{}}}, flip={event}", failed.join(","))
        }
    }
}

pub fn coherence_text(report: &CoherenceReport, tree: &FaultTree) -> String {
    let irrelevant = if report.irrelevant.is_empty() {
        "(none)".to_string()
    } else {
        report.irrelevant.join(",")
    };
    format!(
        "boundary_zero: {}\nboundary_one: {}\nmonotone: {}\nmonotone_witness: {}\nirrelevant: {}\nis_coherent: {}\n",
        report.boundary_zero,
        report.boundary_one,
        report.monotone,
        witness_text(report, tree),
        irrelevant,
        report.is_coherent
    )
}

pub fn coherence_json(report: &CoherenceReport, tree: &FaultTree) -> Value {
    json!({
        "boundary_zero": report.boundary_zero,
        "boundary_one": report.boundary_one,
        "monotone": report.monotone,
        "monotone_witness": report.monotone_witness.as_ref().map(|(state, event)| {
            json!({
                "failed": state
                    .failed_indices()
                    .map(|i| tree.event(i).id())
                    .collect::<Vec<_>>(),
                "flip": event,
            })
        }),
        "irrelevant": report.irrelevant,
        "is_coherent": report.is_coherent,
    })
}

pub const IMPORTANCE_HEADER: &str = "event,birnbaum,fussell_vesely,rrw,raw,rank";

fn importance_line(report: &ImportanceReport, row_idx: usize, rank: usize) -> String {
    let row = &report.rows[row_idx];
    format!(
        "{},{},{},{},{},{}",
        row.id,
        fmt_value(row.birnbaum),
        fmt_value(row.fussell_vesely),
        fmt_value(row.rrw),
        fmt_value(row.raw),
        rank
    )
}

/// CSV report in event declaration order, with the rank column taken under
/// `measure`.
pub fn importance_text(report: &ImportanceReport, measure: Measure) -> String {
    let ranks = report.ranks_under(measure);
    let mut out = String::from(IMPORTANCE_HEADER);
    out.push('\n');
    for (i, &rank) in ranks.iter().enumerate() {
        out.push_str(&importance_line(report, i, rank));
        out.push('\n');
    }
    out
}

/// CSV report sorted by descending `measure` (the ranking order).
pub fn rank_text(report: &ImportanceReport, measure: Measure) -> String {
    let ranks = report.ranks_under(measure);
    let mut order: Vec<usize> = (0..report.rows.len()).collect();
    order.sort_by_key(|&i| ranks[i]);
    let mut out = String::from(IMPORTANCE_HEADER);
    out.push('\n');
    for i in order {
        out.push_str(&importance_line(report, i, ranks[i]));
        out.push('\n');
    }
    out
}

pub fn importance_json(report: &ImportanceReport, measure: Measure) -> Value {
    let ranks = report.ranks_under(measure);
    json!({
        "t": json_number(report.t.hours()),
        "ranking": report.ranking,
        "rows": report
            .rows
            .iter()
            .zip(&ranks)
            .map(|(row, &rank)| {
                json!({
                    "event": row.id,
                    "birnbaum": json_number(row.birnbaum),
                    "fussell_vesely": json_number(row.fussell_vesely),
                    "rrw": json_number(row.rrw),
                    "raw": json_number(row.raw),
                    "rank": rank,
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn mixed_sign_str(sign: MixedPartialSign) -> &'static str {
    match sign {
        MixedPartialSign::NonNegativeEverywhere => "NonNegativeEverywhere",
        MixedPartialSign::Indeterminate => "Indeterminate",
    }
}

fn prob_ordering_str(ordering: ProbOrdering) -> &'static str {
    match ordering {
        ProbOrdering::ILeJ => "i_le_j",
        ProbOrdering::JLeI => "j_le_i",
        ProbOrdering::Equal => "equal",
    }
}

fn verdict_str(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::ILeJ => "ILeJ",
        Verdict::JLeI => "JLeI",
        Verdict::TheoremInapplicable => "TheoremInapplicable",
    }
}

pub fn compare_text(cmp: &RelativeComparison) -> String {
    format!(
        "i: {}\nj: {}\npermutation_equivalent: {}\nmixed_partial_sign: {}\nprob_ordering: {}\nverdict: {}\nbirnbaum_i: {}\nbirnbaum_j: {}\n",
        cmp.i,
        cmp.j,
        cmp.permutation_equivalent,
        mixed_sign_str(cmp.mixed_partial_sign),
        prob_ordering_str(cmp.prob_ordering),
        verdict_str(cmp.verdict),
        fmt_value(cmp.birnbaum_i),
        fmt_value(cmp.birnbaum_j)
    )
}

pub fn compare_json(cmp: &RelativeComparison) -> Value {
    json!({
        "i": cmp.i,
        "j": cmp.j,
        "permutation_equivalent": cmp.permutation_equivalent,
        "mixed_partial_sign": mixed_sign_str(cmp.mixed_partial_sign),
        "prob_ordering": prob_ordering_str(cmp.prob_ordering),
        "verdict": verdict_str(cmp.verdict),
        "birnbaum_i": json_number(cmp.birnbaum_i),
        "birnbaum_j": json_number(cmp.birnbaum_j),
    })
}

pub fn estimate_text(est: &McEstimate) -> String {
    format!(
        "mean,std_error,samples\n{},{},{}\n",
        fmt_value(est.mean),
        fmt_value(est.std_error),
        est.samples
    )
}

pub fn estimate_json(est: &McEstimate) -> Value {
    json!({
        "mean": json_number(est.mean),
        "std_error": json_number(est.std_error),
        "samples": est.samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_formatting() {
        assert_eq!(fmt_value(0.0), "0");
        assert_eq!(fmt_value(f64::INFINITY), "inf");
        let x = 0.28f64;
        let printed = fmt_value(x);
        assert_eq!(printed.parse::<f64>().unwrap(), x);
        assert_eq!(printed, "2.8000000000000003e-1");
    }

    #[test]
    fn json_infinity_is_string() {
        assert_eq!(json_number(f64::INFINITY), json!("inf"));
        assert_eq!(json_number(0.5), json!(0.5));
    }
}
