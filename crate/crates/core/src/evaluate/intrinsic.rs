use serde::{Deserialize, Serialize};

use super::gold::{system_items, GoldAnnotation, GoldLayer, SpanItem};
use super::EvalError;
use crate::analytics::Fraction;
use crate::annotate::LayeredDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Matching {
    ExactSpan,
    Overlap,
}

impl Matching {
    pub fn as_str(&self) -> &'static str {
        match self {
            Matching::ExactSpan => "exact-span",
            Matching::Overlap => "overlap",
        }
    }

    pub fn spans_match(&self, a: &SpanItem, b: &SpanItem) -> bool {
        match self {
            Matching::ExactSpan => a.begin == b.begin && a.end == b.end,
            Matching::Overlap => a.overlaps(b),
        }
    }
}

impl std::str::FromStr for Matching {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" | "exact-span" => Ok(Matching::ExactSpan),
            "overlap" => Ok(Matching::Overlap),
            other => Err(EvalError::Format(format!("unknown matching {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Miss,
    FalsePositive,
    LabelConfusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalErrorItem {
    pub kind: ErrorKind,
    pub gold: Option<SpanItem>,
    pub system: Option<SpanItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub doc_id: String,
    pub layer: GoldLayer,
    pub matching: Matching,
    pub gold_count: u64,
    pub system_count: u64,
    pub true_positives: u64,
    pub precision: Fraction,
    pub recall: Fraction,
    pub f1: Fraction,
    pub errors: Vec<EvalErrorItem>,
}

impl EvalReport {
    fn from_counts(doc_id: String, layer: GoldLayer, matching: Matching, gold: u64, system: u64, tp: u64) -> Self {
        EvalReport {
            doc_id,
            layer,
            matching,
            gold_count: gold,
            system_count: system,
            true_positives: tp,
            precision: Fraction::new(tp, system),
            recall: Fraction::new(tp, gold),
            f1: Fraction::new(2 * tp, gold + system),
            errors: Vec::new(),
        }
    }
}

/// Maximum one-to-one matching between gold and system items over an edge
/// predicate, restricted to the still unmatched items on both sides.
fn max_matching(
    gold: &[SpanItem],
    system: &[SpanItem],
    gold_free: &[bool],
    system_free: &[bool],
    edge: impl Fn(&SpanItem, &SpanItem) -> bool,
) -> Vec<(usize, usize)> {
    let adj: Vec<Vec<usize>> = gold
        .iter()
        .enumerate()
        .map(|(g, gi)| {
            if !gold_free[g] {
                return Vec::new();
            }
            system.iter().enumerate().filter(|(s, si)| system_free[*s] && edge(gi, si)).map(|(s, _)| s).collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; system.len()];

    fn augment(g: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &s in &adj[g] {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            if owner[s].is_none_or(|h| augment(h, adj, seen, owner)) {
                owner[s] = Some(g);
                return true;
            }
        }
        false
    }

    for g in 0..gold.len() {
        let mut seen = vec![false; system.len()];
        augment(g, &adj, &mut seen, &mut owner);
    }
    let mut pairs: Vec<(usize, usize)> = owner.iter().enumerate().filter_map(|(s, g)| g.map(|g| (g, s))).collect();
    pairs.sort();
    pairs
}

/// Compare items directly; the counting core of `intrinsic_eval`.
pub fn compare_items(
    doc_id: &str,
    layer: GoldLayer,
    gold: &[SpanItem],
    system: &[SpanItem],
    matching: Matching,
) -> EvalReport {
    let mut gold_free = vec![true; gold.len()];
    let mut system_free = vec![true; system.len()];
    let hits = max_matching(gold, system, &gold_free, &system_free, |g, s| {
        g.label == s.label && matching.spans_match(g, s)
    });
    for &(g, s) in &hits {
        gold_free[g] = false;
        system_free[s] = false;
    }
    let mut report = EvalReport::from_counts(
        doc_id.to_string(),
        layer,
        matching,
        gold.len() as u64,
        system.len() as u64,
        hits.len() as u64,
    );
    let confusions = max_matching(gold, system, &gold_free, &system_free, |g, s| matching.spans_match(g, s));
    for &(g, s) in &confusions {
        gold_free[g] = false;
        system_free[s] = false;
        report.errors.push(EvalErrorItem {
            kind: ErrorKind::LabelConfusion,
            gold: Some(gold[g].clone()),
            system: Some(system[s].clone()),
        });
    }
    for (g, item) in gold.iter().enumerate().filter(|(g, _)| gold_free[*g]) {
        let _ = g;
        report.errors.push(EvalErrorItem { kind: ErrorKind::Miss, gold: Some(item.clone()), system: None });
    }
    for (_, item) in system.iter().enumerate().filter(|(s, _)| system_free[*s]) {
        report.errors.push(EvalErrorItem { kind: ErrorKind::FalsePositive, gold: None, system: Some(item.clone()) });
    }
    report
}

/// Precision, recall and F1 of a system document against a gold layer.
pub fn intrinsic_eval(
    system: &LayeredDocument,
    gold: &GoldAnnotation,
    matching: Matching,
) -> Result<EvalReport, EvalError> {
    if system.doc_id != gold.doc_id {
        return Err(EvalError::LayerMismatch(format!(
            "gold is for document {} but the system document is {}",
            gold.doc_id, system.doc_id
        )));
    }
    let needed = gold.layer.source_layer();
    if !system.produced_layers().contains(&needed) {
        return Err(EvalError::LayerMismatch(format!(
            "gold layer {} needs system layer {}, which was not produced",
            gold.layer, needed
        )));
    }
    let mut gold_items = gold.items.clone();
    gold_items.sort();
    Ok(compare_items(&gold.doc_id, gold.layer, &gold_items, &system_items(system, gold.layer), matching))
}

/// Both matching criteria, exact first.
pub fn intrinsic_eval_both(system: &LayeredDocument, gold: &GoldAnnotation) -> Result<[EvalReport; 2], EvalError> {
    Ok([intrinsic_eval(system, gold, Matching::ExactSpan)?, intrinsic_eval(system, gold, Matching::Overlap)?])
}

/// Pooled counts over several reports of one layer and matching.
pub fn micro_average(reports: &[EvalReport]) -> Option<EvalReport> {
    let first = reports.first()?;
    let (g, s, tp) = reports
        .iter()
        .fold((0, 0, 0), |(g, s, tp), r| (g + r.gold_count, s + r.system_count, tp + r.true_positives));
    let mut out = EvalReport::from_counts("*".to_string(), first.layer, first.matching, g, s, tp);
    out.errors = reports.iter().flat_map(|r| r.errors.iter().cloned()).collect();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn items(n: usize, label: &str) -> Vec<SpanItem> {
        (0..n).map(|i| SpanItem::new(i * 10, i * 10 + 5, label)).collect()
    }

    #[test]
    fn eight_of_nine_against_ten() {
        let gold = items(10, "PER");
        let mut system: Vec<SpanItem> = gold[..8].to_vec();
        system.push(SpanItem::new(500, 505, "PER"));
        let r = compare_items("d", GoldLayer::Entities, &gold, &system, Matching::ExactSpan);
        assert_eq!(r.precision, Fraction::new(8, 9));
        assert_eq!(r.recall, Fraction::new(4, 5));
        assert_eq!(r.errors.iter().filter(|e| e.kind == ErrorKind::Miss).count(), 2);
        assert_eq!(r.errors.iter().filter(|e| e.kind == ErrorKind::FalsePositive).count(), 1);
    }

    #[test]
    fn identical_is_perfect() {
        let gold = items(4, "LOC");
        let r = compare_items("d", GoldLayer::Entities, &gold, &gold, Matching::Overlap);
        assert_eq!((r.precision, r.recall, r.f1), (Fraction::new(1, 1), Fraction::new(1, 1), Fraction::new(1, 1)));
        assert!(r.errors.is_empty());
    }

    #[test]
    fn label_flip_is_a_confusion() {
        let gold = items(2, "PER");
        let mut system = gold.clone();
        system[1].label = "LOC".into();
        let r = compare_items("d", GoldLayer::Entities, &gold, &system, Matching::ExactSpan);
        assert_eq!(r.true_positives, 1);
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.errors[0].kind, ErrorKind::LabelConfusion);
    }

    #[test]
    fn overlap_matching_is_maximal() {
        // Greedy would pair gold 0 with system 0 and leave gold 1 unmatched.
        let gold = vec![SpanItem::new(0, 10, "X"), SpanItem::new(8, 9, "X")];
        let system = vec![SpanItem::new(5, 9, "X"), SpanItem::new(0, 3, "X")];
        let r = compare_items("d", GoldLayer::Events, &gold, &system, Matching::Overlap);
        assert_eq!(r.true_positives, 2);
    }
}
