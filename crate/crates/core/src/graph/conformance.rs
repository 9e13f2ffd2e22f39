use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::vocab::{bgn, gaf, pplan, prov, rdf, sem};
use super::{Store, Term};

/// Classes whose instances are generated from text and must be grounded.
pub const CONTENT_CLASSES: [&str; 5] = [sem::EVENT, bgn::PERSON, bgn::LOCATION, bgn::ORGANIZATION, bgn::THING];

/// First missing link of a description's provenance chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainGap {
    pub description: String,
    pub missing: String,
}

/// A content statement whose subject has no mention that validates against
/// the source text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundingGap {
    pub statement: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub descriptions: usize,
    pub content_statements: usize,
    pub broken_chains: Vec<ChainGap>,
    pub ungrounded: Vec<GroundingGap>,
}

impl ConformanceReport {
    pub fn is_conformant(&self) -> bool {
        self.broken_chains.is_empty() && self.ungrounded.is_empty()
    }
}

fn iris(store: &Store, s: &str, p: &str) -> Vec<String> {
    store.objects(s, p).into_iter().filter_map(|t| t.as_iri().map(str::to_string)).collect()
}

fn chain_gap(store: &Store, d: &str) -> Option<&'static str> {
    if iris(store, d, prov::WAS_DERIVED_FROM).is_empty() {
        return Some("derivation");
    }
    let activities: Vec<String> =
        iris(store, d, prov::WAS_GENERATED_BY).into_iter().filter(|a| store.has_type(a, prov::ACTIVITY)).collect();
    let Some(a) = activities.first() else { return Some("activity") };
    if !iris(store, a, prov::WAS_ASSOCIATED_WITH).iter().any(|g| store.has_type(g, prov::AGENT)) {
        return Some("agent");
    }
    let Some(plan) = iris(store, a, prov::HAD_PLAN).into_iter().next() else { return Some("plan") };
    let steps: BTreeSet<String> = store.subjects(pplan::IS_STEP_OF_PLAN, &Term::iri(&plan)).into_iter().collect();
    let runs = store.subjects(bgn::PART_OF, &Term::iri(a));
    if steps.is_empty() || runs.is_empty() {
        return Some("plan step");
    }
    let mut executed = BTreeSet::new();
    for r in &runs {
        match iris(store, r, pplan::CORRESPONDS_TO_STEP).into_iter().find(|s| steps.contains(s)) {
            Some(s) => executed.insert(s),
            None => return Some("plan step"),
        };
    }
    (executed != steps).then_some("plan step")
}

/// Why a mention does not ground text, if it does not.
fn mention_problem(store: &Store, m: &str, texts: &BTreeMap<String, String>) -> Option<String> {
    let int = |p: &str| store.object(m, p).and_then(|t| t.as_int());
    let doc = store.object(m, bgn::DOC_ID).and_then(|t| t.as_str().map(str::to_string));
    let (Some(doc), Some(begin), Some(end)) = (doc, int(bgn::BEGIN_INDEX), int(bgn::END_INDEX)) else {
        return Some(format!("mention {m} lacks document or offsets"));
    };
    let Some(text) = texts.get(&doc) else { return Some(format!("mention {m} cites unknown document {doc}")) };
    let len = text.chars().count() as i64;
    if begin < 0 || begin >= end || end > len {
        return Some(format!("mention {m} offsets [{begin}, {end}) outside text of length {len}"));
    }
    let slice: String = text.chars().skip(begin as usize).take((end - begin) as usize).collect();
    slice.trim().is_empty().then(|| format!("mention {m} covers only whitespace"))
}

/// Audit every NLP description: its provenance chain must reach an agent and
/// the executed plan steps, and every statement about a text-derived
/// instance in its graph must be backed by a mention whose offsets slice a
/// non-blank span of the entry text. `texts` maps entry ids to texts.
pub fn conformance(store: &Store, texts: &BTreeMap<String, String>) -> ConformanceReport {
    let mut report = ConformanceReport::default();
    let descriptions = store.subjects(rdf::TYPE, &Term::iri(bgn::NLP_DESCRIPTION));
    let mut graphs = BTreeSet::new();
    for d in &descriptions {
        report.descriptions += 1;
        if let Some(missing) = chain_gap(store, d) {
            report.broken_chains.push(ChainGap { description: d.clone(), missing: missing.to_string() });
        }
        graphs.extend(store.find(Some(d), Some(rdf::TYPE), None, None).into_iter().map(|s| s.graph));
    }
    let mut verdicts: BTreeMap<String, Option<String>> = BTreeMap::new();
    for g in &graphs {
        for st in store.graph(g) {
            let s = &st.subject;
            if !CONTENT_CLASSES.iter().any(|c| store.has_type(s, c)) {
                continue;
            }
            report.content_statements += 1;
            let verdict = verdicts.entry(s.clone()).or_insert_with(|| {
                let mentions = iris(store, s, gaf::DENOTED_BY);
                if mentions.is_empty() {
                    return Some(format!("{s} has no denotedBy mention"));
                }
                mentions.iter().find_map(|m| mention_problem(store, m, texts))
            });
            if let Some(reason) = verdict {
                report.ungrounded.push(GroundingGap { statement: st.quad_line(), reason: reason.clone() });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Statement;

    fn st(s: &str, p: &str, o: Term) -> Statement {
        Statement::new(s, p, o, "urn:g")
    }

    #[test]
    fn unprovenanced_description_and_bare_event_are_reported() {
        let store = Store::from_statements([
            st("urn:d", rdf::TYPE, Term::iri(bgn::NLP_DESCRIPTION)),
            st("urn:e", rdf::TYPE, Term::iri(sem::EVENT)),
        ])
        .unwrap();
        let r = conformance(&store, &BTreeMap::new());
        assert_eq!(r.broken_chains, vec![ChainGap { description: "urn:d".into(), missing: "derivation".into() }]);
        assert_eq!(r.content_statements, 1);
        assert_eq!(r.ungrounded.len(), 1);
    }

    #[test]
    fn mention_offsets_are_checked_against_the_text() {
        let sts = vec![
            st("urn:d", rdf::TYPE, Term::iri(bgn::NLP_DESCRIPTION)),
            st("urn:e", rdf::TYPE, Term::iri(sem::EVENT)),
            st("urn:e", gaf::DENOTED_BY, Term::iri("urn:m")),
            st("urn:m", bgn::DOC_ID, Term::str("x")),
            st("urn:m", bgn::BEGIN_INDEX, Term::int(4)),
        ];
        let texts = BTreeMap::from([("x".to_string(), "Zij huwde.".to_string())]);
        let with_end = |end: i64| {
            let mut v = sts.clone();
            v.push(st("urn:m", bgn::END_INDEX, Term::int(end)));
            conformance(&Store::from_statements(v).unwrap(), &texts).ungrounded.len()
        };
        assert_eq!(with_end(9), 0);
        assert_eq!(with_end(40), 2);
        assert_eq!(with_end(4), 2);
    }
}
