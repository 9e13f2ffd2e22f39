use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ApiError;
use crate::analytics::{fact_alternatives, Agreement, FactKind, FactValue, Origin, PairAgreement};
use crate::annotate::{Layer, StepRun};
use crate::corpus::{slice_chars, BiographyEntry};
use crate::dataset::Dataset;
use crate::graph::vocab::{bgn, ore};
use crate::graph::{read_provenance, Agent, Plan, Store, Term};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptionRef {
    pub iri: String,
    pub entry_id: String,
    pub source: String,
    /// API path of the provenance chain of this description.
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersonBundle {
    pub person_id: String,
    pub iri: String,
    pub label: String,
    pub aggregation: String,
    pub original_descriptions: Vec<DescriptionRef>,
    pub nlp_descriptions: Vec<DescriptionRef>,
}

pub fn provenance_path(iri: &str) -> String {
    format!(
        "/api/v1/provenance/{}",
        percent_encoding::utf8_percent_encode(iri, percent_encoding::NON_ALPHANUMERIC)
    )
}

pub fn person_bundle(ds: &Dataset, store: &Store, person_id: &str) -> Result<PersonBundle, ApiError> {
    let iri = ds.iris.person(person_id);
    if !crate::analytics::is_person(store, &iri) {
        return Err(ApiError::not_found(format!("unknown person {person_id:?}")));
    }
    let mut originals = Vec::new();
    let mut nlp = Vec::new();
    for d in store.subjects(ore::PROXY_FOR, &Term::iri(&iri)) {
        let r = DescriptionRef {
            entry_id: crate::analytics::entry_id_of(store, &d).unwrap_or_default(),
            source: store.object(&d, bgn::SOURCE).and_then(|t| t.as_str().map(str::to_string)).unwrap_or_default(),
            provenance: provenance_path(&d),
            iri: d.clone(),
        };
        if store.has_type(&d, bgn::ORIGINAL_DESCRIPTION) {
            originals.push(r);
        } else if store.has_type(&d, bgn::NLP_DESCRIPTION) {
            nlp.push(r);
        }
    }
    originals.sort_by(|a, b| a.entry_id.cmp(&b.entry_id));
    nlp.sort_by(|a, b| a.entry_id.cmp(&b.entry_id));
    Ok(PersonBundle {
        person_id: person_id.to_string(),
        label: crate::analytics::person_label(store, &iri),
        aggregation: ds.iris.aggregation(person_id),
        iri,
        original_descriptions: originals,
        nlp_descriptions: nlp,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Highlight {
    pub begin: usize,
    pub end: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    /// Character offset of the fragment in the entry text.
    pub begin: usize,
    pub text: String,
    pub highlights: Vec<Highlight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceView {
    pub entry_id: String,
    pub source: String,
    pub author: Option<String>,
    pub title: String,
    pub origin: Origin,
    /// Set when the value comes from metadata and has no text grounding.
    pub no_grounding: bool,
    pub fragment: Option<Fragment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternativeView {
    pub value: FactValue,
    pub support_count: usize,
    pub versus_selected: Agreement,
    pub sources: Vec<SourceView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactView {
    pub person: String,
    pub kind: FactKind,
    pub alternatives: Vec<AlternativeView>,
    pub pairs: Vec<PairAgreement>,
}

/// The sentence-bounded stretch of text around a set of spans.
pub fn fragment(entry: &BiographyEntry, spans: &[(usize, usize)]) -> Option<Fragment> {
    let begin = spans.iter().map(|s| s.0).min()?;
    let end = spans.iter().map(|s| s.1).max()?;
    let chars: Vec<char> = entry.text.chars().collect();
    if end > chars.len() {
        return None;
    }
    let boundary = |c: char| matches!(c, '.' | '!' | '?' | '\n');
    let mut fb = begin;
    while fb > 0 && !boundary(chars[fb - 1]) {
        fb -= 1;
    }
    while fb < begin && chars[fb].is_whitespace() {
        fb += 1;
    }
    let mut fe = end;
    while fe < chars.len() && !boundary(chars[fe]) {
        fe += 1;
    }
    if fe < chars.len() && chars[fe] != '\n' {
        fe += 1;
    }
    let mut seen = BTreeSet::new();
    let highlights = spans
        .iter()
        .filter(|s| seen.insert(**s))
        .filter_map(|&(b, e)| slice_chars(&entry.text, b, e).map(|t| Highlight { begin: b, end: e, text: t.to_string() }))
        .collect();
    Some(Fragment { begin: fb, text: slice_chars(&entry.text, fb, fe)?.to_string(), highlights })
}

pub fn fact_view(ds: &Dataset, store: &Store, person_id: &str, kind: &str) -> Result<FactView, ApiError> {
    let kind: FactKind = kind.parse().map_err(|e: crate::analytics::AnalyticsError| ApiError::bad_request(e.to_string()))?;
    let iri = ds.iris.person(person_id);
    let facts = fact_alternatives(store, &iri, kind, &ds.iris).map_err(ApiError::from_analytics)?;
    let alternatives = facts
        .alternatives
        .into_iter()
        .map(|alt| AlternativeView {
            support_count: alt.supports.len(),
            versus_selected: alt.versus_selected,
            sources: alt
                .supports
                .iter()
                .map(|s| {
                    let fragment = match s.origin {
                        Origin::Text => ds.entry(&s.entry_id).and_then(|e| fragment(e, &s.highlights)),
                        Origin::Metadata => None,
                    };
                    SourceView {
                        entry_id: s.entry_id.clone(),
                        source: s.source.clone(),
                        author: s.author.clone(),
                        title: s.title.clone(),
                        origin: s.origin,
                        no_grounding: fragment.is_none(),
                        fragment,
                    }
                })
                .collect(),
            value: alt.value,
        })
        .collect();
    Ok(FactView { person: facts.person, kind, alternatives, pairs: facts.pairs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepView {
    pub index: usize,
    pub name: String,
    pub tool_version: String,
    pub commit: String,
    pub started: String,
    pub ended: String,
    pub input_layers: Vec<Layer>,
    pub output_layers: Vec<Layer>,
    pub plan_step: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessView {
    pub activity: String,
    pub started: String,
    pub ended: String,
    pub used: Vec<String>,
    pub steps: Vec<StepView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataView {
    pub derived_from: Vec<ProvenanceChain>,
}

/// Data, process and responsibility views of an entity, with the data view
/// followed back to entities without further derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceChain {
    pub entity: String,
    pub data: DataView,
    pub process: Option<ProcessView>,
    pub responsibility: Vec<Agent>,
    pub plan: Option<Plan>,
    /// End-user documentation of the producing process.
    pub documentation: Option<String>,
}

fn step_view(i: usize, r: &StepRun) -> StepView {
    StepView {
        index: i + 1,
        name: r.step_name.clone(),
        tool_version: r.tool_version.clone(),
        commit: r.commit_ref.clone(),
        started: crate::graph::timestamp(&r.started_at),
        ended: crate::graph::timestamp(&r.ended_at),
        input_layers: r.input_layers.clone(),
        output_layers: r.output_layers.clone(),
        plan_step: r.plan_step_id.clone(),
    }
}

fn chain(store: &Store, entity: &str, visiting: &mut Vec<String>) -> Option<ProvenanceChain> {
    let rec = read_provenance(store, entity)?;
    visiting.push(entity.to_string());
    let sources: Vec<&String> = rec.derived_from.iter().filter(|d| !visiting.contains(d)).collect();
    let derived_from = sources
        .into_iter()
        .map(|d| {
            chain(store, d, visiting).unwrap_or_else(|| ProvenanceChain {
                entity: d.clone(),
                data: DataView { derived_from: vec![] },
                process: None,
                responsibility: vec![],
                plan: None,
                documentation: None,
            })
        })
        .collect();
    visiting.pop();
    let documentation = rec.activity.as_ref().and_then(|a| a.documentation.clone());
    Some(ProvenanceChain {
        entity: rec.entity_iri,
        data: DataView { derived_from },
        process: rec.activity.map(|a| ProcessView {
            started: crate::graph::timestamp(&a.started),
            ended: crate::graph::timestamp(&a.ended),
            used: a.used,
            steps: a.step_runs.iter().enumerate().map(|(i, r)| step_view(i, r)).collect(),
            activity: a.iri,
        }),
        responsibility: rec.agents,
        plan: rec.plan,
        documentation,
    })
}

pub fn provenance_chain(store: &Store, entity: &str) -> Result<ProvenanceChain, ApiError> {
    chain(store, entity, &mut Vec::new()).ok_or_else(|| ApiError::not_found(format!("no provenance for {entity:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fragment_is_sentence_bounded() {
        let e = BiographyEntry::new("e", "s", "X", "Eerste zin. Hij werd geboren te Gouda. Einde.");
        let f = fragment(&e, &[(32, 37)]).unwrap();
        assert_eq!(f.text, "Hij werd geboren te Gouda.");
        assert_eq!(f.begin, 12);
        assert_eq!(f.highlights[0].text, "Gouda");
    }
}
