use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ApiError;
use crate::analytics::event_type;
use crate::annotate::{LayeredDocument, TagKind};
use crate::corpus::{century_label, BiographyEntry, UNKNOWN};
use crate::dataset::Dataset;
use crate::graph::vocab::bgn;
use crate::graph::{Iris, Store};

/// Facet fields a search can be refined by.
pub const FACET_FIELDS: [&str; 6] = ["source", "gender", "birth-century", "place", "profession", "event-type"];
pub const MAX_PAGE_SIZE: usize = 200;
pub const DEFAULT_PAGE_SIZE: usize = 20;

/// Ranking weights by matched field.
pub const NAME_WEIGHT: u8 = 3;
pub const METADATA_WEIGHT: u8 = 2;
pub const TEXT_WEIGHT: u8 = 1;

fn default_page() -> usize {
    1
}

fn default_page_size() -> usize {
    DEFAULT_PAGE_SIZE
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchRequest {
    #[serde(default)]
    pub q: String,
    #[serde(default)]
    pub facets: BTreeMap<String, Vec<String>>,
    #[serde(default = "default_page")]
    pub page: usize,
    #[serde(default = "default_page_size")]
    pub page_size: usize,
}

impl Default for SearchRequest {
    fn default() -> Self {
        SearchRequest { q: String::new(), facets: BTreeMap::new(), page: 1, page_size: DEFAULT_PAGE_SIZE }
    }
}

impl SearchRequest {
    pub fn query(q: &str) -> Self {
        SearchRequest { q: q.to_string(), ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), ApiError> {
        if let Some(f) = self.facets.keys().find(|f| !FACET_FIELDS.contains(&f.as_str())) {
            return Err(ApiError::bad_request(format!("unknown facet field {f:?}"))
                .with_details(serde_json::json!({ "field": f, "allowed": FACET_FIELDS })));
        }
        if self.page_size == 0 || self.page_size > MAX_PAGE_SIZE {
            return Err(ApiError::bad_request(format!("page_size must lie in 1..={MAX_PAGE_SIZE}"))
                .with_details(serde_json::json!({ "field": "page_size" })));
        }
        if self.page == 0 {
            return Err(ApiError::bad_request("page numbers start at 1").with_details(serde_json::json!({ "field": "page" })));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryHit {
    pub entry_id: String,
    pub source_id: String,
    /// Fields the query matched: `name`, `metadata` or `text`.
    pub matched: Vec<String>,
    pub weight: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersonHit {
    pub person_id: String,
    pub iri: String,
    pub label: String,
    pub weight: u8,
    pub entries: Vec<EntryHit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResponse {
    pub request: SearchRequest,
    pub total_persons: usize,
    pub total_entries: usize,
    pub persons: Vec<PersonHit>,
    /// Value counts per facet field over the matched entries.
    pub facets: BTreeMap<String, BTreeMap<String, usize>>,
}

#[derive(Debug, Clone)]
struct IndexedEntry {
    entry_id: String,
    source_id: String,
    person_id: String,
    names: Vec<String>,
    metadata: Vec<String>,
    words: BTreeSet<String>,
    facets: BTreeMap<&'static str, Vec<String>>,
}

/// Name, metadata and token/lemma index over a dataset.
#[derive(Debug, Clone)]
pub struct SearchIndex {
    entries: Vec<IndexedEntry>,
    labels: BTreeMap<String, (String, String)>,
}

fn lower(s: &str) -> String {
    s.to_lowercase()
}

fn words_of(entry: &BiographyEntry, lad: Option<&LayeredDocument>) -> BTreeSet<String> {
    let mut words: BTreeSet<String> = entry
        .text
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(lower)
        .collect();
    if let Some(lad) = lad {
        words.extend(lad.terms.iter().map(|t| lower(&t.lemma)));
    }
    words
}

fn professions(entry: &BiographyEntry, lad: Option<&LayeredDocument>) -> Vec<String> {
    if let Some(o) = entry.person.occupation.first() {
        return vec![lower(o)];
    }
    lad.and_then(|l| l.term_tags.iter().find(|t| t.tag.kind == TagKind::Profession))
        .map(|t| vec![lower(&t.tag.label)])
        .unwrap_or_else(|| vec![UNKNOWN.to_string()])
}

fn entry_event_types(store: &Store, entry_id: &str, iris: &Iris) -> Vec<String> {
    let mut types: BTreeSet<String> = BTreeSet::new();
    for d in [iris.description(entry_id), iris.nlp_description(entry_id)] {
        for e in store.objects(&d, bgn::INCLUDES).into_iter().filter_map(|t| t.as_iri().map(str::to_string)) {
            if store.has_type(&e, crate::graph::vocab::sem::EVENT) {
                types.insert(event_type(store, &e, iris));
            }
        }
    }
    if types.is_empty() {
        types.insert(UNKNOWN.to_string());
    }
    types.into_iter().collect()
}

impl SearchIndex {
    pub fn build(ds: &Dataset) -> Self {
        let mut entries = Vec::new();
        let mut labels = BTreeMap::new();
        for p in &ds.persons {
            let label = ds.entry(&p.entry_ids[0]).map(|e| e.display_name().to_string()).unwrap_or_default();
            labels.insert(p.person_id.clone(), (ds.iris.person(&p.person_id), label));
            for id in &p.entry_ids {
                let Some(e) = ds.entry(id) else { continue };
                let lad = ds.lads.get(id);
                let m = &e.person;
                let mut metadata: Vec<String> = vec![e.source_id.clone()];
                metadata.extend(e.file_desc.author.clone());
                metadata.extend(e.file_desc.publisher.clone());
                metadata.extend(m.birth.place.clone());
                metadata.extend(m.death.place.clone());
                metadata.extend(m.education.iter().cloned());
                metadata.extend(m.occupation.iter().cloned());
                let mut facets = BTreeMap::new();
                facets.insert("source", vec![e.source_id.clone()]);
                facets.insert("gender", vec![m.gender.as_str().to_string()]);
                facets.insert("birth-century", vec![century_label(m.birth.date.map(|d| d.century()))]);
                facets.insert("place", vec![m.birth.place.clone().unwrap_or_else(|| UNKNOWN.to_string())]);
                facets.insert("profession", professions(e, lad));
                facets.insert("event-type", entry_event_types(&ds.store, id, &ds.iris));
                entries.push(IndexedEntry {
                    entry_id: e.entry_id.clone(),
                    source_id: e.source_id.clone(),
                    person_id: p.person_id.clone(),
                    names: m.names.iter().map(|n| lower(n)).collect(),
                    metadata: metadata.iter().map(|s| lower(s)).collect(),
                    words: words_of(e, lad),
                    facets,
                });
            }
        }
        SearchIndex { entries, labels }
    }

    /// Fields of an entry the query matches. An empty query matches every entry.
    fn matches(e: &IndexedEntry, q: &str) -> Vec<(&'static str, u8)> {
        let q = lower(q.trim());
        if q.is_empty() {
            return vec![];
        }
        let mut out = Vec::new();
        if e.names.iter().any(|n| n.contains(&q)) {
            out.push(("name", NAME_WEIGHT));
        }
        if e.metadata.iter().any(|m| m.contains(&q)) {
            out.push(("metadata", METADATA_WEIGHT));
        }
        if q.split_whitespace().all(|w| e.words.contains(w)) {
            out.push(("text", TEXT_WEIGHT));
        }
        out
    }

    pub fn search(&self, req: &SearchRequest) -> Result<SearchResponse, ApiError> {
        req.validate()?;
        let mut hits: Vec<(&IndexedEntry, EntryHit)> = Vec::new();
        for e in &self.entries {
            let m = Self::matches(e, &req.q);
            if !req.q.trim().is_empty() && m.is_empty() {
                continue;
            }
            let accepted = req.facets.iter().all(|(field, values)| {
                values.is_empty() || e.facets[field.as_str()].iter().any(|v| values.iter().any(|x| lower(x) == lower(v)))
            });
            if !accepted {
                continue;
            }
            hits.push((
                e,
                EntryHit {
                    entry_id: e.entry_id.clone(),
                    source_id: e.source_id.clone(),
                    matched: m.iter().map(|(f, _)| f.to_string()).collect(),
                    weight: m.iter().map(|(_, w)| *w).max().unwrap_or(0),
                },
            ));
        }
        let mut facets: BTreeMap<String, BTreeMap<String, usize>> =
            FACET_FIELDS.iter().map(|f| (f.to_string(), BTreeMap::new())).collect();
        for (e, _) in &hits {
            for (field, values) in &e.facets {
                let counts = facets.get_mut(*field).expect("fixed facet list");
                for v in values {
                    *counts.entry(v.clone()).or_default() += 1;
                }
            }
        }
        let mut persons: BTreeMap<&str, Vec<EntryHit>> = BTreeMap::new();
        for (e, h) in &hits {
            persons.entry(e.person_id.as_str()).or_default().push(h.clone());
        }
        let mut ranked: Vec<PersonHit> = persons
            .into_iter()
            .map(|(pid, mut entries)| {
                entries.sort_by(|a, b| b.weight.cmp(&a.weight).then_with(|| a.entry_id.cmp(&b.entry_id)));
                let (iri, label) = self.labels.get(pid).cloned().unwrap_or_default();
                PersonHit {
                    person_id: pid.to_string(),
                    iri,
                    label,
                    weight: entries.iter().map(|e| e.weight).max().unwrap_or(0),
                    entries,
                }
            })
            .collect();
        ranked.sort_by(|a, b| b.weight.cmp(&a.weight).then_with(|| a.person_id.cmp(&b.person_id)));
        let total_persons = ranked.len();
        let page: Vec<PersonHit> = ranked.into_iter().skip((req.page - 1) * req.page_size).take(req.page_size).collect();
        Ok(SearchResponse {
            request: req.clone(),
            total_persons,
            total_entries: hits.len(),
            persons: page,
            facets,
        })
    }
}
