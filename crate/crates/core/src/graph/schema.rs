use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use crate::corpus::{BiographyEntry, LifeEvent, PersonRecord};

use super::provenance::{build_provenance, ProvenanceRecord};
use super::vocab::{bgn, edm, ore, prov, rdf, sem};
use super::{Statement, Term};

const SEGMENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

pub const DEFAULT_BASE: &str = "https://bgf.example.org";

pub const BIRTH_FRAME: &str = "Being_born";
pub const DEATH_FRAME: &str = "Death";

fn seg(s: &str) -> String {
    utf8_percent_encode(s, SEGMENT).to_string()
}

/// Iri minting under one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iris {
    pub base: String,
}

impl Default for Iris {
    fn default() -> Self {
        Iris::new(DEFAULT_BASE)
    }
}

impl Iris {
    pub fn new(base: &str) -> Self {
        Iris { base: base.trim_end_matches('/').to_string() }
    }

    pub fn person(&self, person_id: &str) -> String {
        format!("{}/person/{}", self.base, seg(person_id))
    }

    pub fn aggregation(&self, person_id: &str) -> String {
        format!("{}/aggregation/{}", self.base, seg(person_id))
    }

    pub fn description(&self, entry_id: &str) -> String {
        format!("{}/description/{}", self.base, seg(entry_id))
    }

    pub fn nlp_description(&self, entry_id: &str) -> String {
        format!("{}/nlp", self.description(entry_id))
    }

    pub fn text(&self, entry_id: &str) -> String {
        format!("{}/text/{}", self.base, seg(entry_id))
    }

    pub fn record(&self, entry_id: &str) -> String {
        format!("{}/record/{}", self.base, seg(entry_id))
    }

    pub fn metadata_event(&self, entry_id: &str, kind: &str) -> String {
        format!("{}/event/{}/{}", self.base, seg(entry_id), kind)
    }

    pub fn instance(&self, entry_id: &str, layer: &str, n: usize) -> String {
        format!("{}/instance/{}/{}/{}", self.base, seg(entry_id), layer, n)
    }

    pub fn mention(&self, entry_id: &str, begin: usize, end: usize) -> String {
        format!("{}/mention/{}/{}-{}", self.base, seg(entry_id), begin, end)
    }

    pub fn activity(&self, entry_id: &str, run: &str) -> String {
        format!("{}/activity/{}/{}", self.base, seg(entry_id), run)
    }

    pub fn agent(&self, name: &str) -> String {
        format!("{}/agent/{}", self.base, seg(name))
    }

    pub fn concept(&self, id: &str) -> String {
        format!("{}/concept/{}", self.base, seg(id))
    }

    pub fn frame(&self, id: &str) -> String {
        format!("{}/frame/{}", self.base, seg(id))
    }

    pub fn lemma(&self, lemma: &str) -> String {
        format!("{}/lemma/{}", self.base, seg(lemma))
    }

    pub fn metadata_graph(&self, entry_id: &str) -> String {
        format!("{}/graph/{}/metadata", self.base, seg(entry_id))
    }

    pub fn nlp_graph(&self, entry_id: &str) -> String {
        format!("{}/graph/{}/nlp", self.base, seg(entry_id))
    }

    pub fn person_graph(&self, person_id: &str) -> String {
        format!("{}/graph/person/{}", self.base, seg(person_id))
    }

    /// Frame id of a frame iri minted here.
    pub fn frame_id<'a>(&self, iri: &'a str) -> Option<&'a str> {
        iri.strip_prefix(&self.base)?.strip_prefix("/frame/")
    }

    pub fn concept_id<'a>(&self, iri: &'a str) -> Option<&'a str> {
        iri.strip_prefix(&self.base)?.strip_prefix("/concept/")
    }

    /// Person id of a person iri minted here, percent-decoded.
    pub fn person_id(&self, iri: &str) -> Option<String> {
        let raw = iri.strip_prefix(&self.base)?.strip_prefix("/person/")?;
        percent_encoding::percent_decode_str(raw).decode_utf8().ok().map(|c| c.into_owned())
    }
}

/// The person node, its single aggregation and the links to every original
/// description.
pub fn person_statements(person: &PersonRecord, label: &str, iris: &Iris) -> Vec<Statement> {
    let g = iris.person_graph(&person.person_id);
    let p = iris.person(&person.person_id);
    let agg = iris.aggregation(&person.person_id);
    let mut out = vec![
        Statement::new(&p, rdf::TYPE, Term::iri(edm::PROVIDED_CHO), &g),
        Statement::new(&p, bgn::LABEL, Term::str(label), &g),
        Statement::new(&agg, rdf::TYPE, Term::iri(ore::AGGREGATION), &g),
        Statement::new(&agg, edm::AGGREGATED_CHO, Term::iri(&p), &g),
    ];
    for e in &person.entry_ids {
        out.push(Statement::new(&agg, ore::AGGREGATES, Term::iri(iris.description(e)), &g));
    }
    out
}

fn life_event(
    out: &mut Vec<Statement>,
    iris: &Iris,
    entry: &BiographyEntry,
    person_iri: &str,
    kind: &str,
    frame: &str,
    ev: &LifeEvent,
) {
    if ev.is_empty() {
        return;
    }
    let g = iris.metadata_graph(&entry.entry_id);
    let e = iris.metadata_event(&entry.entry_id, kind);
    out.push(Statement::new(iris.description(&entry.entry_id), bgn::INCLUDES, Term::iri(&e), &g));
    out.push(Statement::new(&e, rdf::TYPE, Term::iri(sem::EVENT), &g));
    out.push(Statement::new(&e, rdf::TYPE, Term::iri(iris.frame(frame)), &g));
    out.push(Statement::new(&e, sem::HAS_ACTOR, Term::iri(person_iri), &g));
    if let Some(d) = ev.date {
        out.push(Statement::new(&e, sem::HAS_TIME, Term::date(d), &g));
    }
    if let Some(place) = &ev.place {
        out.push(Statement::new(&e, sem::HAS_PLACE, Term::str(place), &g));
    }
}

/// The original description of one entry, converted without interpretation.
pub fn entry_statements(entry: &BiographyEntry, person_id: &str, iris: &Iris) -> Vec<Statement> {
    let g = iris.metadata_graph(&entry.entry_id);
    let d = iris.description(&entry.entry_id);
    let p = iris.person(person_id);
    let t = iris.text(&entry.entry_id);
    let r = iris.record(&entry.entry_id);
    let st = |s: &str, pr: &str, o: Term| Statement::new(s, pr, o, &g);
    let mut out = vec![
        st(&d, rdf::TYPE, Term::iri(bgn::ORIGINAL_DESCRIPTION)),
        st(&d, rdf::TYPE, Term::iri(ore::PROXY)),
        st(&d, ore::PROXY_FOR, Term::iri(&p)),
        st(&d, ore::PROXY_IN, Term::iri(iris.aggregation(person_id))),
        st(&d, bgn::ENTRY_ID, Term::str(&entry.entry_id)),
        st(&d, bgn::SOURCE, Term::str(&entry.source_id)),
        st(&d, bgn::GENDER, Term::str(entry.person.gender.as_str())),
        st(&d, bgn::HAS_TEXT, Term::iri(&t)),
        st(&t, rdf::TYPE, Term::iri(bgn::TEXT)),
        st(&t, rdf::TYPE, Term::iri(prov::ENTITY)),
        st(&t, prov::WAS_DERIVED_FROM, Term::iri(&r)),
        st(&r, rdf::TYPE, Term::iri(prov::ENTITY)),
    ];
    if let Some(a) = &entry.file_desc.author {
        out.push(st(&d, bgn::AUTHOR, Term::str(a)));
    }
    if let Some(p) = &entry.file_desc.publisher {
        out.push(st(&d, bgn::PUBLISHER, Term::str(p)));
    }
    if let Some(y) = entry.file_desc.year {
        out.push(st(&d, bgn::FILE_YEAR, Term::int(y as i64)));
    }
    for n in &entry.person.names {
        out.push(st(&d, bgn::NAME, Term::str(n)));
    }
    for e in &entry.person.education {
        out.push(st(&d, bgn::EDUCATION, Term::str(e)));
    }
    for o in &entry.person.occupation {
        out.push(st(&d, bgn::OCCUPATION, Term::str(o)));
    }
    life_event(&mut out, iris, entry, &p, "birth", BIRTH_FRAME, &entry.person.birth);
    life_event(&mut out, iris, entry, &p, "death", DEATH_FRAME, &entry.person.death);
    let prov = ProvenanceRecord::data_only(&d, vec![r]);
    out.extend(build_provenance(&prov, &g).expect("data-only records are always valid"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_are_percent_encoded_and_reversible() {
        let iris = Iris::default();
        let p = iris.person("de groot/1");
        assert_eq!(p, "https://bgf.example.org/person/de%20groot%2F1");
        assert_eq!(iris.person_id(&p).as_deref(), Some("de groot/1"));
    }

    #[test]
    fn nlp_description_differs_from_original() {
        let iris = Iris::default();
        assert_ne!(iris.description("e1"), iris.nlp_description("e1"));
        assert_eq!(iris.frame_id(&iris.frame("Marriage")), Some("Marriage"));
    }
}
