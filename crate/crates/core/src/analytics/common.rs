use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::corpus::PartialDate;
use crate::graph::vocab::{bgn, edm, gaf, owl, pb, rdf, sem};
use crate::graph::{Iris, Store, Term};

/// Exact ratio with a fixed four-digit decimal rendering.
///
/// Serializes as `{numerator, denominator, decimal}`; the decimal is ignored
/// on the way back in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct Fraction {
    pub numerator: u64,
    pub denominator: u64,
}

impl Fraction {
    /// Reduced `n/d`; a zero denominator gives 0.
    pub fn new(n: u64, d: u64) -> Self {
        if d == 0 || n == 0 {
            return Fraction { numerator: 0, denominator: 1 };
        }
        let r = Ratio::new(n, d);
        Fraction { numerator: *r.numer(), denominator: *r.denom() }
    }

    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.numerator, self.denominator)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    pub fn decimal(&self) -> String {
        format!("{:.4}", self.to_f64())
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Fraction", 3)?;
        st.serialize_field("numerator", &self.numerator)?;
        st.serialize_field("denominator", &self.denominator)?;
        st.serialize_field("decimal", &self.decimal())?;
        st.end()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} ({})", self.numerator, self.denominator, self.decimal())
    }
}

pub(crate) fn iri_objects(store: &Store, s: &str, p: &str) -> Vec<String> {
    store.objects(s, p).into_iter().filter_map(|t| t.as_iri().map(str::to_string)).collect()
}

pub(crate) fn str_object(store: &Store, s: &str, p: &str) -> Option<String> {
    store.objects(s, p).into_iter().find_map(|t| t.as_str().map(str::to_string))
}

pub fn is_person(store: &Store, iri: &str) -> bool {
    store.has_type(iri, edm::PROVIDED_CHO)
}

pub fn persons(store: &Store) -> Vec<String> {
    store.subjects(rdf::TYPE, &Term::iri(edm::PROVIDED_CHO))
}

pub fn person_label(store: &Store, person: &str) -> String {
    str_object(store, person, bgn::LABEL).unwrap_or_else(|| person.to_string())
}

pub fn events(store: &Store) -> Vec<String> {
    store.subjects(rdf::TYPE, &Term::iri(sem::EVENT))
}

/// Frame id of an event, else its concept id, else the generic `Event`.
pub fn event_type(store: &Store, event: &str, iris: &Iris) -> String {
    let types = iri_objects(store, event, rdf::TYPE);
    types
        .iter()
        .find_map(|t| iris.frame_id(t))
        .or_else(|| types.iter().find_map(|t| iris.concept_id(t)))
        .unwrap_or("Event")
        .to_string()
}

pub fn event_date(store: &Store, event: &str) -> Option<PartialDate> {
    store.objects(event, sem::HAS_TIME).into_iter().find_map(|t| t.as_date())
}

/// Place of an event: a literal, or the label of a place instance.
pub fn event_place(store: &Store, event: &str) -> Option<(String, Option<String>)> {
    store.objects(event, sem::HAS_PLACE).into_iter().find_map(|t| match t {
        Term::Iri(i) => str_object(store, &i, bgn::LABEL).map(|l| (l, Some(i))),
        other => other.as_str().map(|s| (s.to_string(), None)),
    })
}

/// Identity an event participant stands for: the linked person when an
/// identity link exists, the instance itself when it is a person instance.
pub fn identity(store: &Store, instance: &str) -> Option<String> {
    if is_person(store, instance) {
        return Some(instance.to_string());
    }
    if let Some(p) = iri_objects(store, instance, owl::SAME_AS).into_iter().next() {
        return Some(p);
    }
    store.has_type(instance, bgn::PERSON).then(|| instance.to_string())
}

/// Direct participants of an event: the metadata actor and every argument.
pub fn participants(store: &Store, event: &str) -> Vec<String> {
    let mut v = iri_objects(store, event, sem::HAS_ACTOR);
    for p in [pb::ARG0, pb::ARG1, pb::ARG2] {
        v.extend(iri_objects(store, event, p));
    }
    v.sort();
    v.dedup();
    v
}

/// Distinct identities among an event's participants.
pub fn participant_identities(store: &Store, event: &str) -> Vec<String> {
    let mut v: Vec<String> = participants(store, event).iter().filter_map(|p| identity(store, p)).collect();
    v.sort();
    v.dedup();
    v
}

/// Description that includes an event.
pub fn description_of(store: &Store, event: &str) -> Option<String> {
    store.subjects(bgn::INCLUDES, &Term::iri(event)).into_iter().next()
}

pub fn entry_id_of(store: &Store, description: &str) -> Option<String> {
    str_object(store, description, bgn::ENTRY_ID)
}

/// `(begin, end)` offsets of the mentions an instance is denoted by.
pub fn mention_spans(store: &Store, instance: &str) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = iri_objects(store, instance, gaf::DENOTED_BY)
        .iter()
        .filter_map(|m| {
            let b = store.object(m, bgn::BEGIN_INDEX)?.as_int()?;
            let e = store.object(m, bgn::END_INDEX)?.as_int()?;
            Some((b as usize, e as usize))
        })
        .collect();
    v.sort();
    v
}

pub fn time_span(store: &Store, event: &str) -> Option<(usize, usize)> {
    let m = iri_objects(store, event, bgn::TIME_DENOTED_BY).into_iter().next()?;
    let b = store.object(&m, bgn::BEGIN_INDEX)?.as_int()?;
    let e = store.object(&m, bgn::END_INDEX)?.as_int()?;
    Some((b as usize, e as usize))
}
