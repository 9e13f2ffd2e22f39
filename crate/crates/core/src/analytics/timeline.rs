use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::common::{
    description_of, entry_id_of, event_date, event_place, events, iri_objects, is_person, mention_spans,
    participant_identities, time_span,
};
use super::AnalyticsError;
use crate::corpus::PartialDate;
use crate::graph::vocab::rdf;
use crate::graph::{Iris, Store};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineEntry {
    pub event_iri: String,
    /// Frame ids first, then concept ids.
    pub types: Vec<String>,
    pub date: Option<PartialDate>,
    pub place: Option<String>,
    pub entry_id: Option<String>,
    /// Character offsets of the event and time mentions, sorted.
    pub offsets: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timeline {
    pub person: String,
    pub entries: Vec<TimelineEntry>,
}

/// Total order of timeline entries: dated before undated, then the first
/// mention offset, then entry id and event iri.
pub fn timeline_order(a: &TimelineEntry, b: &TimelineEntry) -> Ordering {
    let by_date = match (&a.date, &b.date) {
        (Some(x), Some(y)) => x.chronological_cmp(y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    };
    by_date
        .then_with(|| a.offsets.first().cmp(&b.offsets.first()))
        .then_with(|| a.entry_id.cmp(&b.entry_id))
        .then_with(|| a.event_iri.cmp(&b.event_iri))
}

pub fn event_types(store: &Store, event: &str, iris: &Iris) -> Vec<String> {
    let types = iri_objects(store, event, rdf::TYPE);
    let mut frames: Vec<String> = types.iter().filter_map(|t| iris.frame_id(t)).map(str::to_string).collect();
    let mut concepts: Vec<String> = types.iter().filter_map(|t| iris.concept_id(t)).map(str::to_string).collect();
    frames.sort();
    concepts.sort();
    frames.extend(concepts);
    frames
}

pub(crate) fn timeline_entry(store: &Store, event: &str, iris: &Iris) -> TimelineEntry {
    let mut offsets = mention_spans(store, event);
    offsets.extend(time_span(store, event));
    offsets.sort();
    offsets.dedup();
    TimelineEntry {
        event_iri: event.to_string(),
        types: event_types(store, event, iris),
        date: event_date(store, event),
        place: event_place(store, event).map(|(label, _)| label),
        entry_id: description_of(store, event).and_then(|d| entry_id_of(store, &d)),
        offsets,
    }
}

/// Every event one of whose participants is, or is linked to, the person,
/// across all of that person's descriptions.
pub fn timeline(store: &Store, person: &str, iris: &Iris) -> Result<Timeline, AnalyticsError> {
    if !is_person(store, person) {
        return Err(AnalyticsError::UnknownPerson(person.to_string()));
    }
    let mut entries: Vec<TimelineEntry> = events(store)
        .into_iter()
        .filter(|e| participant_identities(store, e).iter().any(|p| p == person))
        .map(|e| timeline_entry(store, &e, iris))
        .collect();
    entries.sort_by(timeline_order);
    Ok(Timeline { person: person.to_string(), entries })
}
