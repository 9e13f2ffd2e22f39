use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::common::{event_date, event_type, events, is_person, participant_identities, person_label, persons};
use super::AnalyticsError;
use crate::graph::vocab::{bgn, edm, rdf};
use crate::graph::{Iris, Store, Term};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Actor {
    pub iri: String,
    pub label: String,
    pub color_index: usize,
    pub event_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventNode {
    pub year: i32,
    #[serde(rename = "type")]
    pub event_type: String,
    pub participants: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueEvent {
    pub event_iri: String,
    #[serde(rename = "type")]
    pub event_type: String,
    pub participants: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipationGraph {
    pub actors: Vec<Actor>,
    pub events: Vec<EventNode>,
    /// Events without a date, left out of the year buckets.
    pub residue: Vec<ResidueEvent>,
}

/// Events of the same type in the same year collapse into one node shared
/// by all their participants.
pub fn participation_graph(
    store: &Store,
    person_filter: &[String],
    type_filter: &[String],
    iris: &Iris,
) -> Result<ParticipationGraph, AnalyticsError> {
    for p in person_filter {
        if !is_person(store, p) {
            return Err(AnalyticsError::UnknownPerson(p.clone()));
        }
    }
    if let Some(t) = type_filter.iter().find(|t| t.trim().is_empty()) {
        return Err(AnalyticsError::InvalidFilter(format!("empty event type {t:?}")));
    }
    let selected: BTreeSet<String> =
        if person_filter.is_empty() { persons(store).into_iter().collect() } else { person_filter.iter().cloned().collect() };

    let mut buckets: BTreeMap<(i32, String), BTreeSet<String>> = BTreeMap::new();
    let mut residue = Vec::new();
    for e in events(store) {
        let ty = event_type(store, &e, iris);
        if !type_filter.is_empty() && !type_filter.contains(&ty) {
            continue;
        }
        let people: Vec<String> =
            participant_identities(store, &e).into_iter().filter(|p| selected.contains(p)).collect();
        if people.is_empty() {
            continue;
        }
        match event_date(store, &e) {
            Some(d) => buckets.entry((d.year_value(), ty)).or_default().extend(people),
            None => residue.push(ResidueEvent { event_iri: e, event_type: ty, participants: people }),
        }
    }
    residue.sort_by(|a, b| a.event_iri.cmp(&b.event_iri));

    let events: Vec<EventNode> = buckets
        .into_iter()
        .map(|((year, event_type), ps)| EventNode { year, event_type, participants: ps.into_iter().collect() })
        .collect();
    let mut labelled: Vec<(String, String)> = selected.into_iter().map(|p| (person_label(store, &p), p)).collect();
    labelled.sort();
    let actors = labelled
        .into_iter()
        .enumerate()
        .map(|(i, (label, iri))| Actor {
            event_count: events.iter().filter(|n| n.participants.contains(&iri)).count(),
            iri,
            label,
            color_index: i,
        })
        .collect();
    Ok(ParticipationGraph { actors, events, residue })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClimaxMode {
    /// Number of distinct people taking part in events of the type that year.
    #[default]
    DistinctParticipants,
    /// Number of events of the type that year.
    EventCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClimaxPoint {
    pub year: i32,
    pub score: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClimaxGroup {
    #[serde(rename = "type")]
    pub event_type: String,
    pub points: Vec<ClimaxPoint>,
}

impl ClimaxGroup {
    pub fn max_score(&self) -> u64 {
        self.points.iter().map(|p| p.score).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ClimaxSeries {
    pub groups: Vec<ClimaxGroup>,
}

impl ClimaxSeries {
    /// Keep only the listed event types; an empty list keeps everything.
    pub fn retain_types(mut self, types: &[String]) -> Self {
        if !types.is_empty() {
            self.groups.retain(|g| types.contains(&g.event_type));
        }
        self
    }

    pub fn score(&self, event_type: &str, year: i32) -> Option<u64> {
        self.groups
            .iter()
            .find(|g| g.event_type == event_type)?
            .points
            .iter()
            .find(|p| p.year == year)
            .map(|p| p.score)
    }
}

/// People a store knows about: linked persons plus unlinked person instances.
pub fn person_count(store: &Store) -> usize {
    let linked = store.subjects(rdf::TYPE, &Term::iri(edm::PROVIDED_CHO)).len();
    let instances = store
        .subjects(rdf::TYPE, &Term::iri(bgn::PERSON))
        .into_iter()
        .filter(|i| store.objects(i, crate::graph::vocab::owl::SAME_AS).is_empty())
        .count();
    linked + instances
}

pub fn climax_scores(store: &Store, mode: ClimaxMode, iris: &Iris) -> ClimaxSeries {
    let mut buckets: BTreeMap<String, BTreeMap<i32, (BTreeSet<String>, u64)>> = BTreeMap::new();
    for e in events(store) {
        let Some(date) = event_date(store, &e) else { continue };
        let people = participant_identities(store, &e);
        let slot = buckets.entry(event_type(store, &e, iris)).or_default().entry(date.year_value()).or_default();
        slot.1 += u64::from(!people.is_empty());
        slot.0.extend(people);
    }
    let mut groups: Vec<ClimaxGroup> = buckets
        .into_iter()
        .map(|(event_type, years)| ClimaxGroup {
            event_type,
            points: years
                .into_iter()
                .map(|(year, (people, n))| ClimaxPoint {
                    year,
                    score: match mode {
                        ClimaxMode::DistinctParticipants => people.len() as u64,
                        ClimaxMode::EventCount => n,
                    },
                })
                .filter(|p| p.score >= 1)
                .collect(),
        })
        .filter(|g| !g.points.is_empty())
        .collect();
    groups.sort_by(|a, b| b.max_score().cmp(&a.max_score()).then_with(|| a.event_type.cmp(&b.event_type)));
    ClimaxSeries { groups }
}

/// Payload consumed by the storyline and climax views.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StorytellerExport {
    pub actors: Vec<Actor>,
    pub events: Vec<EventNode>,
    pub groups: Vec<ClimaxGroup>,
}

pub fn storyteller_export(
    store: &Store,
    person_filter: &[String],
    type_filter: &[String],
    mode: ClimaxMode,
    iris: &Iris,
) -> Result<StorytellerExport, AnalyticsError> {
    let g = participation_graph(store, person_filter, type_filter, iris)?;
    let c = climax_scores(store, mode, iris).retain_types(type_filter);
    Ok(StorytellerExport { actors: g.actors, events: g.events, groups: c.groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vocab::sem;
    use crate::graph::Statement;
    use crate::corpus::PartialDate;

    fn event(sts: &mut Vec<Statement>, iris: &Iris, e: &str, frame: &str, year: Option<i32>, actors: &[&str]) {
        sts.push(Statement::new(e, rdf::TYPE, Term::iri(sem::EVENT), "urn:g"));
        sts.push(Statement::new(e, rdf::TYPE, Term::iri(iris.frame(frame)), "urn:g"));
        if let Some(y) = year {
            sts.push(Statement::new(e, sem::HAS_TIME, Term::date(PartialDate::year(y)), "urn:g"));
        }
        for a in actors {
            sts.push(Statement::new(e, sem::HAS_ACTOR, Term::iri(*a), "urn:g"));
        }
    }

    fn person(sts: &mut Vec<Statement>, p: &str, label: &str) {
        sts.push(Statement::new(p, rdf::TYPE, Term::iri(edm::PROVIDED_CHO), "urn:g"));
        sts.push(Statement::new(p, bgn::LABEL, Term::str(label), "urn:g"));
    }

    #[test]
    fn shared_birth_year_shares_a_node() {
        let iris = Iris::default();
        let mut sts = Vec::new();
        person(&mut sts, "urn:a", "Adriaan");
        person(&mut sts, "urn:b", "Bertha");
        event(&mut sts, &iris, "urn:e1", "Being_born", Some(1466), &["urn:a"]);
        event(&mut sts, &iris, "urn:e2", "Being_born", Some(1466), &["urn:b"]);
        event(&mut sts, &iris, "urn:e3", "Death", None, &["urn:b"]);
        let store = Store::from_statements(sts).unwrap();
        let g = participation_graph(&store, &[], &[], &iris).unwrap();
        assert_eq!(g.events.len(), 1);
        assert_eq!(g.events[0].participants, ["urn:a", "urn:b"]);
        assert_eq!(g.residue.len(), 1);
        assert_eq!(g.actors.iter().map(|a| a.event_count).collect::<Vec<_>>(), [1, 1]);
        assert!(participation_graph(&store, &["urn:zz".into()], &[], &iris).is_err());
    }

    #[test]
    fn climax_counts_distinct_people() {
        let iris = Iris::default();
        let mut sts = Vec::new();
        for p in ["urn:a", "urn:b", "urn:c"] {
            person(&mut sts, p, p);
        }
        event(&mut sts, &iris, "urn:m1", "Marriage", Some(1490), &["urn:a", "urn:b"]);
        event(&mut sts, &iris, "urn:m2", "Marriage", Some(1490), &["urn:a", "urn:c"]);
        event(&mut sts, &iris, "urn:d1", "Death", Some(1500), &["urn:a"]);
        let store = Store::from_statements(sts).unwrap();
        let s = climax_scores(&store, ClimaxMode::DistinctParticipants, &iris);
        assert_eq!(s.score("Marriage", 1490), Some(3));
        assert_eq!(s.groups[0].event_type, "Marriage");
        let n = climax_scores(&store, ClimaxMode::EventCount, &iris);
        assert_eq!(n.score("Marriage", 1490), Some(2));
        assert!(climax_scores(&Store::new(), ClimaxMode::default(), &iris).groups.is_empty());
    }
}
