//! Questions over the graph: timelines, concept statistics, textual ratios,
//! name counts, storyline data and conflicting facts.

mod common;
mod concepts;
mod facts;
mod storyteller;
mod text;
mod timeline;

pub use common::{
    description_of, entry_id_of, event_date, event_place, event_type, events, identity, is_person, mention_spans,
    participant_identities, participants, person_label, persons, Fraction,
};
pub use concepts::{concept_stats, resolve_query, ConceptStats, GroupBy, GroupCount, ResolvedQuery};
pub use facts::{
    classify, fact_alternatives, Agreement, Alternative, FactAlternatives, FactKind, FactValue, Origin,
    PairAgreement, Support,
};
pub use storyteller::{
    climax_scores, participation_graph, person_count, storyteller_export, Actor, ClimaxGroup, ClimaxMode,
    ClimaxPoint, ClimaxSeries, EventNode, ParticipationGraph, ResidueEvent, StorytellerExport,
};
pub use text::{adjective_ratio, adjective_ratios, name_mentions, name_table, AdjectiveRatio, NameConfig, NameCount};
pub use timeline::{event_types, timeline, timeline_order, Timeline, TimelineEntry};

#[derive(Debug, thiserror::Error)]
pub enum AnalyticsError {
    #[error("unknown person {0}")]
    UnknownPerson(String),
    #[error("unknown fact kind {0:?}; expected birth-date, birth-place, death-date or death-place")]
    UnknownFactKind(String),
    #[error("unknown grouping {0:?}; expected source, birth-century or gender")]
    UnknownGroupBy(String),
    #[error("no annotated documents for source {0:?}")]
    NoDocuments(String),
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
}
