use serde::{Deserialize, Serialize};

use crate::annotate::{Polarity, Pos};
use crate::corpus::{Gender, PartialDate};
use crate::graph::{ProvenanceRecord, Statement};

/// Exact character span of an instance in the source text, end exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mention {
    pub doc_id: String,
    pub begin: usize,
    pub end: usize,
    pub lemma: String,
    pub pos: Pos,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarity: Option<Polarity>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParticipantKind {
    Person,
    Location,
    Organization,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipantInstance {
    pub iri: String,
    pub kind: ParticipantKind,
    pub label: String,
    pub term_ids: Vec<String>,
    /// Grammatical gender when the instance is a single pronoun.
    pub pronoun_gender: Option<Gender>,
    pub same_as: Option<String>,
    pub mentions: Vec<Mention>,
}

impl ParticipantInstance {
    pub fn is_pronoun(&self) -> bool {
        self.pronoun_gender.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Arg0,
    Arg1,
    Arg2,
    HasTime,
    HasPlace,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoleTarget {
    Instance(String),
    Date(PartialDate),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventRole {
    pub relation: Relation,
    pub target: RoleTarget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventInstance {
    pub iri: String,
    pub concept_id: Option<String>,
    pub frame_id: Option<String>,
    pub predicate_ids: Vec<String>,
    pub roles: Vec<EventRole>,
    pub mentions: Vec<Mention>,
    /// Where the `hasTime` value was read, when there is one.
    pub time_mention: Option<Mention>,
}

impl EventInstance {
    pub fn time(&self) -> Option<PartialDate> {
        self.roles.iter().find_map(|r| match (&r.relation, &r.target) {
            (Relation::HasTime, RoleTarget::Date(d)) => Some(*d),
            _ => None,
        })
    }

    pub fn targets(&self, relation: Relation) -> impl Iterator<Item = &RoleTarget> {
        self.roles.iter().filter(move |r| r.relation == relation).map(|r| &r.target)
    }
}

/// The new NLP description produced for one entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpretationResult {
    pub new_description_iri: String,
    pub graph: String,
    /// Statements derived from the text: links, events, relations, identities, grounding.
    pub statements: Vec<Statement>,
    /// Typing and aggregation statements of the description node itself.
    pub description_statements: Vec<Statement>,
    pub provenance_statements: Vec<Statement>,
    pub events: Vec<EventInstance>,
    pub participants: Vec<ParticipantInstance>,
    pub provenance: ProvenanceRecord,
}

impl InterpretationResult {
    pub fn all_statements(&self) -> Vec<Statement> {
        let mut v = self.description_statements.clone();
        v.extend(self.statements.iter().cloned());
        v.extend(self.provenance_statements.iter().cloned());
        v
    }
}
