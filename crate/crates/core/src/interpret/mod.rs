//! From annotation layers to an event-centric NLP description of an entry.

mod document;
mod model;
mod steps;

pub use document::{default_agents, interpret_document, InterpretOptions, INTERPRET_STEP};
pub use model::{
    EventInstance, EventRole, InterpretationResult, Mention, ParticipantInstance, ParticipantKind, Relation, RoleTarget,
};
pub use steps::{convert_role, touches_timex, ground_mentions, name_matches, Biographee, Interpreter, RoleConversion};

#[derive(Debug, thiserror::Error)]
pub enum InterpretError {
    #[error(transparent)]
    Integrity(#[from] crate::annotate::IntegrityError),
    #[error("{0}")]
    Mismatch(String),
    #[error("instance {0} has no mention to ground it")]
    Ungrounded(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}
