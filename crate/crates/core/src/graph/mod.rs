//! Named-graph statement store, closed vocabulary, serialization, pattern
//! matching and provenance records.

mod conformance;
mod pattern;
mod provenance;
mod schema;
mod statement;
mod store;
pub mod vocab;

pub use conformance::{conformance, ChainGap, ConformanceReport, GroundingGap, CONTENT_CLASSES};
pub use pattern::{match_naive, match_pattern, parse_pattern_query, Bindings, PatternQuery, PatternTerm, TriplePattern};
pub use provenance::{
    build_provenance, read_provenance, sub_activity_iri, timestamp, unexecuted_steps, Activity, Agent, AgentRole, Plan,
    PlanStep, ProvenanceRecord,
};
pub use schema::{entry_statements, person_statements, Iris, BIRTH_FRAME, DEATH_FRAME, DEFAULT_BASE};
pub use statement::{Literal, PartialDateKey, Statement, Term};
pub use store::{
    parse_statements, parse_store, serialize, serialize_statements, Delta, SerialFormat, SharedStore, Store,
    DEFAULT_GRAPH,
};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("unregistered predicate in {} statement(s): {}", .0.len(), .0.join("; "))]
    Unregistered(Vec<String>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pattern line {line}: {message}")]
    Pattern { line: usize, message: String },
    #[error("unknown serialization format {0:?}")]
    UnknownFormat(String),
    #[error("step run cites plan step {0:?}, which the plan does not contain")]
    DanglingPlanStep(String),
    #[error("step run {0:?} executes out of plan order")]
    PlanOrder(String),
}
