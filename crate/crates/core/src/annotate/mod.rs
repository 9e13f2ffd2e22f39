//! Rule and lexicon based analyzers producing stand-off annotation layers.

mod coref;
mod entities;
mod layers;
mod lexicon;
mod opinions;
mod pipeline;
mod predicates;
mod tags;
mod terms;
mod timex;
mod tokenize;

pub use coref::{corefer, predicate_time, resolve_event_coref};
pub use entities::tag_entities;
pub use layers::{
    ConceptRef, DomainTag, Entity, EntityClass, IntegrityError, LadIndex, Layer, LayeredDocument, Opinion, Polarity,
    Pos, Predicate, Role, RoleLabel, TagKind, Term, TermTag, Timex, Token, LAD_SCHEMA,
};
pub use lexicon::{
    ConceptSense, FrameEntry, GazetteerEntry, LemmaEntry, LexiconError, LexiconKind, Lexicons, SuffixRule,
};
pub use opinions::tag_opinions;
pub use pipeline::{run_pipeline, Pipeline, PipelineConfig, StepKind, StepRun, COMMIT_REF, TOOL_VERSION};
pub use predicates::tag_predicates;
pub use tags::{tag_concepts, tag_terms};
pub use terms::{analyze, lemmatize_and_tag};
pub use timex::{render_timex, tag_timex};
pub use tokenize::tokenize;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("step {step} needs layer {missing}, which no earlier step produces")]
    Dependency { step: String, missing: Layer },
    #[error("step {0} listed twice")]
    DuplicateStep(String),
    #[error("unknown pipeline step {0:?}")]
    UnknownStep(String),
    #[error("invalid pipeline config: {0}")]
    Config(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("step {step} wrote layer {layer} without declaring it")]
    UndeclaredWrite { step: String, layer: Layer },
    #[error("after step {step}: {source}")]
    Integrity { step: String, source: IntegrityError },
}
