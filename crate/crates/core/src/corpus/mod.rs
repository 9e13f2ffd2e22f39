//! Input document model: biography entries, person aggregation and corpus
//! composition statistics.

mod aggregate;
mod date;
mod entry;
mod format;
mod stats;

pub use aggregate::{aggregate_persons, declared_links, PersonRecord};
pub use date::{days_in_month, is_leap_year, PartialDate};
pub use entry::{normalize_text, slice_chars, BiographyEntry, FileDesc, Gender, LifeEvent, PersonMetadata};
pub use format::{parse_entries, serialize_entries, Format};
pub use stats::{century_label, corpus_stats, CorpusStats, Facet, StatCell, UNKNOWN};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("duplicate entry id {0:?}")]
    DuplicateEntry(String),
    #[error("invalid partial date {0:?}")]
    InvalidDate(String),
    #[error("invalid entry: {0}")]
    Invalid(String),
    #[error("unknown entry id {0:?}")]
    UnknownEntry(String),
    #[error("entry {entry:?} linked to both {first:?} and {second:?}")]
    ConflictingLink { entry: String, first: String, second: String },
    #[error("unknown facet {0:?}")]
    UnknownFacet(String),
}
