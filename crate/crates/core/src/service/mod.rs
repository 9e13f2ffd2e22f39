//! JSON API over a dataset: search with facets, person bundles, timelines,
//! fact views, storyline data, provenance chains and navigation sessions.

mod api;
mod search;
mod server;
mod sessions;
mod views;

pub use api::{parse_query, Api, ApiResponse, RawView, SessionView, API_PREFIX};
pub use search::{
    EntryHit, PersonHit, SearchIndex, SearchRequest, SearchResponse, DEFAULT_PAGE_SIZE, FACET_FIELDS, MAX_PAGE_SIZE,
    METADATA_WEIGHT, NAME_WEIGHT, TEXT_WEIGHT,
};
pub use server::{router, serve, serve_on, ServerConfig, DEFAULT_ADDR};
pub use sessions::{Operation, Refinement, Session, SessionStep, SessionStore};
pub use views::{
    fact_view, fragment, person_bundle, provenance_chain, provenance_path, AlternativeView, DataView, DescriptionRef,
    FactView, Fragment, Highlight, PersonBundle, ProcessView, ProvenanceChain, SourceView, StepView,
};

use serde::Serialize;
use serde_json::Value;

use crate::analytics::AnalyticsError;

/// Pretty JSON with sorted object keys and a trailing newline; the one
/// rendering shared by the HTTP layer and the command line.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("payloads serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("payloads serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{code}: {message}")]
pub struct ApiError {
    pub status: u16,
    pub code: &'static str,
    pub message: String,
    pub details: Option<Value>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    code: &'a str,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    details: Option<&'a Value>,
}

impl ApiError {
    fn new(status: u16, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into(), details: None }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(400, "bad_request", message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(404, "not_found", message)
    }

    pub fn method_not_allowed(message: impl Into<String>) -> Self {
        Self::new(405, "method_not_allowed", message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(500, "internal", message)
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn from_analytics(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::UnknownPerson(_) => Self::not_found(e.to_string()),
            _ => Self::bad_request(e.to_string()),
        }
    }

    /// `{code, message, details?}`
    pub fn envelope(&self) -> Value {
        serde_json::to_value(Envelope { code: self.code, message: &self.message, details: self.details.as_ref() })
            .expect("envelope serializes")
    }
}
