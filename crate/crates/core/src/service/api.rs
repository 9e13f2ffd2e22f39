use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use percent_encoding::percent_decode_str;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::search::{SearchIndex, SearchRequest, SearchResponse};
use super::sessions::{Operation, Session, SessionStore};
use super::views::{fact_view, person_bundle, provenance_chain, FactView, PersonBundle, ProvenanceChain};
use super::{render_json, ApiError};
use crate::analytics::{
    adjective_ratio, adjective_ratios, climax_scores, concept_stats, name_mentions, participation_graph,
    storyteller_export, timeline, AdjectiveRatio, ClimaxMode, ClimaxSeries, ConceptStats, GroupBy, NameConfig,
    NameCount, ParticipationGraph, StorytellerExport, Timeline,
};
use crate::corpus::BiographyEntry;
use crate::dataset::Dataset;
use crate::graph::{conformance, serialize_statements, ConformanceReport, SerialFormat, SharedStore, Statement, Store};

pub const API_PREFIX: &str = "/api/v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiResponse {
    pub status: u16,
    pub body: String,
}

/// Raw data view of one person: pretty entry JSON plus quads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawView {
    pub person_id: String,
    pub entries: Vec<BiographyEntry>,
    pub quads: String,
}

/// State of a session together with the search result replayed at its pointer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub session: Session,
    /// Step ids from the root to the pointer.
    pub path: Vec<String>,
    pub request: SearchRequest,
    pub result: SearchResponse,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchBody {
    from: String,
    #[serde(default)]
    operation: Option<Operation>,
}

/// Read-only query surface over a dataset, plus the session log.
pub struct Api {
    dataset: Dataset,
    store: SharedStore,
    index: SearchIndex,
    sessions: Mutex<SessionStore>,
    names: NameConfig,
}

impl Api {
    pub fn new(mut dataset: Dataset, sessions: SessionStore) -> Self {
        let index = SearchIndex::build(&dataset);
        let store = SharedStore::new(std::mem::take(&mut dataset.store));
        Api { dataset, store, index, sessions: Mutex::new(sessions), names: NameConfig::default() }
    }

    /// Entries, persons and documents. The graph itself moved into the shared
    /// store and is read through [`Api::snapshot`].
    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn snapshot(&self) -> Arc<Store> {
        self.store.snapshot()
    }

    /// Person ids and full iris are both accepted.
    fn person_iri(&self, p: &str) -> String {
        if p.contains("://") || p.starts_with("urn:") {
            p.to_string()
        } else {
            self.dataset.iris.person(p)
        }
    }

    pub fn search(&self, req: &SearchRequest) -> Result<SearchResponse, ApiError> {
        self.index.search(req)
    }

    pub fn person(&self, id: &str) -> Result<PersonBundle, ApiError> {
        person_bundle(&self.dataset, &self.snapshot(), id)
    }

    pub fn timeline(&self, id: &str) -> Result<Timeline, ApiError> {
        timeline(&self.snapshot(), &self.person_iri(id), &self.dataset.iris).map_err(ApiError::from_analytics)
    }

    pub fn fact(&self, id: &str, kind: &str) -> Result<FactView, ApiError> {
        fact_view(&self.dataset, &self.snapshot(), id, kind)
    }

    pub fn participation(&self, persons: &[String], types: &[String]) -> Result<ParticipationGraph, ApiError> {
        let persons: Vec<String> = persons.iter().map(|p| self.person_iri(p)).collect();
        participation_graph(&self.snapshot(), &persons, types, &self.dataset.iris).map_err(ApiError::from_analytics)
    }

    pub fn climax(&self, mode: ClimaxMode, types: &[String]) -> Result<ClimaxSeries, ApiError> {
        if types.iter().any(|t| t.trim().is_empty()) {
            return Err(ApiError::bad_request("empty event type in filter"));
        }
        Ok(climax_scores(&self.snapshot(), mode, &self.dataset.iris).retain_types(types))
    }

    /// The entries of a person and the quads of every graph they appear in.
    pub fn raw(&self, id: &str) -> Result<RawView, ApiError> {
        let bundle = self.person(id)?;
        let record = self.dataset.person(&bundle.person_id).ok_or_else(|| ApiError::not_found(format!("unknown person {id}")))?;
        let entries: Vec<BiographyEntry> =
            record.entry_ids.iter().filter_map(|e| self.dataset.entry(e)).cloned().collect();
        let iris = &self.dataset.iris;
        let mut graphs = vec![iris.person_graph(&record.person_id)];
        for e in &record.entry_ids {
            graphs.push(iris.metadata_graph(e));
            graphs.push(iris.nlp_graph(e));
        }
        let store = self.snapshot();
        let statements: Vec<Statement> =
            store.statements().into_iter().filter(|s| graphs.contains(&s.graph)).collect();
        let quads = String::from_utf8(serialize_statements(&statements, SerialFormat::QuadsLines))
            .map_err(|e| ApiError::internal(e.to_string()))?;
        Ok(RawView { person_id: record.person_id.clone(), entries, quads })
    }

    pub fn storyteller(
        &self,
        persons: &[String],
        types: &[String],
        mode: ClimaxMode,
    ) -> Result<StorytellerExport, ApiError> {
        let persons: Vec<String> = persons.iter().map(|p| self.person_iri(p)).collect();
        storyteller_export(&self.snapshot(), &persons, types, mode, &self.dataset.iris)
            .map_err(ApiError::from_analytics)
    }

    pub fn provenance(&self, entity: &str) -> Result<ProvenanceChain, ApiError> {
        provenance_chain(&self.snapshot(), entity)
    }

    pub fn concept_stats(&self, q: &str, group_by: &str) -> Result<ConceptStats, ApiError> {
        let g: GroupBy = group_by.parse().map_err(|e: crate::analytics::AnalyticsError| ApiError::bad_request(e.to_string()))?;
        Ok(concept_stats(&self.snapshot(), q, g, &self.dataset.lexicons, &self.dataset.iris))
    }

    pub fn adjective_ratio(&self, source: Option<&str>) -> Result<Vec<AdjectiveRatio>, ApiError> {
        let docs = self.dataset.documents();
        match source {
            Some(s) => Ok(vec![adjective_ratio(s, docs).map_err(ApiError::from_analytics)?]),
            None => Ok(adjective_ratios(docs)),
        }
    }

    /// Store-wide audit of provenance chains and mention grounding.
    pub fn conformance(&self) -> ConformanceReport {
        let texts = self.dataset.entries.iter().map(|e| (e.entry_id.clone(), e.text.clone())).collect();
        conformance(&self.store.snapshot(), &texts)
    }

    pub fn names(&self, source: Option<&str>) -> Vec<NameCount> {
        let texts = self
            .dataset
            .entries
            .iter()
            .filter(|e| source.is_none_or(|s| e.source_id == s))
            .map(|e| e.text.as_str());
        name_mentions(texts, &self.names)
    }

    pub fn session_view(&self, session: &Session) -> Result<SessionView, ApiError> {
        self.session_view_at(session, &session.current)
    }

    /// Replay the stored path up to `step_id` without moving the pointer.
    pub fn session_view_at(&self, session: &Session, step_id: &str) -> Result<SessionView, ApiError> {
        let (Some(request), Some(path)) = (session.request_at(step_id), session.path_to(step_id)) else {
            return Err(ApiError::not_found(format!("session {} has no step {step_id:?}", session.session_id)));
        };
        Ok(SessionView {
            path: path.iter().map(|s| s.step_id.clone()).collect(),
            result: self.search(&request)?,
            request,
            session: session.clone(),
        })
    }

    fn with_sessions<T>(&self, f: impl FnOnce(&mut SessionStore) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let mut guard = self.sessions.lock().map_err(|_| ApiError::internal("session store poisoned"))?;
        f(&mut guard)
    }

    pub fn create_session(&self, initial: SearchRequest) -> Result<SessionView, ApiError> {
        let s = self.with_sessions(|s| s.create(initial).cloned())?;
        self.session_view(&s)
    }

    pub fn session_step(&self, id: &str, op: Operation) -> Result<SessionView, ApiError> {
        let s = self.with_sessions(|s| s.step(id, op).cloned())?;
        self.session_view(&s)
    }

    pub fn session_branch(&self, id: &str, from: &str, op: Option<Operation>) -> Result<SessionView, ApiError> {
        let s = self.with_sessions(|s| s.branch(id, from, op).cloned())?;
        self.session_view(&s)
    }

    pub fn session(&self, id: &str) -> Result<SessionView, ApiError> {
        let s = self.with_sessions(|s| s.get(id).cloned())?;
        self.session_view(&s)
    }

    pub fn session_at(&self, id: &str, step_id: &str) -> Result<SessionView, ApiError> {
        let s = self.with_sessions(|s| s.get(id).cloned())?;
        self.session_view_at(&s, step_id)
    }

    /// Route one request. `path` includes the `/api/v1` prefix; `query` is
    /// the raw query string without `?`.
    pub fn dispatch(&self, method: &str, path: &str, query: &str, body: &[u8]) -> ApiResponse {
        match self.route(method, path, query, body) {
            Ok(v) => ApiResponse { status: 200, body: render_json(&v) },
            Err(e) => ApiResponse { status: e.status, body: render_json(&e.envelope()) },
        }
    }

    fn route(&self, method: &str, path: &str, query: &str, body: &[u8]) -> Result<Value, ApiError> {
        let rest = path
            .strip_prefix(API_PREFIX)
            .ok_or_else(|| ApiError::not_found(format!("no route {path}; endpoints live under {API_PREFIX}")))?;
        let raw: Vec<&str> = rest.trim_matches('/').split('/').filter(|s| !s.is_empty()).collect();
        let segs: Vec<String> = raw.iter().map(|s| decode(s)).collect();
        let segs: Vec<&str> = segs.iter().map(String::as_str).collect();
        let params = parse_query(query);
        let param = |k: &str| params.get(k).and_then(|v| v.first()).map(String::as_str);
        let list = |k: &str| -> Vec<String> {
            params
                .get(k)
                .map(|v| v.iter().flat_map(|x| x.split(',')).filter(|x| !x.is_empty()).map(str::to_string).collect())
                .unwrap_or_default()
        };
        let mode = || -> Result<ClimaxMode, ApiError> {
            match param("mode") {
                None | Some("distinct-participants") => Ok(ClimaxMode::DistinctParticipants),
                Some("event-count") => Ok(ClimaxMode::EventCount),
                Some(m) => Err(ApiError::bad_request(format!("unknown climax mode {m:?}"))),
            }
        };
        match (method, segs.as_slice()) {
            ("GET", ["health"]) => Ok(serde_json::json!({ "status": "ok" })),
            ("POST", ["search"]) => to_value(self.search(&json_body(body)?)?),
            ("GET", ["search"]) => {
                let mut req = SearchRequest::query(param("q").unwrap_or(""));
                for f in super::search::FACET_FIELDS {
                    let v = list(f);
                    if !v.is_empty() {
                        req.facets.insert(f.to_string(), v);
                    }
                }
                if let Some(p) = param("page") {
                    req.page = p.parse().map_err(|_| ApiError::bad_request("page must be a number"))?;
                }
                if let Some(p) = param("page_size") {
                    req.page_size = p.parse().map_err(|_| ApiError::bad_request("page_size must be a number"))?;
                }
                to_value(self.search(&req)?)
            }
            ("GET", ["person", id]) => to_value(self.person(id)?),
            ("GET", ["person", id, "raw"]) => to_value(self.raw(id)?),
            ("GET", ["person", id, "timeline"]) => {
                self.person(id)?;
                to_value(self.timeline(id)?)
            }
            ("GET", ["person", id, "fact", kind]) => {
                self.person(id)?;
                to_value(self.fact(id, kind)?)
            }
            ("POST", ["session"]) => {
                let req = if body.iter().all(u8::is_ascii_whitespace) { SearchRequest::default() } else { json_body(body)? };
                to_value(self.create_session(req)?)
            }
            ("GET", ["session", id]) => to_value(self.session(id)?),
            ("GET", ["session", id, "step", step]) => to_value(self.session_at(id, step)?),
            ("POST", ["session", id, "step"]) => to_value(self.session_step(id, json_body(body)?)?),
            ("POST", ["session", id, "branch"]) => {
                let b: BranchBody = json_body(body)?;
                to_value(self.session_branch(id, &b.from, b.operation)?)
            }
            ("GET", ["viz", "participation"]) => to_value(self.participation(&list("person"), &list("type"))?),
            ("GET", ["viz", "climax"]) => to_value(self.climax(mode()?, &list("type"))?),
            ("GET", ["viz", "storyteller"]) => to_value(self.storyteller(&list("person"), &list("type"), mode()?)?),
            ("GET", ["provenance", "conformance"]) => to_value(self.conformance()),
            ("GET", ["provenance", _, ..]) => {
                // The entity iri may arrive encoded as one segment or raw with slashes.
                let tail = rest.trim_start_matches('/').trim_start_matches("provenance/");
                to_value(self.provenance(&decode(tail))?)
            }
            ("GET", ["provenance"]) => match param("iri") {
                Some(iri) => to_value(self.provenance(iri)?),
                None => Err(ApiError::bad_request("missing entity iri")),
            },
            ("GET", ["stats", "concept"]) => {
                let q = param("q").ok_or_else(|| ApiError::bad_request("missing q"))?;
                to_value(self.concept_stats(q, param("group_by").unwrap_or("source"))?)
            }
            ("GET", ["stats", "adjective-ratio"]) => to_value(self.adjective_ratio(param("source"))?),
            ("GET", ["stats", "names"]) => to_value(self.names(param("source"))),
            (_, segs) if known_route(segs) => Err(ApiError::method_not_allowed(format!("{method} not allowed on {path}"))),
            _ => Err(ApiError::not_found(format!("no route {method} {path}"))),
        }
    }
}

fn known_route(segs: &[&str]) -> bool {
    matches!(
        segs,
        ["health"]
            | ["search"]
            | ["person", _]
            | ["person", _, "timeline" | "raw"]
            | ["person", _, "fact", _]
            | ["session"]
            | ["session", _]
            | ["session", _, "step" | "branch"]
            | ["session", _, "step", _]
            | ["viz", "participation" | "climax" | "storyteller"]
            | ["provenance", ..]
            | ["stats", "concept" | "adjective-ratio" | "names"]
    )
}

fn decode(s: &str) -> String {
    percent_decode_str(s).decode_utf8_lossy().into_owned()
}

/// `application/x-www-form-urlencoded` pairs; repeated keys accumulate.
pub fn parse_query(query: &str) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for pair in query.split('&').filter(|p| !p.is_empty()) {
        let (k, v) = pair.split_once('=').unwrap_or((pair, ""));
        out.entry(decode(&k.replace('+', " "))).or_default().push(decode(&v.replace('+', " ")));
    }
    out
}

fn json_body<T: serde::de::DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

fn to_value<T: Serialize>(v: T) -> Result<Value, ApiError> {
    serde_json::to_value(v).map_err(|e| ApiError::internal(e.to_string()))
}
