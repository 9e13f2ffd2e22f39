use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::search::SearchRequest;
use super::ApiError;
use crate::clock::Clock;

/// Changes applied to the request of the parent step.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Refinement {
    #[serde(default)]
    pub q: Option<String>,
    #[serde(default)]
    pub add: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub remove: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub page: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Search(SearchRequest),
    Refine(Refinement),
}

impl Operation {
    /// Request reached by applying this operation to `base`.
    pub fn apply(&self, base: &SearchRequest) -> SearchRequest {
        match self {
            Operation::Search(r) => r.clone(),
            Operation::Refine(d) => {
                let mut r = base.clone();
                if let Some(q) = &d.q {
                    r.q = q.clone();
                }
                for (field, values) in &d.add {
                    let slot = r.facets.entry(field.clone()).or_default();
                    for v in values {
                        if !slot.contains(v) {
                            slot.push(v.clone());
                        }
                    }
                }
                for (field, values) in &d.remove {
                    if let Some(slot) = r.facets.get_mut(field) {
                        slot.retain(|v| !values.contains(v));
                        if slot.is_empty() {
                            r.facets.remove(field);
                        }
                    }
                }
                r.page = d.page.unwrap_or(if d.q.is_some() || !d.add.is_empty() || !d.remove.is_empty() {
                    1
                } else {
                    r.page
                });
                r
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionStep {
    pub step_id: String,
    pub parent_step_id: Option<String>,
    pub operation: Operation,
    pub created_at: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Session {
    pub session_id: String,
    pub steps: Vec<SessionStep>,
    pub current: String,
}

impl Session {
    pub fn step(&self, step_id: &str) -> Option<&SessionStep> {
        self.steps.iter().find(|s| s.step_id == step_id)
    }

    /// Steps from the root to `step_id`, root first.
    pub fn path_to(&self, step_id: &str) -> Option<Vec<&SessionStep>> {
        let mut path = Vec::new();
        let mut cur = self.step(step_id)?;
        loop {
            path.push(cur);
            match &cur.parent_step_id {
                Some(p) => cur = self.step(p)?,
                None => break,
            }
        }
        path.reverse();
        Some(path)
    }

    pub fn children(&self, step_id: &str) -> Vec<&SessionStep> {
        self.steps.iter().filter(|s| s.parent_step_id.as_deref() == Some(step_id)).collect()
    }

    pub fn leaves(&self) -> Vec<&SessionStep> {
        self.steps.iter().filter(|s| self.children(&s.step_id).is_empty()).collect()
    }

    /// Request in effect at a step, replayed from the root.
    pub fn request_at(&self, step_id: &str) -> Option<SearchRequest> {
        let path = self.path_to(step_id)?;
        Some(path.iter().fold(SearchRequest::default(), |r, s| s.operation.apply(&r)))
    }

    fn next_step_id(&self) -> String {
        format!("step{}", self.steps.len() + 1)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum LogRecord {
    Create { session_id: String, step: SessionStep },
    Append { session_id: String, step: SessionStep },
    Move { session_id: String, step_id: String },
}

/// Sessions kept in memory and mirrored to an append-only JSON-lines log.
#[derive(Debug)]
pub struct SessionStore {
    sessions: BTreeMap<String, Session>,
    log: Option<(PathBuf, File)>,
    clock: Clock,
}

impl SessionStore {
    pub fn in_memory(clock: Clock) -> Self {
        SessionStore { sessions: BTreeMap::new(), log: None, clock }
    }

    /// Open (or create) a log file and replay it.
    pub fn open(path: &Path, clock: Clock) -> Result<Self, ApiError> {
        let mut store = SessionStore::in_memory(clock);
        if path.exists() {
            let f = File::open(path).map_err(|e| ApiError::internal(format!("{}: {e}", path.display())))?;
            for (n, line) in BufReader::new(f).lines().enumerate() {
                let line = line.map_err(|e| ApiError::internal(format!("{}: {e}", path.display())))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: LogRecord = serde_json::from_str(&line)
                    .map_err(|e| ApiError::internal(format!("{}:{}: {e}", path.display(), n + 1)))?;
                store.apply(rec);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| ApiError::internal(format!("{}: {e}", path.display())))?;
        store.log = Some((path.to_path_buf(), file));
        Ok(store)
    }

    fn apply(&mut self, rec: LogRecord) {
        match rec {
            LogRecord::Create { session_id, step } => {
                let current = step.step_id.clone();
                self.sessions.insert(session_id.clone(), Session { session_id, steps: vec![step], current });
            }
            LogRecord::Append { session_id, step } => {
                if let Some(s) = self.sessions.get_mut(&session_id) {
                    s.current = step.step_id.clone();
                    s.steps.push(step);
                }
            }
            LogRecord::Move { session_id, step_id } => {
                if let Some(s) = self.sessions.get_mut(&session_id) {
                    s.current = step_id;
                }
            }
        }
    }

    fn record(&mut self, rec: LogRecord) -> Result<(), ApiError> {
        if let Some((path, file)) = &mut self.log {
            let line = serde_json::to_string(&rec).expect("log records serialize");
            writeln!(file, "{line}")
                .and_then(|_| file.flush())
                .map_err(|e| ApiError::internal(format!("{}: {e}", path.display())))?;
        }
        self.apply(rec);
        Ok(())
    }

    pub fn get(&self, session_id: &str) -> Result<&Session, ApiError> {
        self.sessions
            .get(session_id)
            .ok_or_else(|| ApiError::not_found(format!("unknown session {session_id:?}")))
    }

    pub fn len(&self) -> usize {
        self.sessions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sessions.is_empty()
    }

    pub fn create(&mut self, initial: SearchRequest) -> Result<&Session, ApiError> {
        initial.validate()?;
        let session_id = format!("s{}", self.sessions.len() + 1);
        let step = SessionStep {
            step_id: "step1".to_string(),
            parent_step_id: None,
            operation: Operation::Search(initial),
            created_at: self.clock.now(),
        };
        self.record(LogRecord::Create { session_id: session_id.clone(), step })?;
        self.get(&session_id)
    }

    /// Append a step under the current pointer.
    pub fn step(&mut self, session_id: &str, op: Operation) -> Result<&Session, ApiError> {
        let s = self.get(session_id)?;
        let parent = s.current.clone();
        let step_id = s.next_step_id();
        let next = op.apply(&s.request_at(&parent).expect("pointer names a step"));
        next.validate()?;
        let step = SessionStep { step_id, parent_step_id: Some(parent), operation: op, created_at: self.clock.now() };
        self.record(LogRecord::Append { session_id: session_id.to_string(), step })?;
        self.get(session_id)
    }

    /// Move the pointer to an existing step, then append `op` there if given.
    pub fn branch(&mut self, session_id: &str, from: &str, op: Option<Operation>) -> Result<&Session, ApiError> {
        if self.get(session_id)?.step(from).is_none() {
            return Err(ApiError::not_found(format!("session {session_id} has no step {from:?}")));
        }
        self.record(LogRecord::Move { session_id: session_id.to_string(), step_id: from.to_string() })?;
        match op {
            Some(op) => self.step(session_id, op),
            None => self.get(session_id),
        }
    }
}
