use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::statement::parse_error;
use super::vocab::is_registered;
use super::{GraphError, Statement, Term};

type Key = [u32; 4];

/// Named-graph statement store with set semantics.
///
/// Terms are interned; three permutation indexes (SPOG, POSG, OSPG) plus a
/// graph index answer any combination of bound positions with a range scan.
#[derive(Debug, Clone, Default)]
pub struct Store {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
    spog: BTreeSet<Key>,
    posg: BTreeSet<Key>,
    ospg: BTreeSet<Key>,
    gspo: BTreeSet<Key>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Delta {
    pub inserted: usize,
}

fn range(prefix: &[u32]) -> RangeInclusive<Key> {
    let mut lo = [0; 4];
    let mut hi = [u32::MAX; 4];
    for (i, v) in prefix.iter().enumerate() {
        lo[i] = *v;
        hi[i] = *v;
    }
    lo..=hi
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.spog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spog.is_empty()
    }

    fn intern(&mut self, t: Term) -> u32 {
        if let Some(&id) = self.ids.get(&t) {
            return id;
        }
        let id = self.terms.len() as u32;
        self.terms.push(t.clone());
        self.ids.insert(t, id);
        id
    }

    fn lookup(&self, t: &Term) -> Option<u32> {
        self.ids.get(t).copied()
    }

    fn term(&self, id: u32) -> &Term {
        &self.terms[id as usize]
    }

    /// Insert a batch atomically: either every statement is valid and the
    /// new ones are added, or nothing changes.
    pub fn assert(&mut self, statements: impl IntoIterator<Item = Statement>) -> Result<Delta, GraphError> {
        let batch: Vec<Statement> = statements.into_iter().collect();
        let offending: Vec<String> =
            batch.iter().filter(|s| !is_registered(&s.predicate)).map(|s| s.quad_line()).collect();
        if !offending.is_empty() {
            return Err(GraphError::Unregistered(offending));
        }
        let mut inserted = 0;
        for st in batch {
            let s = self.intern(Term::Iri(st.subject));
            let p = self.intern(Term::Iri(st.predicate));
            let o = self.intern(st.object);
            let g = self.intern(Term::Iri(st.graph));
            if self.spog.insert([s, p, o, g]) {
                self.posg.insert([p, o, s, g]);
                self.ospg.insert([o, s, p, g]);
                self.gspo.insert([g, s, p, o]);
                inserted += 1;
            }
        }
        Ok(Delta { inserted })
    }

    pub fn contains(&self, st: &Statement) -> bool {
        let ids = (
            self.lookup(&Term::Iri(st.subject.clone())),
            self.lookup(&Term::Iri(st.predicate.clone())),
            self.lookup(&st.object),
            self.lookup(&Term::Iri(st.graph.clone())),
        );
        match ids {
            (Some(s), Some(p), Some(o), Some(g)) => self.spog.contains(&[s, p, o, g]),
            _ => false,
        }
    }

    /// Remove every statement of one named graph; returns how many went.
    pub fn remove_graph(&mut self, graph: &str) -> usize {
        let Some(g) = self.lookup(&Term::iri(graph)) else { return 0 };
        let keys: Vec<Key> = self.gspo.range(range(&[g])).copied().collect();
        for [g, s, p, o] in &keys {
            self.spog.remove(&[*s, *p, *o, *g]);
            self.posg.remove(&[*p, *o, *s, *g]);
            self.ospg.remove(&[*o, *s, *p, *g]);
            self.gspo.remove(&[*g, *s, *p, *o]);
        }
        keys.len()
    }

    fn build(&self, [s, p, o, g]: Key) -> Statement {
        Statement {
            subject: self.term(s).lexical(),
            predicate: self.term(p).lexical(),
            object: self.term(o).clone(),
            graph: self.term(g).lexical(),
        }
    }

    /// Raw id-level lookup; `None` positions are wildcards.
    fn scan(&self, s: Option<u32>, p: Option<u32>, o: Option<u32>, g: Option<u32>) -> Vec<Key> {
        let keep = |k: &Key| {
            s.is_none_or(|v| k[0] == v) && p.is_none_or(|v| k[1] == v) && o.is_none_or(|v| k[2] == v) && g.is_none_or(|v| k[3] == v)
        };
        let candidates: Vec<Key> = match (s, p, o, g) {
            (Some(s), Some(p), Some(o), _) => self.spog.range(range(&[s, p, o])).copied().collect(),
            (Some(s), Some(p), None, _) => self.spog.range(range(&[s, p])).copied().collect(),
            (Some(s), None, Some(o), _) => {
                self.ospg.range(range(&[o, s])).map(|[o, s, p, g]| [*s, *p, *o, *g]).collect()
            }
            (Some(s), None, None, _) => self.spog.range(range(&[s])).copied().collect(),
            (None, Some(p), Some(o), _) => {
                self.posg.range(range(&[p, o])).map(|[p, o, s, g]| [*s, *p, *o, *g]).collect()
            }
            (None, Some(p), None, _) => self.posg.range(range(&[p])).map(|[p, o, s, g]| [*s, *p, *o, *g]).collect(),
            (None, None, Some(o), _) => self.ospg.range(range(&[o])).map(|[o, s, p, g]| [*s, *p, *o, *g]).collect(),
            (None, None, None, Some(g)) => {
                self.gspo.range(range(&[g])).map(|[g, s, p, o]| [*s, *p, *o, *g]).collect()
            }
            (None, None, None, None) => self.spog.iter().copied().collect(),
        };
        candidates.into_iter().filter(keep).collect()
    }

    /// Statements matching the bound positions.
    pub fn find(&self, s: Option<&str>, p: Option<&str>, o: Option<&Term>, g: Option<&str>) -> Vec<Statement> {
        let resolve_iri = |x: Option<&str>| match x {
            None => Ok(None),
            Some(v) => self.lookup(&Term::iri(v)).map(Some).ok_or(()),
        };
        let ids = (|| -> Result<_, ()> {
            let o = match o {
                None => None,
                Some(t) => Some(self.lookup(t).ok_or(())?),
            };
            Ok((resolve_iri(s)?, resolve_iri(p)?, o, resolve_iri(g)?))
        })();
        match ids {
            Ok((s, p, o, g)) => self.scan(s, p, o, g).into_iter().map(|k| self.build(k)).collect(),
            Err(()) => Vec::new(),
        }
    }

    /// Objects of `(s, p, ?o)` in any graph, sorted and deduplicated.
    pub fn objects(&self, s: &str, p: &str) -> Vec<Term> {
        let v: BTreeSet<Term> = self.find(Some(s), Some(p), None, None).into_iter().map(|st| st.object).collect();
        v.into_iter().collect()
    }

    pub fn object(&self, s: &str, p: &str) -> Option<Term> {
        self.objects(s, p).into_iter().next()
    }

    /// Subjects of `(?s, p, o)` in any graph, sorted and deduplicated.
    pub fn subjects(&self, p: &str, o: &Term) -> Vec<String> {
        let v: BTreeSet<String> = self.find(None, Some(p), Some(o), None).into_iter().map(|st| st.subject).collect();
        v.into_iter().collect()
    }

    pub fn has_type(&self, s: &str, class: &str) -> bool {
        !self.find(Some(s), Some(super::vocab::rdf::TYPE), Some(&Term::iri(class)), None).is_empty()
    }

    pub fn statements(&self) -> Vec<Statement> {
        self.spog.iter().map(|k| self.build(*k)).collect()
    }

    pub fn graph(&self, graph: &str) -> Vec<Statement> {
        self.find(None, None, None, Some(graph))
    }

    pub fn graphs(&self) -> Vec<String> {
        let set: BTreeSet<String> = self.gspo.iter().map(|k| self.term(k[0]).lexical()).collect();
        set.into_iter().collect()
    }

    pub(crate) fn id_of(&self, t: &Term) -> Option<u32> {
        self.lookup(t)
    }

    pub(crate) fn term_of(&self, id: u32) -> &Term {
        self.term(id)
    }

    pub(crate) fn scan_ids(&self, s: Option<u32>, p: Option<u32>, o: Option<u32>, g: Option<u32>) -> Vec<Key> {
        self.scan(s, p, o, g)
    }

    pub(crate) fn all_keys(&self) -> impl Iterator<Item = &Key> {
        self.spog.iter()
    }

    pub fn from_statements(statements: impl IntoIterator<Item = Statement>) -> Result<Store, GraphError> {
        let mut store = Store::new();
        store.assert(statements)?;
        Ok(store)
    }
}

/// Serialization formats for a whole store.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SerialFormat {
    TriplesLines,
    QuadsLines,
    Json,
}

impl std::str::FromStr for SerialFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "triples-lines" | "triples" | "nt" => Ok(SerialFormat::TriplesLines),
            "quads-lines" | "quads" | "nq" => Ok(SerialFormat::QuadsLines),
            "json" => Ok(SerialFormat::Json),
            other => Err(GraphError::UnknownFormat(other.to_string())),
        }
    }
}

/// Graph assigned to statements parsed from triples-lines input.
pub const DEFAULT_GRAPH: &str = "urn:bgf:graph:default";

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    graph: String,
    statements: Vec<JsonStatement>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonStatement {
    s: String,
    p: String,
    o: Term,
}

/// Canonical serialization: equal statement sets give equal bytes.
pub fn serialize(store: &Store, format: SerialFormat) -> Vec<u8> {
    serialize_statements(&store.statements(), format)
}

pub fn serialize_statements(statements: &[Statement], format: SerialFormat) -> Vec<u8> {
    match format {
        SerialFormat::TriplesLines | SerialFormat::QuadsLines => {
            let lines: BTreeSet<String> = statements
                .iter()
                .map(|s| if format == SerialFormat::QuadsLines { s.quad_line() } else { s.triple_line() })
                .collect();
            let mut out = String::new();
            for l in lines {
                out.push_str(&l);
                out.push('\n');
            }
            out.into_bytes()
        }
        SerialFormat::Json => {
            let mut groups: BTreeMap<&str, BTreeSet<(String, String, &Term)>> = BTreeMap::new();
            for s in statements {
                groups.entry(&s.graph).or_default().insert((s.subject.clone(), s.predicate.clone(), &s.object));
            }
            let graphs: Vec<JsonGraph> = groups
                .into_iter()
                .map(|(g, sts)| JsonGraph {
                    graph: g.to_string(),
                    statements: sts.into_iter().map(|(s, p, o)| JsonStatement { s, p, o: o.clone() }).collect(),
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&graphs).expect("statements serialize");
            out.push(b'\n');
            out
        }
    }
}

pub fn parse_statements(bytes: &[u8], format: SerialFormat) -> Result<Vec<Statement>, GraphError> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_error(1, format!("invalid utf-8: {e}")))?;
    match format {
        SerialFormat::TriplesLines | SerialFormat::QuadsLines => {
            let default = (format == SerialFormat::TriplesLines).then_some(DEFAULT_GRAPH);
            let mut out = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                out.push(Statement::parse_line(trimmed, default).map_err(|m| parse_error(i + 1, m))?);
            }
            Ok(out)
        }
        SerialFormat::Json => {
            let graphs: Vec<JsonGraph> = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
            Ok(graphs
                .into_iter()
                .flat_map(|g| {
                    let graph = g.graph;
                    g.statements.into_iter().map(move |s| Statement { subject: s.s, predicate: s.p, object: s.o, graph: graph.clone() })
                })
                .collect())
        }
    }
}

pub fn parse_store(bytes: &[u8], format: SerialFormat) -> Result<Store, GraphError> {
    Store::from_statements(parse_statements(bytes, format)?)
}

/// Many readers see immutable snapshots while a single writer swaps in the
/// next version.
#[derive(Debug, Default)]
pub struct SharedStore {
    current: RwLock<Arc<Store>>,
}

impl SharedStore {
    pub fn new(store: Store) -> Self {
        SharedStore { current: RwLock::new(Arc::new(store)) }
    }

    pub fn snapshot(&self) -> Arc<Store> {
        self.current.read().expect("store lock").clone()
    }

    /// Atomic batch insert; readers holding older snapshots are unaffected.
    pub fn assert(&self, statements: impl IntoIterator<Item = Statement>) -> Result<Delta, GraphError> {
        let mut guard = self.current.write().expect("store lock");
        let mut next = (**guard).clone();
        let delta = next.assert(statements)?;
        *guard = Arc::new(next);
        Ok(delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vocab::{bgn, rdf, sem};

    fn st(s: &str, p: &str, o: Term) -> Statement {
        Statement::new(format!("https://x.org/{s}"), p, o, "https://x.org/g")
    }

    #[test]
    fn reasserting_is_a_no_op() {
        let mut store = Store::new();
        let a = st("e", rdf::TYPE, Term::iri(sem::EVENT));
        assert_eq!(store.assert([a.clone()]).unwrap().inserted, 1);
        assert_eq!(store.assert([a]).unwrap().inserted, 0);
    }

    #[test]
    fn unregistered_predicate_rejects_whole_batch() {
        let mut store = Store::new();
        let good = st("e", rdf::TYPE, Term::iri(sem::EVENT));
        let bad = st("e", &format!("{}unknownPredicate", bgn::NS), Term::int(1));
        match store.assert([good, bad]) {
            Err(GraphError::Unregistered(lines)) => assert_eq!(lines.len(), 1),
            other => panic!("{other:?}"),
        }
        assert!(store.is_empty());
    }

    #[test]
    fn empty_store_serializes_to_nothing() {
        assert!(serialize(&Store::new(), SerialFormat::QuadsLines).is_empty());
        assert!(serialize(&Store::new(), SerialFormat::TriplesLines).is_empty());
    }

    #[test]
    fn corrupted_line_reports_its_number() {
        let text = format!("{}\n<a> <b\n", st("e", rdf::TYPE, Term::iri(sem::EVENT)).quad_line());
        match parse_statements(text.as_bytes(), SerialFormat::QuadsLines) {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn snapshots_are_isolated_from_later_writes() {
        let shared = SharedStore::default();
        let before = shared.snapshot();
        shared.assert([st("e", rdf::TYPE, Term::iri(sem::EVENT))]).unwrap();
        assert!(before.is_empty());
        assert_eq!(shared.snapshot().len(), 1);
    }

    #[test]
    fn remove_graph_drops_only_that_graph() {
        let mut store = Store::new();
        let a = st("e", rdf::TYPE, Term::iri(sem::EVENT));
        let mut b = a.clone();
        b.graph = "https://x.org/h".into();
        store.assert([a, b.clone()]).unwrap();
        assert_eq!(store.remove_graph("https://x.org/g"), 1);
        assert_eq!(store.statements(), vec![b]);
    }
}
