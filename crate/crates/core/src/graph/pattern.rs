use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::statement::parse_term;
use super::vocab::expand;
use super::{GraphError, Store, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Var(String),
    Const(Term),
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(name.trim_start_matches('?').to_string())
    }

    pub fn iri(iri: &str) -> Self {
        PatternTerm::Const(Term::iri(iri))
    }
}

/// One conjunct of a basic graph pattern; `graph` restricts or binds the
/// named graph and matches any graph when `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub s: PatternTerm,
    pub p: PatternTerm,
    pub o: PatternTerm,
    pub graph: Option<PatternTerm>,
}

impl TriplePattern {
    pub fn new(s: PatternTerm, p: PatternTerm, o: PatternTerm) -> Self {
        TriplePattern { s, p, o, graph: None }
    }

    fn positions(&self) -> [Option<&PatternTerm>; 4] {
        [Some(&self.s), Some(&self.p), Some(&self.o), self.graph.as_ref()]
    }
}

/// Variable bindings, one row per distinct solution, rows sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bindings {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl Bindings {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Vec<&Term> {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.rows.iter().map(|r| &r[i]).collect(),
            None => Vec::new(),
        }
    }

    pub fn get<'a>(&'a self, row: &'a [Term], var: &str) -> Option<&'a Term> {
        self.vars.iter().position(|v| v == var).map(|i| &row[i])
    }
}

fn variables(patterns: &[TriplePattern]) -> Vec<String> {
    let mut vars = Vec::new();
    for p in patterns {
        for t in p.positions().into_iter().flatten() {
            if let PatternTerm::Var(v) = t {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
    }
    vars
}

fn finish(store: &Store, vars: Vec<String>, solutions: Vec<HashMap<String, u32>>) -> Bindings {
    let rows: BTreeSet<Vec<Term>> = solutions
        .into_iter()
        .map(|sol| vars.iter().map(|v| store.term_of(sol[v]).clone()).collect())
        .collect();
    Bindings { vars, rows: rows.into_iter().collect() }
}

/// Evaluate a conjunctive pattern. Conjuncts are joined greedily, always
/// picking the one with the most positions already bound.
pub fn match_pattern(store: &Store, patterns: &[TriplePattern], graph: Option<&str>) -> Bindings {
    let vars = variables(patterns);
    let graph_id = match graph {
        Some(g) => match store.id_of(&Term::iri(g)) {
            Some(id) => Some(id),
            None => return Bindings { vars, rows: Vec::new() },
        },
        None => None,
    };
    let mut remaining: Vec<&TriplePattern> = patterns.iter().collect();
    let mut solutions: Vec<HashMap<String, u32>> = vec![HashMap::new()];
    let mut bound: BTreeSet<String> = BTreeSet::new();
    while !remaining.is_empty() {
        let score = |p: &TriplePattern| {
            p.positions()
                .into_iter()
                .flatten()
                .filter(|t| match t {
                    PatternTerm::Const(_) => true,
                    PatternTerm::Var(v) => bound.contains(v),
                })
                .count()
        };
        let (best, _) = remaining.iter().enumerate().max_by_key(|(i, p)| (score(p), usize::MAX - i)).expect("non-empty");
        let pat = remaining.remove(best);
        let mut next = Vec::new();
        for sol in &solutions {
            let mut ids: [Option<u32>; 4] = [None; 4];
            let mut impossible = false;
            for (i, t) in pat.positions().into_iter().enumerate() {
                match t {
                    Some(PatternTerm::Const(c)) => match store.id_of(c) {
                        Some(id) => ids[i] = Some(id),
                        None => impossible = true,
                    },
                    Some(PatternTerm::Var(v)) => ids[i] = sol.get(v).copied(),
                    None => {}
                }
            }
            if impossible {
                continue;
            }
            if let Some(g) = graph_id {
                match ids[3] {
                    Some(x) if x != g => continue,
                    _ => ids[3] = Some(g),
                }
            }
            for key in store.scan_ids(ids[0], ids[1], ids[2], ids[3]) {
                if let Some(ext) = extend(sol, pat, &key) {
                    next.push(ext);
                }
            }
        }
        solutions = next;
        for t in pat.positions().into_iter().flatten() {
            if let PatternTerm::Var(v) = t {
                bound.insert(v.clone());
            }
        }
        if solutions.is_empty() {
            break;
        }
    }
    finish(store, vars, solutions)
}

fn extend(sol: &HashMap<String, u32>, pat: &TriplePattern, key: &[u32; 4]) -> Option<HashMap<String, u32>> {
    let mut out = sol.clone();
    for (i, t) in pat.positions().into_iter().enumerate() {
        if let Some(PatternTerm::Var(v)) = t {
            match out.get(v) {
                Some(&x) if x != key[i] => return None,
                Some(_) => {}
                None => {
                    out.insert(v.clone(), key[i]);
                }
            }
        }
    }
    Some(out)
}

/// Reference evaluator: nested loops over every statement, in pattern order.
pub fn match_naive(store: &Store, patterns: &[TriplePattern], graph: Option<&str>) -> Bindings {
    let vars = variables(patterns);
    let keys: Vec<[u32; 4]> = store.all_keys().copied().collect();
    let graph_id = graph.map(|g| store.id_of(&Term::iri(g)));
    let mut solutions = vec![HashMap::new()];
    for pat in patterns {
        let mut next = Vec::new();
        for sol in &solutions {
            for key in &keys {
                if let Some(g) = graph_id {
                    if g != Some(key[3]) {
                        continue;
                    }
                }
                let consts_ok = pat.positions().into_iter().enumerate().all(|(i, t)| match t {
                    Some(PatternTerm::Const(c)) => store.term_of(key[i]) == c,
                    _ => true,
                });
                if consts_ok {
                    if let Some(ext) = extend(sol, pat, key) {
                        next.push(ext);
                    }
                }
            }
        }
        solutions = next;
    }
    finish(store, vars, solutions)
}

/// A parsed pattern file: conjuncts plus an optional graph filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternQuery {
    pub patterns: Vec<TriplePattern>,
    pub graph: Option<String>,
}

fn parse_pattern_term(s: &str) -> Result<(PatternTerm, &str), String> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('?') {
        let end = rest.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if end == 0 {
            return Err("empty variable name".into());
        }
        return Ok((PatternTerm::Var(rest[..end].to_string()), &rest[end..]));
    }
    if s.starts_with('<') || s.starts_with('"') {
        let (t, rest) = parse_term(s)?;
        return Ok((PatternTerm::Const(t), rest));
    }
    let end = s.find(char::is_whitespace).unwrap_or(s.len());
    let word = &s[..end];
    if let Ok(v) = word.parse::<i64>() {
        return Ok((PatternTerm::Const(Term::int(v)), &s[end..]));
    }
    let iri = expand(word).ok_or_else(|| format!("unknown prefixed name {word:?}"))?;
    Ok((PatternTerm::Const(Term::Iri(iri)), &s[end..]))
}

/// Parse the pattern file format.
///
/// One conjunct per line, `subject predicate object [graph] .`, where each
/// position is `?var`, `<iri>`, a known `prefix:local` name, a quoted
/// literal or a bare integer. A line `GRAPH <iri>` restricts every
/// conjunct to that graph. `#` starts a comment.
pub fn parse_pattern_query(text: &str) -> Result<PatternQuery, GraphError> {
    let mut query = PatternQuery { patterns: Vec::new(), graph: None };
    for (i, line) in text.lines().enumerate() {
        let err = |m: String| GraphError::Pattern { line: i + 1, message: m };
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("GRAPH ") {
            let (t, tail) = parse_pattern_term(rest).map_err(err)?;
            match t {
                PatternTerm::Const(Term::Iri(g)) if tail.trim().is_empty() => query.graph = Some(g),
                _ => return Err(err("GRAPH expects a single iri".into())),
            }
            continue;
        }
        let (s, rest) = parse_pattern_term(line).map_err(err)?;
        let (p, rest) = parse_pattern_term(rest).map_err(err)?;
        let (o, rest) = parse_pattern_term(rest).map_err(err)?;
        let rest = rest.trim();
        let (graph, rest) = if rest == "." {
            (None, rest)
        } else {
            let (g, rest) = parse_pattern_term(rest).map_err(err)?;
            (Some(g), rest.trim())
        };
        if rest != "." {
            return Err(err("expected terminating ' .'".into()));
        }
        query.patterns.push(TriplePattern { s, p, o, graph });
    }
    if query.patterns.is_empty() {
        return Err(GraphError::Pattern { line: 0, message: "pattern has no conjuncts".into() });
    }
    Ok(query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vocab::{pb, rdf, sem};
    use crate::graph::Statement;

    fn store() -> Store {
        let g = "https://x.org/g";
        Store::from_statements([
            Statement::new("https://x.org/e1", rdf::TYPE, Term::iri(sem::EVENT), g),
            Statement::new("https://x.org/e1", pb::ARG0, Term::iri("https://x.org/p1"), g),
            Statement::new("https://x.org/e2", rdf::TYPE, Term::iri(sem::EVENT), g),
        ])
        .unwrap()
    }

    #[test]
    fn event_with_agent_binds_once() {
        let q = parse_pattern_query("?e rdf:type sem:Event .\n?e pb:Arg0 ?p .\n").unwrap();
        let b = match_pattern(&store(), &q.patterns, None);
        assert_eq!(b.len(), 1);
        assert_eq!(b, match_naive(&store(), &q.patterns, None));
    }

    #[test]
    fn unsatisfiable_and_wildcard_patterns() {
        let q = parse_pattern_query("?e pb:Arg2 ?x .").unwrap();
        assert!(match_pattern(&store(), &q.patterns, None).is_empty());
        let all = parse_pattern_query("?s ?p ?o .").unwrap();
        assert_eq!(match_pattern(&store(), &all.patterns, None).len(), 3);
    }

    #[test]
    fn pattern_file_errors_name_the_line() {
        match parse_pattern_query("?e rdf:type sem:Event .\n?e nope:x ?p .") {
            Err(GraphError::Pattern { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_pattern_query("# nothing\n").is_err());
    }

    #[test]
    fn graph_filter_restricts_matches() {
        let q = parse_pattern_query("GRAPH <https://x.org/other>\n?s ?p ?o .").unwrap();
        assert!(match_pattern(&store(), &q.patterns, q.graph.as_deref()).is_empty());
    }
}
