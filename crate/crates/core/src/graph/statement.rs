use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::PartialDate;

use super::vocab::{bgn, xsd};
use super::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Literal {
    Str(String),
    Int(i64),
    Date(#[serde(with = "date_str")] PartialDateKey),
}

/// Ordered wrapper so literals can live in sorted indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialDateKey(pub PartialDate);

impl PartialOrd for PartialDateKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PartialDateKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.to_string().cmp(&other.0.to_string())
    }
}

mod date_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::PartialDateKey;

    pub fn serialize<S: Serializer>(d: &PartialDateKey, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&d.0.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PartialDateKey, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map(PartialDateKey).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Iri(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(s: impl Into<String>) -> Term {
        Term::Iri(s.into())
    }

    pub fn str(s: impl Into<String>) -> Term {
        Term::Literal(Literal::Str(s.into()))
    }

    pub fn int(v: i64) -> Term {
        Term::Literal(Literal::Int(v))
    }

    pub fn date(d: PartialDate) -> Term {
        Term::Literal(Literal::Date(PartialDateKey(d)))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Term::Literal(Literal::Str(s)) => Some(s),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Term::Literal(Literal::Int(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn as_date(&self) -> Option<PartialDate> {
        match self {
            Term::Literal(Literal::Date(d)) => Some(d.0),
            _ => None,
        }
    }

    /// Plain text of the term: the iri itself or the literal's lexical form.
    pub fn lexical(&self) -> String {
        match self {
            Term::Iri(s) | Term::Literal(Literal::Str(s)) => s.clone(),
            Term::Literal(Literal::Int(v)) => v.to_string(),
            Term::Literal(Literal::Date(d)) => d.0.to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Term, String> {
        let (term, rest) = parse_term(s)?;
        if rest.trim().is_empty() {
            Ok(term)
        } else {
            Err(format!("trailing input {rest:?}"))
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(s) => write!(f, "<{s}>"),
            Term::Literal(Literal::Str(s)) => write!(f, "\"{}\"", escape(s)),
            Term::Literal(Literal::Int(v)) => write!(f, "\"{v}\"^^<{}>", xsd::INTEGER),
            Term::Literal(Literal::Date(d)) => write!(f, "\"{}\"^^<{}>", d.0, bgn::PARTIAL_DATE),
        }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

/// Parse one term from the front of `s`, returning the remainder.
pub(crate) fn parse_term(s: &str) -> Result<(Term, &str), String> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('<') {
        let end = rest.find('>').ok_or("unterminated iri")?;
        let iri = &rest[..end];
        if iri.is_empty() || iri.chars().any(char::is_whitespace) {
            return Err(format!("invalid iri <{iri}>"));
        }
        return Ok((Term::Iri(iri.to_string()), &rest[end + 1..]));
    }
    if let Some(rest) = s.strip_prefix('"') {
        let mut value = String::new();
        let mut chars = rest.char_indices();
        let close = loop {
            match chars.next() {
                None => return Err("unterminated literal".into()),
                Some((i, '"')) => break i,
                Some((_, '\\')) => match chars.next() {
                    Some((_, '\\')) => value.push('\\'),
                    Some((_, '"')) => value.push('"'),
                    Some((_, 'n')) => value.push('\n'),
                    Some((_, 'r')) => value.push('\r'),
                    Some((_, 't')) => value.push('\t'),
                    _ => return Err("invalid escape".into()),
                },
                Some((_, c)) => value.push(c),
            }
        };
        let rest = &rest[close + 1..];
        if let Some(dt) = rest.strip_prefix("^^") {
            let (dt, rest) = parse_term(dt)?;
            let term = match dt.as_iri() {
                Some(xsd::INTEGER) => Term::int(value.parse().map_err(|_| format!("invalid integer {value:?}"))?),
                Some(bgn::PARTIAL_DATE) => Term::date(value.parse().map_err(|_| format!("invalid date {value:?}"))?),
                _ => return Err(format!("unsupported datatype {dt}")),
            };
            return Ok((term, rest));
        }
        return Ok((Term::str(value), rest));
    }
    Err(format!("expected term at {:?}", s.chars().take(20).collect::<String>()))
}

/// One triple placed in a named graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Statement {
    pub subject: String,
    pub predicate: String,
    pub object: Term,
    pub graph: String,
}

impl Statement {
    pub fn new(subject: impl Into<String>, predicate: &str, object: Term, graph: impl Into<String>) -> Self {
        Statement { subject: subject.into(), predicate: predicate.to_string(), object, graph: graph.into() }
    }

    pub fn triple_line(&self) -> String {
        format!("<{}> <{}> {} .", self.subject, self.predicate, self.object)
    }

    pub fn quad_line(&self) -> String {
        format!("<{}> <{}> {} <{}> .", self.subject, self.predicate, self.object, self.graph)
    }

    /// Parse a quads line (`s p o g .`) or, when `default_graph` is given, a triples line.
    pub fn parse_line(line: &str, default_graph: Option<&str>) -> Result<Statement, String> {
        let (s, rest) = parse_term(line)?;
        let (p, rest) = parse_term(rest)?;
        let (o, rest) = parse_term(rest)?;
        let rest = rest.trim_start();
        let (g, rest) = if rest.starts_with('<') {
            let (g, rest) = parse_term(rest)?;
            (g.as_iri().unwrap_or_default().to_string(), rest)
        } else {
            (default_graph.ok_or("missing graph iri")?.to_string(), rest)
        };
        if rest.trim() != "." {
            return Err("expected terminating ' .'".into());
        }
        let subject = s.as_iri().ok_or("subject must be an iri")?.to_string();
        let predicate = p.as_iri().ok_or("predicate must be an iri")?.to_string();
        Ok(Statement { subject, predicate, object: o, graph: g })
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.quad_line())
    }
}

pub(crate) fn parse_error(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_lines_round_trip() {
        let terms = [
            Term::iri("https://x.org/a"),
            Term::str("say \"hi\"\n\ttab\\"),
            Term::int(-42),
            Term::date(PartialDate::ymd(1466, 10, 28).unwrap()),
            Term::date(PartialDate::year(1466)),
        ];
        for t in terms {
            let st = Statement::new("https://x.org/s", "https://x.org/p", t, "https://x.org/g");
            assert_eq!(Statement::parse_line(&st.quad_line(), None).unwrap(), st);
            assert_eq!(Statement::parse_line(&st.triple_line(), Some("https://x.org/g")).unwrap(), st);
        }
    }

    #[test]
    fn malformed_lines_are_rejected() {
        for bad in ["<a> <b> .", "<a> <b> \"x .", "<a> <b> <c> <d>", "\"a\" <b> <c> <d> ."] {
            assert!(Statement::parse_line(bad, None).is_err(), "{bad}");
        }
    }
}
