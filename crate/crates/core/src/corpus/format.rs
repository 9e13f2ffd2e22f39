//! Canonical corpus file formats.
//!
//! XML layout:
//!
//! ```text
//! <corpus>
//!   <biography id="..." source="..." person="...">     person is optional
//!     <fileDesc><author/><publisher/><year/></fileDesc>
//!     <person>
//!       <name>...</name>+ <gender>female|male|unknown</gender>?
//!       <event type="birth|death"><date>YYYY[-MM[-DD]]</date>?<place>...</place>?</event>*
//!       <state type="education|occupation">...</state>*
//!     </person>
//!     <text>...</text>
//!   </biography>
//! </corpus>
//! ```
//!
//! The JSON twin uses the same names (`{"biography": [{"id", "source",
//! "personRef", "fileDesc", "person": {"name", "gender", "event", "state"},
//! "text"}]}`); the biography's `person` attribute becomes `personRef` since
//! JSON objects cannot hold both under one key.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{
    normalize_text, BiographyEntry, CorpusError, FileDesc, Gender, LifeEvent, PartialDate,
    PersonMetadata,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Xml,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "xml" => Ok(Format::Xml),
            "json" => Ok(Format::Json),
            other => Err(CorpusError::Invalid(format!("unknown format {other:?}"))),
        }
    }
}

pub fn parse_entries(bytes: &[u8], format: Format) -> Result<Vec<BiographyEntry>, CorpusError> {
    let entries = match format {
        Format::Xml => parse_xml(bytes)?,
        Format::Json => parse_json(bytes)?,
    };
    let mut seen = HashSet::new();
    for entry in &entries {
        entry.validate()?;
        if !seen.insert(entry.entry_id.as_str()) {
            return Err(CorpusError::DuplicateEntry(entry.entry_id.clone()));
        }
    }
    Ok(entries)
}

pub fn serialize_entries(entries: &[BiographyEntry], format: Format) -> Vec<u8> {
    match format {
        Format::Xml => to_xml(entries).into_bytes(),
        Format::Json => {
            let doc = JsonCorpus { biography: entries.iter().map(JsonBiography::from).collect() };
            let mut out = serde_json::to_vec_pretty(&doc).expect("corpus serializes");
            out.push(b'\n');
            out
        }
    }
}

fn syntax_error(doc: &roxmltree::Document, node: roxmltree::Node, message: String) -> CorpusError {
    let pos = doc.text_pos_at(node.range().start);
    CorpusError::Syntax { line: pos.row as usize, column: pos.col as usize, message }
}

fn parse_xml(bytes: &[u8]) -> Result<Vec<BiographyEntry>, CorpusError> {
    let text = std::str::from_utf8(bytes).map_err(|e| CorpusError::Syntax {
        line: 0,
        column: 0,
        message: format!("invalid UTF-8: {e}"),
    })?;
    let doc = roxmltree::Document::parse(text).map_err(|e| {
        let pos = e.pos();
        CorpusError::Syntax { line: pos.row as usize, column: pos.col as usize, message: e.to_string() }
    })?;
    let root = doc.root_element();
    if root.tag_name().name() != "corpus" {
        return Err(syntax_error(&doc, root, format!("expected <corpus>, found <{}>", root.tag_name().name())));
    }
    let mut entries = Vec::new();
    for bio in root.children().filter(|n| n.is_element()) {
        if bio.tag_name().name() != "biography" {
            return Err(syntax_error(&doc, bio, format!("unexpected <{}>", bio.tag_name().name())));
        }
        entries.push(parse_biography(&doc, bio)?);
    }
    Ok(entries)
}

fn child_text(node: roxmltree::Node, name: &str) -> Option<String> {
    node.children()
        .find(|c| c.is_element() && c.tag_name().name() == name)
        .map(element_text)
}

fn element_text(node: roxmltree::Node) -> String {
    node.children().filter_map(|c| c.text()).collect()
}

fn non_empty(s: Option<String>) -> Option<String> {
    s.map(|v| v.trim().to_string()).filter(|v| !v.is_empty())
}

fn parse_biography(doc: &roxmltree::Document, bio: roxmltree::Node) -> Result<BiographyEntry, CorpusError> {
    let attr = |name: &str| bio.attribute(name).map(str::to_string);
    let entry_id = attr("id").ok_or_else(|| syntax_error(doc, bio, "biography without id".into()))?;
    let source_id = attr("source").ok_or_else(|| syntax_error(doc, bio, format!("biography {entry_id} without source")))?;
    let mut file_desc = FileDesc::default();
    let mut person = PersonMetadata::default();
    let mut text = String::new();
    for child in bio.children().filter(|n| n.is_element()) {
        match child.tag_name().name() {
            "fileDesc" => {
                file_desc.author = non_empty(child_text(child, "author"));
                file_desc.publisher = non_empty(child_text(child, "publisher"));
                file_desc.year = match non_empty(child_text(child, "year")) {
                    Some(y) => Some(y.parse().map_err(|_| syntax_error(doc, child, format!("bad year {y:?}")))?),
                    None => None,
                };
            }
            "person" => person = parse_person(doc, child)?,
            "text" => text = normalize_text(&element_text(child)),
            other => return Err(syntax_error(doc, child, format!("unexpected <{other}> in biography"))),
        }
    }
    Ok(BiographyEntry { entry_id, source_id, person_ref: attr("person"), file_desc, person, text })
}

fn parse_person(doc: &roxmltree::Document, node: roxmltree::Node) -> Result<PersonMetadata, CorpusError> {
    let mut person = PersonMetadata::default();
    for child in node.children().filter(|n| n.is_element()) {
        match child.tag_name().name() {
            "name" => person.names.push(element_text(child).trim().to_string()),
            "gender" => {
                let g = element_text(child);
                person.gender = Gender::parse(&g).ok_or_else(|| syntax_error(doc, child, format!("bad gender {g:?}")))?;
            }
            "event" => {
                let date = match non_empty(child_text(child, "date")) {
                    Some(d) => Some(d.parse::<PartialDate>().map_err(|e| syntax_error(doc, child, e.to_string()))?),
                    None => None,
                };
                let event = LifeEvent { date, place: non_empty(child_text(child, "place")) };
                match child.attribute("type") {
                    Some("birth") => person.birth = event,
                    Some("death") => person.death = event,
                    other => return Err(syntax_error(doc, child, format!("bad event type {other:?}"))),
                }
            }
            "state" => {
                let value = element_text(child).trim().to_string();
                match child.attribute("type") {
                    Some("education") => person.education.push(value),
                    Some("occupation") => person.occupation.push(value),
                    other => return Err(syntax_error(doc, child, format!("bad state type {other:?}"))),
                }
            }
            other => return Err(syntax_error(doc, child, format!("unexpected <{other}> in person"))),
        }
    }
    Ok(person)
}

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

fn to_xml(entries: &[BiographyEntry]) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<corpus>\n");
    for e in entries {
        let _ = write!(out, "  <biography id=\"{}\" source=\"{}\"", escape_xml(&e.entry_id), escape_xml(&e.source_id));
        if let Some(p) = &e.person_ref {
            let _ = write!(out, " person=\"{}\"", escape_xml(p));
        }
        out.push_str(">\n    <fileDesc>");
        if let Some(a) = &e.file_desc.author {
            let _ = write!(out, "<author>{}</author>", escape_xml(a));
        }
        if let Some(p) = &e.file_desc.publisher {
            let _ = write!(out, "<publisher>{}</publisher>", escape_xml(p));
        }
        if let Some(y) = e.file_desc.year {
            let _ = write!(out, "<year>{y}</year>");
        }
        out.push_str("</fileDesc>\n    <person>\n");
        for n in &e.person.names {
            let _ = writeln!(out, "      <name>{}</name>", escape_xml(n));
        }
        let _ = writeln!(out, "      <gender>{}</gender>", e.person.gender.as_str());
        for (kind, ev) in [("birth", &e.person.birth), ("death", &e.person.death)] {
            if ev.is_empty() {
                continue;
            }
            let _ = write!(out, "      <event type=\"{kind}\">");
            if let Some(d) = ev.date {
                let _ = write!(out, "<date>{d}</date>");
            }
            if let Some(p) = &ev.place {
                let _ = write!(out, "<place>{}</place>", escape_xml(p));
            }
            out.push_str("</event>\n");
        }
        for (kind, values) in [("education", &e.person.education), ("occupation", &e.person.occupation)] {
            for v in values {
                let _ = writeln!(out, "      <state type=\"{kind}\">{}</state>", escape_xml(v));
            }
        }
        let _ = writeln!(out, "    </person>\n    <text>{}</text>\n  </biography>", escape_xml(&e.text));
    }
    out.push_str("</corpus>\n");
    out
}

#[derive(Serialize, Deserialize)]
struct JsonCorpus {
    #[serde(default)]
    biography: Vec<JsonBiography>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct JsonBiography {
    id: String,
    source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    person_ref: Option<String>,
    #[serde(default)]
    file_desc: JsonFileDesc,
    person: JsonPerson,
    #[serde(default)]
    text: String,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct JsonFileDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    author: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    publisher: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    year: Option<i32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPerson {
    name: Vec<String>,
    #[serde(default)]
    gender: Gender,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    event: Vec<JsonEvent>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    state: Vec<JsonState>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEvent {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    date: Option<PartialDate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    place: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonState {
    #[serde(rename = "type")]
    kind: String,
    text: String,
}

impl From<&BiographyEntry> for JsonBiography {
    fn from(e: &BiographyEntry) -> Self {
        let mut event = Vec::new();
        for (kind, ev) in [("birth", &e.person.birth), ("death", &e.person.death)] {
            if !ev.is_empty() {
                event.push(JsonEvent { kind: kind.into(), date: ev.date, place: ev.place.clone() });
            }
        }
        let state = e
            .person
            .education
            .iter()
            .map(|t| JsonState { kind: "education".into(), text: t.clone() })
            .chain(e.person.occupation.iter().map(|t| JsonState { kind: "occupation".into(), text: t.clone() }))
            .collect();
        JsonBiography {
            id: e.entry_id.clone(),
            source: e.source_id.clone(),
            person_ref: e.person_ref.clone(),
            file_desc: JsonFileDesc {
                author: e.file_desc.author.clone(),
                publisher: e.file_desc.publisher.clone(),
                year: e.file_desc.year,
            },
            person: JsonPerson { name: e.person.names.clone(), gender: e.person.gender, event, state },
            text: e.text.clone(),
        }
    }
}

fn parse_json(bytes: &[u8]) -> Result<Vec<BiographyEntry>, CorpusError> {
    let doc: JsonCorpus = serde_json::from_slice(bytes).map_err(|e| CorpusError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.biography
        .into_iter()
        .map(|b| {
            let mut person = PersonMetadata {
                names: b.person.name.iter().map(|n| n.trim().to_string()).collect(),
                gender: b.person.gender,
                ..Default::default()
            };
            for ev in b.person.event {
                let value = LifeEvent { date: ev.date, place: non_empty(ev.place) };
                match ev.kind.as_str() {
                    "birth" => person.birth = value,
                    "death" => person.death = value,
                    other => return Err(CorpusError::Invalid(format!("bad event type {other:?} in {}", b.id))),
                }
            }
            for st in b.person.state {
                let value = st.text.trim().to_string();
                match st.kind.as_str() {
                    "education" => person.education.push(value),
                    "occupation" => person.occupation.push(value),
                    other => return Err(CorpusError::Invalid(format!("bad state type {other:?} in {}", b.id))),
                }
            }
            Ok(BiographyEntry {
                entry_id: b.id,
                source_id: b.source,
                person_ref: b.person_ref,
                file_desc: FileDesc {
                    author: non_empty(b.file_desc.author),
                    publisher: non_empty(b.file_desc.publisher),
                    year: b.file_desc.year,
                },
                person,
                text: normalize_text(&b.text),
            })
        })
        .collect()
}
