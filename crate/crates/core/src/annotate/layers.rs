use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::PartialDate;
use crate::graph::Plan;

use super::StepRun;

pub const LAD_SCHEMA: &str = "lad-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Tokens,
    Terms,
    Entities,
    Timexes,
    TermTags,
    Concepts,
    Predicates,
    Opinions,
    CorefSets,
}

impl Layer {
    pub const ALL: [Layer; 9] = [
        Layer::Tokens,
        Layer::Terms,
        Layer::Entities,
        Layer::Timexes,
        Layer::TermTags,
        Layer::Concepts,
        Layer::Predicates,
        Layer::Opinions,
        Layer::CorefSets,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Layer::Tokens => "tokens",
            Layer::Terms => "terms",
            Layer::Entities => "entities",
            Layer::Timexes => "timexes",
            Layer::TermTags => "term_tags",
            Layer::Concepts => "concepts",
            Layer::Predicates => "predicates",
            Layer::Opinions => "opinions",
            Layer::CorefSets => "coref_sets",
        }
    }

    pub fn parse(s: &str) -> Option<Layer> {
        Layer::ALL.into_iter().find(|l| l.as_str() == s)
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Name,
    Num,
    Punct,
    Other,
}

impl Pos {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Pron => "PRON",
            Pos::Det => "DET",
            Pos::Name => "NAME",
            Pos::Num => "NUM",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        }
    }

    pub fn parse(s: &str) -> Option<Pos> {
        Some(match s {
            "NOUN" => Pos::Noun,
            "VERB" => Pos::Verb,
            "ADJ" => Pos::Adj,
            "ADV" => Pos::Adv,
            "PRON" => Pos::Pron,
            "DET" => Pos::Det,
            "NAME" => Pos::Name,
            "NUM" => Pos::Num,
            "PUNCT" => Pos::Punct,
            "OTHER" => Pos::Other,
            _ => return None,
        })
    }

    pub fn is_content(&self) -> bool {
        matches!(self, Pos::Noun | Pos::Verb | Pos::Adj | Pos::Adv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityClass {
    PER,
    LOC,
    ORG,
    MISC,
}

impl EntityClass {
    pub fn parse(s: &str) -> Option<EntityClass> {
        Some(match s {
            "PER" => EntityClass::PER,
            "LOC" => EntityClass::LOC,
            "ORG" => EntityClass::ORG,
            "MISC" => EntityClass::MISC,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EntityClass::PER => "PER",
            EntityClass::LOC => "LOC",
            EntityClass::ORG => "ORG",
            EntityClass::MISC => "MISC",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RoleLabel {
    Arg0,
    Arg1,
    Arg2,
    #[serde(rename = "location")]
    Location,
    #[serde(rename = "time")]
    Time,
}

impl RoleLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RoleLabel::Arg0 => "Arg0",
            RoleLabel::Arg1 => "Arg1",
            RoleLabel::Arg2 => "Arg2",
            RoleLabel::Location => "location",
            RoleLabel::Time => "time",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Pos => "pos",
            Polarity::Neg => "neg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TagKind {
    Profession,
    Family,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainTag {
    pub kind: TagKind,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub id: String,
    pub surface: String,
    pub offset: usize,
    pub length: usize,
    pub sentence: usize,
}

impl Token {
    pub fn end(&self) -> usize {
        self.offset + self.length
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub id: String,
    pub token_ids: Vec<String>,
    pub lemma: String,
    pub pos: Pos,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morpho: BTreeMap<String, String>,
}

impl Term {
    pub fn feature(&self, key: &str) -> Option<&str> {
        self.morpho.get(key).map(String::as_str)
    }

    pub fn has_flag(&self, key: &str) -> bool {
        self.feature(key) == Some("yes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub id: String,
    pub term_ids: Vec<String>,
    pub class: EntityClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external_ref: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timex {
    pub id: String,
    pub term_ids: Vec<String>,
    pub value: PartialDate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermTag {
    pub term_id: String,
    pub tag: DomainTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptRef {
    pub term_id: String,
    pub concept_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Role {
    pub label: RoleLabel,
    pub term_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicate {
    pub id: String,
    pub term_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concept_id: Option<String>,
    pub roles: Vec<Role>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Opinion {
    pub term_ids: Vec<String>,
    pub polarity: Polarity,
    /// Absent means the document author holds the opinion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holder: Option<Vec<String>>,
}

/// Stand-off annotation layers over one biography text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredDocument {
    pub schema: String,
    pub doc_id: String,
    #[serde(default)]
    pub tokens: Vec<Token>,
    #[serde(default)]
    pub terms: Vec<Term>,
    #[serde(default)]
    pub entities: Vec<Entity>,
    #[serde(default)]
    pub timexes: Vec<Timex>,
    #[serde(default)]
    pub term_tags: Vec<TermTag>,
    #[serde(default)]
    pub concepts: Vec<ConceptRef>,
    #[serde(default)]
    pub predicates: Vec<Predicate>,
    #[serde(default)]
    pub opinions: Vec<Opinion>,
    #[serde(default)]
    pub coref_sets: Vec<Vec<String>>,
    #[serde(default)]
    pub trace: Vec<StepRun>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<Plan>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("layer integrity violation in {layer}: {message}")]
pub struct IntegrityError {
    pub layer: Layer,
    pub message: String,
}

fn violation(layer: Layer, message: impl Into<String>) -> IntegrityError {
    IntegrityError { layer, message: message.into() }
}

impl LayeredDocument {
    pub fn new(doc_id: impl Into<String>) -> Self {
        LayeredDocument {
            schema: LAD_SCHEMA.to_string(),
            doc_id: doc_id.into(),
            tokens: Vec::new(),
            terms: Vec::new(),
            entities: Vec::new(),
            timexes: Vec::new(),
            term_tags: Vec::new(),
            concepts: Vec::new(),
            predicates: Vec::new(),
            opinions: Vec::new(),
            coref_sets: Vec::new(),
            trace: Vec::new(),
            plan: None,
        }
    }

    /// Layers produced by the recorded trace; every layer when no trace exists.
    pub fn produced_layers(&self) -> HashSet<Layer> {
        if self.trace.is_empty() {
            return Layer::ALL.into_iter().collect();
        }
        self.trace.iter().flat_map(|r| r.output_layers.iter().copied()).collect()
    }

    /// Serialized form of a single layer, used to detect which layers a step changed.
    pub fn layer_json(&self, layer: Layer) -> serde_json::Value {
        let v = match layer {
            Layer::Tokens => serde_json::to_value(&self.tokens),
            Layer::Terms => serde_json::to_value(&self.terms),
            Layer::Entities => serde_json::to_value(&self.entities),
            Layer::Timexes => serde_json::to_value(&self.timexes),
            Layer::TermTags => serde_json::to_value(&self.term_tags),
            Layer::Concepts => serde_json::to_value(&self.concepts),
            Layer::Predicates => serde_json::to_value(&self.predicates),
            Layer::Opinions => serde_json::to_value(&self.opinions),
            Layer::CorefSets => serde_json::to_value(&self.coref_sets),
        };
        v.expect("layers serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layered document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn index(&self) -> LadIndex<'_> {
        LadIndex::new(self)
    }

    /// Check referential integrity and span invariants against the text length.
    pub fn validate(&self, text_len: usize) -> Result<(), IntegrityError> {
        let mut prev_end = 0usize;
        let mut token_ids = HashSet::new();
        for (i, t) in self.tokens.iter().enumerate() {
            if t.length == 0 {
                return Err(violation(Layer::Tokens, format!("empty token {}", t.id)));
            }
            if i > 0 && t.offset < prev_end {
                return Err(violation(Layer::Tokens, format!("token {} overlaps its predecessor", t.id)));
            }
            if t.end() > text_len {
                return Err(violation(Layer::Tokens, format!("token {} exceeds text bounds", t.id)));
            }
            if !token_ids.insert(t.id.as_str()) {
                return Err(violation(Layer::Tokens, format!("duplicate token id {}", t.id)));
            }
            prev_end = t.end();
        }
        let mut term_ids = HashSet::new();
        for term in &self.terms {
            if term.token_ids.is_empty() {
                return Err(violation(Layer::Terms, format!("term {} covers no token", term.id)));
            }
            if let Some(bad) = term.token_ids.iter().find(|id| !token_ids.contains(id.as_str())) {
                return Err(violation(Layer::Terms, format!("term {} references missing token {bad}", term.id)));
            }
            if !term_ids.insert(term.id.as_str()) {
                return Err(violation(Layer::Terms, format!("duplicate term id {}", term.id)));
            }
        }
        let check_terms = |layer: Layer, owner: &str, ids: &[String]| -> Result<(), IntegrityError> {
            if ids.is_empty() {
                return Err(violation(layer, format!("{owner} has an empty span")));
            }
            match ids.iter().find(|id| !term_ids.contains(id.as_str())) {
                Some(bad) => Err(violation(layer, format!("{owner} references missing term {bad}"))),
                None => Ok(()),
            }
        };
        let mut covered: HashSet<&str> = HashSet::new();
        for e in &self.entities {
            check_terms(Layer::Entities, &e.id, &e.term_ids)?;
            for t in &e.term_ids {
                if !covered.insert(t) {
                    return Err(violation(Layer::Entities, format!("entity {} overlaps another entity", e.id)));
                }
            }
        }
        for t in &self.timexes {
            check_terms(Layer::Timexes, &t.id, &t.term_ids)?;
        }
        for tag in &self.term_tags {
            check_terms(Layer::TermTags, "term tag", std::slice::from_ref(&tag.term_id))?;
        }
        for c in &self.concepts {
            check_terms(Layer::Concepts, "concept", std::slice::from_ref(&c.term_id))?;
        }
        let mut pred_ids = HashSet::new();
        for p in &self.predicates {
            check_terms(Layer::Predicates, &p.id, std::slice::from_ref(&p.term_id))?;
            for r in &p.roles {
                check_terms(Layer::Predicates, &format!("role {} of {}", r.label.as_str(), p.id), &r.term_ids)?;
                if r.term_ids.contains(&p.term_id) {
                    return Err(violation(Layer::Predicates, format!("role of {} contains the predicate term", p.id)));
                }
            }
            if !pred_ids.insert(p.id.as_str()) {
                return Err(violation(Layer::Predicates, format!("duplicate predicate id {}", p.id)));
            }
        }
        for o in &self.opinions {
            check_terms(Layer::Opinions, "opinion", &o.term_ids)?;
            if let Some(h) = &o.holder {
                check_terms(Layer::Opinions, "opinion holder", h)?;
            }
        }
        let mut in_set = HashSet::new();
        for set in &self.coref_sets {
            for id in set {
                if !pred_ids.contains(id.as_str()) {
                    return Err(violation(Layer::CorefSets, format!("coref set references missing predicate {id}")));
                }
                if !in_set.insert(id.as_str()) {
                    return Err(violation(Layer::CorefSets, format!("predicate {id} in two coref sets")));
                }
            }
        }
        Ok(())
    }
}

/// Lookup tables over a document's lower layers.
pub struct LadIndex<'a> {
    pub doc: &'a LayeredDocument,
    token_pos: HashMap<&'a str, usize>,
    term_pos: HashMap<&'a str, usize>,
}

impl<'a> LadIndex<'a> {
    pub fn new(doc: &'a LayeredDocument) -> Self {
        LadIndex {
            doc,
            token_pos: doc.tokens.iter().enumerate().map(|(i, t)| (t.id.as_str(), i)).collect(),
            term_pos: doc.terms.iter().enumerate().map(|(i, t)| (t.id.as_str(), i)).collect(),
        }
    }

    pub fn term(&self, id: &str) -> Option<&'a Term> {
        self.term_pos.get(id).map(|&i| &self.doc.terms[i])
    }

    pub fn term_position(&self, id: &str) -> Option<usize> {
        self.term_pos.get(id).copied()
    }

    pub fn token(&self, id: &str) -> Option<&'a Token> {
        self.token_pos.get(id).map(|&i| &self.doc.tokens[i])
    }

    /// Character span covered by a term, end exclusive.
    pub fn term_span(&self, id: &str) -> Option<(usize, usize)> {
        let term = self.term(id)?;
        let begin = term.token_ids.iter().filter_map(|t| self.token(t)).map(|t| t.offset).min()?;
        let end = term.token_ids.iter().filter_map(|t| self.token(t)).map(|t| t.end()).max()?;
        Some((begin, end))
    }

    pub fn span_of(&self, term_ids: &[String]) -> Option<(usize, usize)> {
        let spans: Vec<_> = term_ids.iter().map(|t| self.term_span(t)).collect::<Option<_>>()?;
        Some((spans.iter().map(|s| s.0).min()?, spans.iter().map(|s| s.1).max()?))
    }

    pub fn sentence_of(&self, term_id: &str) -> Option<usize> {
        self.term(term_id)?.token_ids.first().and_then(|t| self.token(t)).map(|t| t.sentence)
    }

    pub fn surface(&self, term_id: &str) -> String {
        self.term(term_id)
            .map(|t| {
                t.token_ids
                    .iter()
                    .filter_map(|id| self.token(id))
                    .map(|tok| tok.surface.as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default()
    }

    /// Terms sorted by document order.
    pub fn sorted_terms(&self, ids: &[String]) -> Vec<&'a Term> {
        let mut v: Vec<_> = ids.iter().filter_map(|id| self.term_pos.get(id.as_str()).copied()).collect();
        v.sort_unstable();
        v.dedup();
        v.into_iter().map(|i| &self.doc.terms[i]).collect()
    }

    /// Space-joined lemmas of the terms, in document order.
    pub fn joined_lemma(&self, ids: &[String]) -> String {
        self.sorted_terms(ids).iter().map(|t| t.lemma.as_str()).collect::<Vec<_>>().join(" ")
    }
}
