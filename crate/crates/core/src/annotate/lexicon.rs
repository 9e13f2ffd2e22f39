//! Tab-separated lexicon files.
//!
//! Every file is UTF-8, one entry per line, `#` starts a comment line and
//! blank lines are skipped. Column layouts per kind:
//!
//! | kind         | columns                                             |
//! |--------------|-----------------------------------------------------|
//! | lemma        | `form  lemma  POS  [feat=val,...]`; a form written `-sfx` with lemma `-rep` is a suffix rule |
//! | pronoun      | `form  gender  person  possessive(yes/no)`          |
//! | concept      | `lemma  POS  concept_id  rank` (rank 1 = most frequent sense) |
//! | frame        | `concept_id  frame_id  [role,role,...]`             |
//! | gazetteer    | `CLASS  name words`                                 |
//! | domain       | `PROFESSION/FAMILY  lemma  label`                   |
//! | polarity     | `lemma  pos/neg`                                    |
//! | month        | `form  month_number` (first form per month is canonical) |
//! | abbreviation | `form.`                                             |

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::{Path, PathBuf};

use super::{DomainTag, EntityClass, Polarity, Pos, TagKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexiconKind {
    Lemma,
    Pronoun,
    Concept,
    Frame,
    Gazetteer,
    Domain,
    Polarity,
    Month,
    Abbreviation,
}

impl LexiconKind {
    pub const ALL: [LexiconKind; 9] = [
        LexiconKind::Lemma,
        LexiconKind::Pronoun,
        LexiconKind::Concept,
        LexiconKind::Frame,
        LexiconKind::Gazetteer,
        LexiconKind::Domain,
        LexiconKind::Polarity,
        LexiconKind::Month,
        LexiconKind::Abbreviation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LexiconKind::Lemma => "lemma",
            LexiconKind::Pronoun => "pronoun",
            LexiconKind::Concept => "concept",
            LexiconKind::Frame => "frame",
            LexiconKind::Gazetteer => "gazetteer",
            LexiconKind::Domain => "domain",
            LexiconKind::Polarity => "polarity",
            LexiconKind::Month => "month",
            LexiconKind::Abbreviation => "abbreviation",
        }
    }

    fn builtin(&self) -> &'static str {
        match self {
            LexiconKind::Lemma => include_str!("../../lexicons/lemma.tsv"),
            LexiconKind::Pronoun => include_str!("../../lexicons/pronoun.tsv"),
            LexiconKind::Concept => include_str!("../../lexicons/concept.tsv"),
            LexiconKind::Frame => include_str!("../../lexicons/frame.tsv"),
            LexiconKind::Gazetteer => include_str!("../../lexicons/gazetteer.tsv"),
            LexiconKind::Domain => include_str!("../../lexicons/domain.tsv"),
            LexiconKind::Polarity => include_str!("../../lexicons/polarity.tsv"),
            LexiconKind::Month => include_str!("../../lexicons/month.tsv"),
            LexiconKind::Abbreviation => include_str!("../../lexicons/abbreviation.tsv"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("lexicon file {path} cannot be read: {source}")]
    Missing { path: PathBuf, source: std::io::Error },
    #[error("{origin}:{line}: {message}")]
    Format { origin: String, line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaEntry {
    pub lemma: String,
    pub pos: Pos,
    pub feats: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: String,
    pub replacement: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameEntry {
    pub frame_id: String,
    pub roles: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptSense {
    pub concept_id: String,
    pub rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GazetteerEntry {
    pub words: Vec<String>,
    pub class: EntityClass,
}

/// All lexical resources used by the analyzers. Immutable after load.
#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub forms: HashMap<String, LemmaEntry>,
    pub suffix_rules: Vec<SuffixRule>,
    pub pronouns: HashMap<String, BTreeMap<String, String>>,
    pub senses: HashMap<(String, Pos), Vec<ConceptSense>>,
    pub frames: HashMap<String, FrameEntry>,
    pub gazetteer: Vec<GazetteerEntry>,
    pub domain_tags: HashMap<String, Vec<DomainTag>>,
    pub polarity: HashMap<String, Polarity>,
    pub months: HashMap<String, u8>,
    pub month_names: BTreeMap<u8, String>,
    pub abbreviations: HashSet<String>,
}

struct Row<'a> {
    line: usize,
    cols: Vec<&'a str>,
}

fn rows<'a>(origin: &str, text: &'a str, min_cols: usize) -> Result<Vec<Row<'a>>, LexiconError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cols.len() < min_cols || cols[..min_cols].iter().any(|c| c.is_empty()) {
            return Err(LexiconError::Format {
                origin: origin.to_string(),
                line: i + 1,
                message: format!("expected at least {min_cols} tab-separated columns"),
            });
        }
        out.push(Row { line: i + 1, cols });
    }
    Ok(out)
}

fn bad(origin: &str, line: usize, message: String) -> LexiconError {
    LexiconError::Format { origin: origin.to_string(), line, message }
}

fn parse_pos(origin: &str, line: usize, s: &str) -> Result<Pos, LexiconError> {
    Pos::parse(s).ok_or_else(|| bad(origin, line, format!("unknown POS {s:?}")))
}

fn parse_feats(s: Option<&&str>) -> BTreeMap<String, String> {
    s.map(|f| {
        f.split(',')
            .filter(|kv| !kv.trim().is_empty())
            .map(|kv| match kv.split_once('=') {
                Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
                None => (kv.trim().to_string(), "yes".to_string()),
            })
            .collect()
    })
    .unwrap_or_default()
}

impl Lexicons {
    /// The Dutch-lite and English-lite lexicons shipped with the crate.
    pub fn builtin() -> Self {
        let mut lex = Lexicons::default();
        for kind in LexiconKind::ALL {
            lex.load_text(kind, &format!("builtin:{}", kind.name()), kind.builtin())
                .expect("builtin lexicons are well-formed");
        }
        lex
    }

    /// Load every kind, taking files from `paths` where given and builtin data otherwise.
    pub fn load(paths: &HashMap<LexiconKind, PathBuf>) -> Result<Self, LexiconError> {
        let mut lex = Lexicons::default();
        for kind in LexiconKind::ALL {
            match paths.get(&kind) {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|source| LexiconError::Missing { path: path.clone(), source })?;
                    lex.load_text(kind, &path.display().to_string(), &text)?;
                }
                None => lex.load_text(kind, &format!("builtin:{}", kind.name()), kind.builtin())?,
            }
        }
        Ok(lex)
    }

    pub fn load_file(&mut self, kind: LexiconKind, path: &Path) -> Result<(), LexiconError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| LexiconError::Missing { path: path.to_path_buf(), source })?;
        self.load_text(kind, &path.display().to_string(), &text)
    }

    pub fn load_text(&mut self, kind: LexiconKind, origin: &str, text: &str) -> Result<(), LexiconError> {
        match kind {
            LexiconKind::Lemma => {
                for r in rows(origin, text, 3)? {
                    let pos = parse_pos(origin, r.line, r.cols[2])?;
                    let (form, lemma) = (r.cols[0], r.cols[1]);
                    if let Some(suffix) = form.strip_prefix('-').filter(|s| !s.is_empty()) {
                        let replacement = lemma.strip_prefix('-').ok_or_else(|| {
                            bad(origin, r.line, "suffix rule replacement must start with '-'".into())
                        })?;
                        self.suffix_rules.push(SuffixRule {
                            suffix: suffix.to_lowercase(),
                            replacement: replacement.to_string(),
                            pos,
                        });
                    } else {
                        self.forms.insert(
                            form.to_lowercase(),
                            LemmaEntry { lemma: lemma.to_string(), pos, feats: parse_feats(r.cols.get(3)) },
                        );
                    }
                }
                self.suffix_rules.sort_by(|a, b| b.suffix.chars().count().cmp(&a.suffix.chars().count()));
            }
            LexiconKind::Pronoun => {
                for r in rows(origin, text, 4)? {
                    let gender = r.cols[1];
                    if !matches!(gender, "female" | "male" | "unknown") {
                        return Err(bad(origin, r.line, format!("unknown gender {gender:?}")));
                    }
                    let morpho = BTreeMap::from([
                        ("gender".to_string(), gender.to_string()),
                        ("person".to_string(), r.cols[2].to_string()),
                        ("possessive".to_string(), r.cols[3].to_string()),
                    ]);
                    self.pronouns.insert(r.cols[0].to_lowercase(), morpho);
                }
            }
            LexiconKind::Concept => {
                for r in rows(origin, text, 4)? {
                    let pos = parse_pos(origin, r.line, r.cols[1])?;
                    let rank = r.cols[3]
                        .parse()
                        .map_err(|_| bad(origin, r.line, format!("bad rank {:?}", r.cols[3])))?;
                    let senses = self.senses.entry((r.cols[0].to_string(), pos)).or_default();
                    senses.push(ConceptSense { concept_id: r.cols[2].to_string(), rank });
                    senses.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.concept_id.cmp(&b.concept_id)));
                }
            }
            LexiconKind::Frame => {
                for r in rows(origin, text, 2)? {
                    let roles = r
                        .cols
                        .get(2)
                        .map(|s| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect())
                        .unwrap_or_default();
                    self.frames.insert(r.cols[0].to_string(), FrameEntry { frame_id: r.cols[1].to_string(), roles });
                }
            }
            LexiconKind::Gazetteer => {
                for r in rows(origin, text, 2)? {
                    let class = EntityClass::parse(r.cols[0])
                        .ok_or_else(|| bad(origin, r.line, format!("unknown entity class {:?}", r.cols[0])))?;
                    let words = r.cols[1].split_whitespace().map(str::to_string).collect();
                    self.gazetteer.push(GazetteerEntry { words, class });
                }
            }
            LexiconKind::Domain => {
                for r in rows(origin, text, 3)? {
                    let kind = match r.cols[0] {
                        "PROFESSION" => TagKind::Profession,
                        "FAMILY" => TagKind::Family,
                        other => return Err(bad(origin, r.line, format!("unknown tag kind {other:?}"))),
                    };
                    let tags = self.domain_tags.entry(r.cols[1].to_string()).or_default();
                    let tag = DomainTag { kind, label: r.cols[2].to_string() };
                    if !tags.contains(&tag) {
                        tags.push(tag);
                    }
                }
            }
            LexiconKind::Polarity => {
                for r in rows(origin, text, 2)? {
                    let polarity = match r.cols[1] {
                        "pos" | "+" => Polarity::Pos,
                        "neg" | "-" => Polarity::Neg,
                        other => return Err(bad(origin, r.line, format!("unknown polarity {other:?}"))),
                    };
                    self.polarity.insert(r.cols[0].to_string(), polarity);
                }
            }
            LexiconKind::Month => {
                for r in rows(origin, text, 2)? {
                    let month: u8 = r.cols[1]
                        .parse()
                        .ok()
                        .filter(|m| (1..=12).contains(m))
                        .ok_or_else(|| bad(origin, r.line, format!("bad month number {:?}", r.cols[1])))?;
                    let form = r.cols[0].to_lowercase();
                    self.month_names.entry(month).or_insert_with(|| form.clone());
                    self.months.insert(form, month);
                }
            }
            LexiconKind::Abbreviation => {
                for r in rows(origin, text, 1)? {
                    self.abbreviations.insert(r.cols[0].to_lowercase());
                }
            }
        }
        Ok(())
    }

    /// Most frequent sense for a lemma/pos pair.
    pub fn best_sense(&self, lemma: &str, pos: Pos) -> Option<&str> {
        self.senses.get(&(lemma.to_string(), pos)).and_then(|s| s.first()).map(|s| s.concept_id.as_str())
    }

    /// Every concept id a lemma can denote, under any part of speech.
    pub fn concepts_for_lemma(&self, lemma: &str) -> BTreeSet<String> {
        self.senses
            .iter()
            .filter(|((l, _), _)| l == lemma)
            .flat_map(|(_, senses)| senses.iter().map(|s| s.concept_id.clone()))
            .collect()
    }

    /// Lemmas sharing a concept id (synonyms).
    pub fn lemmas_for_concept(&self, concept_id: &str) -> BTreeSet<String> {
        self.senses
            .iter()
            .filter(|(_, senses)| senses.iter().any(|s| s.concept_id == concept_id))
            .map(|((l, _), _)| l.clone())
            .collect()
    }
}
