use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::common::Fraction;
use super::AnalyticsError;
use crate::annotate::{LayeredDocument, Pos};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjectiveRatio {
    pub source: String,
    pub documents: u64,
    pub adjectives: u64,
    pub words: u64,
    pub ratio: Fraction,
}

/// Share of adjectives among the non-punctuation terms of every document
/// of one source.
pub fn adjective_ratio<'a>(
    source: &str,
    documents: impl IntoIterator<Item = (&'a str, &'a LayeredDocument)>,
) -> Result<AdjectiveRatio, AnalyticsError> {
    let mut out = AdjectiveRatio {
        source: source.to_string(),
        documents: 0,
        adjectives: 0,
        words: 0,
        ratio: Fraction::new(0, 1),
    };
    for (_, lad) in documents.into_iter().filter(|(s, _)| *s == source) {
        out.documents += 1;
        for t in &lad.terms {
            match t.pos {
                Pos::Punct => {}
                Pos::Adj => {
                    out.adjectives += 1;
                    out.words += 1;
                }
                _ => out.words += 1,
            }
        }
    }
    if out.documents == 0 {
        return Err(AnalyticsError::NoDocuments(source.to_string()));
    }
    out.ratio = Fraction::new(out.adjectives, out.words);
    Ok(out)
}

/// Ratios for every source present, ordered by source id.
pub fn adjective_ratios<'a>(
    documents: impl IntoIterator<Item = (&'a str, &'a LayeredDocument)> + Clone,
) -> Vec<AdjectiveRatio> {
    let mut sources: Vec<&str> = documents.clone().into_iter().map(|(s, _)| s).collect();
    sources.sort();
    sources.dedup();
    sources.into_iter().filter_map(|s| adjective_ratio(s, documents.clone()).ok()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameConfig {
    /// Lowercase words allowed between capitalized tokens.
    pub particles: Vec<String>,
    /// Capitalized words ignored when they open a sentence on their own.
    pub stoplist: Vec<String>,
}

impl Default for NameConfig {
    fn default() -> Self {
        let particles = ["van", "de", "der", "den", "ten", "ter", "het", "'t", "von", "du", "la", "le"];
        let stoplist = [
            "Hij", "Zij", "Ze", "Het", "De", "Een", "In", "Na", "Op", "Te", "Toen", "Daarna", "Deze", "Dit", "Hier",
            "Ook", "Als", "Met", "Bij", "Van", "Door", "Uit", "Over", "Zijn", "Haar", "Nadat", "Later", "He", "She",
            "The", "It", "After", "Then",
        ];
        NameConfig {
            particles: particles.iter().map(|s| s.to_string()).collect(),
            stoplist: stoplist.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameCount {
    pub name: String,
    pub count: u64,
}

/// Words of a text, grouped by sentence.
fn sentences(text: &str) -> Vec<Vec<&str>> {
    let mut out = vec![Vec::new()];
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        let word_char = c.is_alphanumeric() || c == '\'' || c == '-';
        match (word_char, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.last_mut().unwrap().push(&text[s..i]);
                start = None;
            }
            _ => {}
        }
        if !word_char && matches!(c, '.' | '!' | '?' | ';' | '\n') && !out.last().unwrap().is_empty() {
            out.push(Vec::new());
        }
    }
    out.retain(|s| !s.is_empty());
    out
}

fn capitalized(word: &str) -> bool {
    word.chars().next().is_some_and(char::is_uppercase)
}

/// Candidate names in one text: maximal runs of capitalized words, possibly
/// joined by particles.
fn candidates(text: &str, config: &NameConfig) -> Vec<String> {
    let mut out = Vec::new();
    for words in sentences(text) {
        let mut i = 0;
        while i < words.len() {
            if !capitalized(words[i]) {
                i += 1;
                continue;
            }
            let start = i;
            let mut end = i + 1;
            loop {
                let mut j = end;
                while j < words.len() && config.particles.iter().any(|p| p == words[j]) {
                    j += 1;
                }
                if j < words.len() && capitalized(words[j]) {
                    end = j + 1;
                } else {
                    break;
                }
            }
            let single_opener = start == 0 && end == 1;
            if !(single_opener && config.stoplist.iter().any(|s| s == words[0])) {
                out.push(words[start..end].join(" "));
            }
            i = end;
        }
    }
    out
}

/// Counts of everything that looks remotely like a name, most frequent first.
pub fn name_mentions<'a>(texts: impl IntoIterator<Item = &'a str>, config: &NameConfig) -> Vec<NameCount> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for text in texts {
        for c in candidates(text, config) {
            *counts.entry(c).or_default() += 1;
        }
    }
    let mut out: Vec<NameCount> = counts.into_iter().map(|(name, count)| NameCount { name, count }).collect();
    out.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.name.cmp(&b.name)));
    out
}

/// Name table as an ordered map, handy for comparisons.
pub fn name_table(counts: &[NameCount]) -> BTreeMap<String, u64> {
    counts.iter().map(|c| (c.name.clone(), c.count)).collect()
}
