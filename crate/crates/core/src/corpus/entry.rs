use serde::{Deserialize, Serialize};

use super::{CorpusError, PartialDate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Female,
    Male,
    #[default]
    Unknown,
}

impl Gender {
    pub fn as_str(&self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::Male => "male",
            Gender::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Gender> {
        match s.trim() {
            "female" => Some(Gender::Female),
            "male" => Some(Gender::Male),
            "unknown" => Some(Gender::Unknown),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FileDesc {
    pub author: Option<String>,
    pub publisher: Option<String>,
    pub year: Option<i32>,
}

/// Date and place of a metadata life event (birth or death).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LifeEvent {
    pub date: Option<PartialDate>,
    pub place: Option<String>,
}

impl LifeEvent {
    pub fn is_empty(&self) -> bool {
        self.date.is_none() && self.place.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PersonMetadata {
    pub names: Vec<String>,
    pub gender: Gender,
    pub birth: LifeEvent,
    pub death: LifeEvent,
    pub education: Vec<String>,
    pub occupation: Vec<String>,
}

/// One source biography: file description, person metadata and text.
///
/// `text` is stored with line endings normalized to `\n`; every character
/// offset used elsewhere in the crate counts Unicode scalar values of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiographyEntry {
    pub entry_id: String,
    pub source_id: String,
    /// Aggregated-person identity declared by the source file, if any.
    pub person_ref: Option<String>,
    pub file_desc: FileDesc,
    pub person: PersonMetadata,
    pub text: String,
}

impl BiographyEntry {
    /// Entry with one name and a normalized text; other metadata empty.
    pub fn new(entry_id: &str, source_id: &str, name: &str, text: &str) -> Self {
        BiographyEntry {
            entry_id: entry_id.to_string(),
            source_id: source_id.to_string(),
            person_ref: None,
            file_desc: FileDesc::default(),
            person: PersonMetadata { names: vec![name.to_string()], ..Default::default() },
            text: normalize_text(text),
        }
    }

    pub fn with_gender(mut self, gender: Gender) -> Self {
        self.person.gender = gender;
        self
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.entry_id.trim().is_empty() {
            return Err(CorpusError::Invalid("empty entry id".into()));
        }
        if !self.person.names.iter().any(|n| !n.trim().is_empty()) {
            return Err(CorpusError::Invalid(format!(
                "entry {} has no non-empty name",
                self.entry_id
            )));
        }
        Ok(())
    }

    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }

    /// Slice the text by character offsets, end exclusive.
    pub fn slice(&self, begin: usize, end: usize) -> Option<&str> {
        slice_chars(&self.text, begin, end)
    }

    pub fn display_name(&self) -> &str {
        self.person
            .names
            .iter()
            .find(|n| !n.trim().is_empty())
            .map(String::as_str)
            .unwrap_or("")
    }
}

/// Normalize CRLF and lone CR to LF and trim surrounding whitespace.
pub fn normalize_text(raw: &str) -> String {
    raw.replace("\r\n", "\n").replace('\r', "\n").trim().to_string()
}

pub fn slice_chars(text: &str, begin: usize, end: usize) -> Option<&str> {
    if begin > end {
        return None;
    }
    let mut indices = text.char_indices().map(|(i, _)| i).chain(std::iter::once(text.len()));
    let start = indices.nth(begin)?;
    let stop = if end == begin {
        start
    } else {
        indices.nth(end - begin - 1)?
    };
    Some(&text[start..stop])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slicing_counts_scalar_values() {
        let t = "Céline é x";
        assert_eq!(slice_chars(t, 0, 6), Some("Céline"));
        assert_eq!(slice_chars(t, 7, 8), Some("é"));
        assert_eq!(slice_chars(t, 9, 10), Some("x"));
        assert_eq!(slice_chars(t, 9, 11), None);
        assert_eq!(slice_chars(t, 10, 10), Some(""));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_text("  a\r\nb\rc \n"), "a\nb\nc");
    }
}
