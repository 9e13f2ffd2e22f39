use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::common::{entry_id_of, event_date, event_type, iri_objects, str_object, Fraction};
use super::AnalyticsError;
use crate::annotate::Lexicons;
use crate::graph::BIRTH_FRAME;
use crate::graph::vocab::{bgn, ore, rdf};
use crate::graph::{Iris, Store, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupBy {
    Source,
    BirthCentury,
    Gender,
}

impl GroupBy {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupBy::Source => "source",
            GroupBy::BirthCentury => "birth-century",
            GroupBy::Gender => "gender",
        }
    }
}

impl fmt::Display for GroupBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupBy {
    type Err = AnalyticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "source" => Ok(GroupBy::Source),
            "birth-century" => Ok(GroupBy::BirthCentury),
            "gender" => Ok(GroupBy::Gender),
            other => Err(AnalyticsError::UnknownGroupBy(other.to_string())),
        }
    }
}

/// Concepts and lemmas a query stands for after synonym expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedQuery {
    pub concepts: BTreeSet<String>,
    pub lemmas: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCount {
    pub group: String,
    pub count: u64,
    pub size: u64,
    pub rate: Fraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptStats {
    pub query: String,
    pub group_by: GroupBy,
    pub concepts: Vec<String>,
    pub lemmas: Vec<String>,
    pub groups: Vec<GroupCount>,
    pub diagnostics: Vec<String>,
}

/// A concept id resolves to itself and its lemmas; a lemma resolves to every
/// concept it can denote plus those concepts' other lemmas.
pub fn resolve_query(query: &str, lexicons: &Lexicons) -> ResolvedQuery {
    let as_concept = lexicons.lemmas_for_concept(query);
    if !as_concept.is_empty() {
        return ResolvedQuery { concepts: BTreeSet::from([query.to_string()]), lemmas: as_concept };
    }
    let concepts = lexicons.concepts_for_lemma(query);
    let mut lemmas = BTreeSet::from([query.to_string()]);
    for c in &concepts {
        lemmas.extend(lexicons.lemmas_for_concept(c));
    }
    ResolvedQuery { concepts, lemmas }
}

pub(crate) fn nlp_descriptions(store: &Store) -> Vec<String> {
    store.subjects(rdf::TYPE, &Term::iri(bgn::NLP_DESCRIPTION))
}

/// Description iri of the original metadata record for the same entry.
fn original_of(store: &Store, nlp: &str, iris: &Iris) -> Option<String> {
    let original = iris.description(&entry_id_of(store, nlp)?);
    store.has_type(&original, bgn::ORIGINAL_DESCRIPTION).then_some(original)
}

/// Birth year stated in an original description's metadata.
fn stated_birth(store: &Store, original: &str, iris: &Iris) -> Option<crate::corpus::PartialDate> {
    iri_objects(store, original, bgn::INCLUDES)
        .into_iter()
        .filter(|e| event_type(store, e, iris) == BIRTH_FRAME)
        .find_map(|e| event_date(store, &e))
}

fn birth_century(store: &Store, original: &str, iris: &Iris) -> Option<i32> {
    if let Some(d) = stated_birth(store, original, iris) {
        return Some(d.century());
    }
    // Fall back to any description of the same person.
    let person = iri_objects(store, original, ore::PROXY_FOR).into_iter().next()?;
    let mut dates: Vec<_> = store
        .subjects(ore::PROXY_FOR, &Term::iri(&person))
        .iter()
        .filter(|d| store.has_type(d, bgn::ORIGINAL_DESCRIPTION))
        .filter_map(|d| stated_birth(store, d, iris))
        .collect();
    dates.sort_by(|a, b| a.chronological_cmp(b));
    dates.first().map(|d| d.century())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum GroupKey {
    Number(i32),
    Text(String),
    Unknown,
}

impl GroupKey {
    fn label(&self) -> String {
        match self {
            GroupKey::Number(n) => n.to_string(),
            GroupKey::Text(s) => s.clone(),
            GroupKey::Unknown => "unknown".to_string(),
        }
    }
}

fn group_key(store: &Store, nlp: &str, group_by: GroupBy, iris: &Iris) -> GroupKey {
    let original = original_of(store, nlp, iris);
    let value = match group_by {
        GroupBy::Source => {
            return str_object(store, nlp, bgn::SOURCE)
                .or_else(|| original.as_deref().and_then(|o| str_object(store, o, bgn::SOURCE)))
                .map_or(GroupKey::Unknown, GroupKey::Text)
        }
        GroupBy::Gender => original.and_then(|o| str_object(store, &o, bgn::GENDER)).map(GroupKey::Text),
        GroupBy::BirthCentury => original.and_then(|o| birth_century(store, &o, iris)).map(GroupKey::Number),
    };
    value.unwrap_or(GroupKey::Unknown)
}

/// Per group, the number of text descriptions whose `includes` set hits the
/// query, and the rate over all text descriptions in the group.
pub fn concept_stats(
    store: &Store,
    query: &str,
    group_by: GroupBy,
    lexicons: &Lexicons,
    iris: &Iris,
) -> ConceptStats {
    let mut stats = ConceptStats {
        query: query.to_string(),
        group_by,
        concepts: Vec::new(),
        lemmas: Vec::new(),
        groups: Vec::new(),
        diagnostics: Vec::new(),
    };
    let query = query.trim();
    if query.is_empty() {
        stats.diagnostics.push("empty query".to_string());
        return stats;
    }
    let resolved = resolve_query(query, lexicons);
    if resolved.concepts.is_empty() {
        stats.diagnostics.push(format!("no concept id for {query:?}; counting the lemma alone"));
    }
    let targets: BTreeSet<String> = resolved
        .concepts
        .iter()
        .map(|c| iris.concept(c))
        .chain(resolved.lemmas.iter().map(|l| iris.lemma(l)))
        .collect();
    stats.concepts = resolved.concepts.into_iter().collect();
    stats.lemmas = resolved.lemmas.into_iter().collect();

    let mut groups: BTreeMap<GroupKey, (u64, u64)> = BTreeMap::new();
    for d in nlp_descriptions(store) {
        let hit = iri_objects(store, &d, bgn::INCLUDES).iter().any(|o| targets.contains(o));
        let slot = groups.entry(group_key(store, &d, group_by, iris)).or_default();
        slot.1 += 1;
        if hit {
            slot.0 += 1;
        }
    }
    stats.groups = groups
        .into_iter()
        .map(|(k, (count, size))| GroupCount { group: k.label(), count, size, rate: Fraction::new(count, size) })
        .collect();
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synonyms_share_a_concept() {
        let lex = Lexicons::builtin();
        let r = resolve_query("huwen", &lex);
        assert!(r.concepts.contains("c-marry"));
        assert!(r.lemmas.contains("trouwen"));
        let r2 = resolve_query("c-marry", &lex);
        assert_eq!(r2.lemmas, r.lemmas);
    }

    #[test]
    fn empty_store_gives_no_groups() {
        let s = concept_stats(&Store::new(), "huwen", GroupBy::Source, &Lexicons::builtin(), &Iris::default());
        assert!(s.groups.is_empty());
        assert!(s.diagnostics.is_empty());
    }

    #[test]
    fn unknown_lemma_is_diagnosed() {
        let s = concept_stats(&Store::new(), "xyzzy", GroupBy::Gender, &Lexicons::builtin(), &Iris::default());
        assert_eq!(s.diagnostics.len(), 1);
        assert_eq!(s.lemmas, ["xyzzy"]);
    }

    #[test]
    fn group_by_parses() {
        assert_eq!("birth-century".parse::<GroupBy>().unwrap(), GroupBy::BirthCentury);
        assert!("decade".parse::<GroupBy>().is_err());
    }
}
