use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{BiographyEntry, CorpusError};

/// One aggregated person identity and the entries that describe it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersonRecord {
    pub person_id: String,
    pub entry_ids: Vec<String>,
}

/// Group entries into persons. Unlinked entries become singleton records
/// with the minted id `solo-{entry_id}`.
pub fn aggregate_persons(
    entries: &[BiographyEntry],
    links: &[(String, String)],
) -> Result<Vec<PersonRecord>, CorpusError> {
    let known: HashSet<&str> = entries.iter().map(|e| e.entry_id.as_str()).collect();
    let mut person_of: HashMap<&str, &str> = HashMap::new();
    for (entry_id, person_id) in links {
        if !known.contains(entry_id.as_str()) {
            return Err(CorpusError::UnknownEntry(entry_id.clone()));
        }
        match person_of.insert(entry_id, person_id) {
            Some(prev) if prev != person_id => {
                return Err(CorpusError::ConflictingLink {
                    entry: entry_id.clone(),
                    first: prev.to_string(),
                    second: person_id.clone(),
                })
            }
            _ => {}
        }
    }
    let taken: HashSet<&str> = person_of.values().copied().collect();
    let mut order: Vec<String> = Vec::new();
    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for entry in entries {
        let person_id = match person_of.get(entry.entry_id.as_str()) {
            Some(p) => p.to_string(),
            None => {
                let mut minted = format!("solo-{}", entry.entry_id);
                while taken.contains(minted.as_str()) {
                    minted.push('_');
                }
                minted
            }
        };
        let group = groups.entry(person_id.clone()).or_default();
        if group.is_empty() {
            order.push(person_id);
        }
        group.push(entry.entry_id.clone());
    }
    Ok(order
        .into_iter()
        .map(|person_id| {
            let entry_ids = groups.remove(&person_id).unwrap_or_default();
            PersonRecord { person_id, entry_ids }
        })
        .collect())
}

/// Links declared in the corpus files through the `person` attribute.
pub fn declared_links(entries: &[BiographyEntry]) -> Vec<(String, String)> {
    entries
        .iter()
        .filter_map(|e| e.person_ref.as_ref().map(|p| (e.entry_id.clone(), p.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{FileDesc, PersonMetadata};

    fn entry(id: &str) -> BiographyEntry {
        BiographyEntry {
            entry_id: id.into(),
            source_id: "s".into(),
            person_ref: None,
            file_desc: FileDesc::default(),
            person: PersonMetadata { names: vec![id.into()], ..Default::default() },
            text: String::new(),
        }
    }

    #[test]
    fn four_entries_one_person() {
        let entries: Vec<_> = ["a", "b", "c", "d"].into_iter().map(entry).collect();
        let links: Vec<_> = entries.iter().map(|e| (e.entry_id.clone(), "erasmus".to_string())).collect();
        let persons = aggregate_persons(&entries, &links).unwrap();
        assert_eq!(persons, vec![PersonRecord { person_id: "erasmus".into(), entry_ids: vec!["a".into(), "b".into(), "c".into(), "d".into()] }]);
    }

    #[test]
    fn unlinked_entries_are_singletons() {
        let entries: Vec<_> = ["a", "b", "c"].into_iter().map(entry).collect();
        let persons = aggregate_persons(&entries, &[]).unwrap();
        assert_eq!(persons.len(), 3);
        assert!(persons.iter().all(|p| p.entry_ids.len() == 1));
    }

    #[test]
    fn conflicting_link_rejected() {
        let entries = vec![entry("a")];
        let links = vec![("a".to_string(), "p".to_string()), ("a".to_string(), "q".to_string())];
        assert!(matches!(aggregate_persons(&entries, &links), Err(CorpusError::ConflictingLink { .. })));
        let links = vec![("zz".to_string(), "p".to_string())];
        assert!(matches!(aggregate_persons(&entries, &links), Err(CorpusError::UnknownEntry(_))));
    }

    #[test]
    fn minted_ids_avoid_declared_ones() {
        let entries = vec![entry("a"), entry("b")];
        let links = vec![("b".to_string(), "solo-a".to_string())];
        let persons = aggregate_persons(&entries, &links).unwrap();
        assert_eq!(persons[0].person_id, "solo-a_");
        assert_eq!(persons[1].person_id, "solo-a");
    }
}
