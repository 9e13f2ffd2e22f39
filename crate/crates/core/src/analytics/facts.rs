use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::common::{
    entry_id_of, event_date, event_place, event_type, iri_objects, is_person, mention_spans, str_object, time_span,
};
use super::AnalyticsError;
use crate::corpus::PartialDate;
use crate::graph::{BIRTH_FRAME, DEATH_FRAME};
use crate::graph::vocab::{bgn, ore};
use crate::graph::{Iris, Store, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactKind {
    BirthDate,
    BirthPlace,
    DeathDate,
    DeathPlace,
}

impl FactKind {
    pub const ALL: [FactKind; 4] = [FactKind::BirthDate, FactKind::BirthPlace, FactKind::DeathDate, FactKind::DeathPlace];

    pub fn as_str(&self) -> &'static str {
        match self {
            FactKind::BirthDate => "birth-date",
            FactKind::BirthPlace => "birth-place",
            FactKind::DeathDate => "death-date",
            FactKind::DeathPlace => "death-place",
        }
    }

    pub fn frame(&self) -> &'static str {
        match self {
            FactKind::BirthDate | FactKind::BirthPlace => BIRTH_FRAME,
            FactKind::DeathDate | FactKind::DeathPlace => DEATH_FRAME,
        }
    }

    pub fn is_date(&self) -> bool {
        matches!(self, FactKind::BirthDate | FactKind::DeathDate)
    }
}

impl fmt::Display for FactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FactKind {
    type Err = AnalyticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FactKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| AnalyticsError::UnknownFactKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactValue {
    Date(PartialDate),
    Place(String),
}

impl fmt::Display for FactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactValue::Date(d) => d.fmt(f),
            FactValue::Place(p) => f.write_str(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    Agree,
    Partial,
    Contradict,
}

/// Symmetric comparison of two stated values of one fact.
pub fn classify(a: &FactValue, b: &FactValue) -> Agreement {
    match (a, b) {
        (FactValue::Date(x), FactValue::Date(y)) => {
            if x == y {
                Agreement::Agree
            } else if x.is_compatible(y) {
                Agreement::Partial
            } else {
                Agreement::Contradict
            }
        }
        (FactValue::Place(x), FactValue::Place(y)) => {
            let (x, y) = (x.trim().to_lowercase(), y.trim().to_lowercase());
            if x == y {
                Agreement::Agree
            } else if !x.is_empty() && !y.is_empty() && (x.contains(&y) || y.contains(&x)) {
                Agreement::Partial
            } else {
                Agreement::Contradict
            }
        }
        _ => Agreement::Contradict,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Metadata,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub entry_id: String,
    pub source: String,
    pub author: Option<String>,
    pub title: String,
    pub origin: Origin,
    pub description: String,
    pub event_iri: String,
    /// Offsets of the mentions backing the value, for statements drawn from text.
    pub highlights: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alternative {
    pub value: FactValue,
    pub supports: Vec<Support>,
    /// Relation to the first (best supported) alternative.
    pub versus_selected: Agreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairAgreement {
    pub a: usize,
    pub b: usize,
    pub class: Agreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactAlternatives {
    pub person: String,
    pub kind: FactKind,
    pub alternatives: Vec<Alternative>,
    pub pairs: Vec<PairAgreement>,
}

fn group_key(v: &FactValue) -> String {
    match v {
        FactValue::Date(d) => d.to_string(),
        FactValue::Place(p) => p.trim().to_lowercase(),
    }
}

fn value_of(store: &Store, event: &str, kind: FactKind) -> Option<(FactValue, Vec<(usize, usize)>)> {
    if kind.is_date() {
        let d = event_date(store, event)?;
        let mut hl = mention_spans(store, event);
        hl.extend(time_span(store, event));
        Some((FactValue::Date(d), hl))
    } else {
        let (label, instance) = event_place(store, event)?;
        let mut hl = mention_spans(store, event);
        if let Some(i) = instance {
            hl.extend(mention_spans(store, &i));
        }
        Some((FactValue::Place(label), hl))
    }
}

/// Every value any description of the person states for a fact, grouped by
/// value and classified pairwise.
pub fn fact_alternatives(
    store: &Store,
    person: &str,
    kind: FactKind,
    iris: &Iris,
) -> Result<FactAlternatives, AnalyticsError> {
    if !is_person(store, person) {
        return Err(AnalyticsError::UnknownPerson(person.to_string()));
    }
    let mut groups: BTreeMap<String, (FactValue, Vec<Support>)> = BTreeMap::new();
    for d in store.subjects(ore::PROXY_FOR, &Term::iri(person)) {
        let origin = if store.has_type(&d, bgn::ORIGINAL_DESCRIPTION) {
            Origin::Metadata
        } else if store.has_type(&d, bgn::NLP_DESCRIPTION) {
            Origin::Text
        } else {
            continue;
        };
        let entry_id = entry_id_of(store, &d).unwrap_or_default();
        let original = iris.description(&entry_id);
        let source = str_object(store, &d, bgn::SOURCE).unwrap_or_default();
        let author = str_object(store, &original, bgn::AUTHOR);
        let title = str_object(store, &original, bgn::PUBLISHER).unwrap_or_else(|| source.clone());
        for e in iri_objects(store, &d, bgn::INCLUDES) {
            if event_type(store, &e, iris) != kind.frame() {
                continue;
            }
            let Some((value, mut highlights)) = value_of(store, &e, kind) else { continue };
            if origin == Origin::Metadata {
                highlights.clear();
            }
            highlights.sort();
            highlights.dedup();
            let slot = groups.entry(group_key(&value)).or_insert_with(|| (value.clone(), Vec::new()));
            // Prefer the smallest spelling as the displayed value.
            if value.to_string() < slot.0.to_string() {
                slot.0 = value;
            }
            slot.1.push(Support {
                entry_id: entry_id.clone(),
                source: source.clone(),
                author: author.clone(),
                title: title.clone(),
                origin,
                description: d.clone(),
                event_iri: e,
                highlights,
            });
        }
    }
    let mut alternatives: Vec<(FactValue, Vec<Support>)> = groups.into_values().collect();
    for (_, s) in &mut alternatives {
        s.sort_by(|a, b| (a.origin, &a.entry_id, &a.event_iri).cmp(&(b.origin, &b.entry_id, &b.event_iri)));
    }
    alternatives.sort_by(|(va, sa), (vb, sb)| {
        sb.len().cmp(&sa.len()).then_with(|| group_key(va).cmp(&group_key(vb)))
    });
    let mut pairs = Vec::new();
    for i in 0..alternatives.len() {
        for j in i + 1..alternatives.len() {
            pairs.push(PairAgreement { a: i, b: j, class: classify(&alternatives[i].0, &alternatives[j].0) });
        }
    }
    let selected = alternatives.first().map(|(v, _)| v.clone());
    let alternatives = alternatives
        .into_iter()
        .map(|(value, supports)| Alternative {
            versus_selected: selected.as_ref().map_or(Agreement::Agree, |s| classify(s, &value)),
            value,
            supports,
        })
        .collect();
    Ok(FactAlternatives { person: person.to_string(), kind, alternatives, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(s: &str) -> FactValue {
        FactValue::Date(s.parse().unwrap())
    }

    #[test]
    fn date_classes() {
        assert_eq!(classify(&date("1466"), &date("1466-10-28")), Agreement::Partial);
        assert_eq!(classify(&date("1466-10-28"), &date("1466-10-28")), Agreement::Agree);
        assert_eq!(classify(&date("1466-10-28"), &date("1467-10-28")), Agreement::Contradict);
    }

    #[test]
    fn place_classes() {
        let p = |s: &str| FactValue::Place(s.to_string());
        assert_eq!(classify(&p("Rotterdam"), &p("rotterdam")), Agreement::Agree);
        assert_eq!(classify(&p("Rotterdam"), &p("Gouda")), Agreement::Contradict);
        assert_eq!(classify(&p("Amsterdam"), &p("Nieuw Amsterdam")), Agreement::Partial);
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!(matches!("baptism-date".parse::<FactKind>(), Err(AnalyticsError::UnknownFactKind(_))));
        assert_eq!("death-place".parse::<FactKind>().unwrap(), FactKind::DeathPlace);
    }
}
