use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{BiographyEntry, CorpusError};

pub const UNKNOWN: &str = "unknown";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Facet {
    Source,
    Gender,
    BirthCentury,
    DeathCentury,
}

impl Facet {
    pub fn as_str(&self) -> &'static str {
        match self {
            Facet::Source => "source",
            Facet::Gender => "gender",
            Facet::BirthCentury => "birth-century",
            Facet::DeathCentury => "death-century",
        }
    }

    pub fn value_of(&self, entry: &BiographyEntry) -> String {
        match self {
            Facet::Source => entry.source_id.clone(),
            Facet::Gender => entry.person.gender.as_str().to_string(),
            Facet::BirthCentury => century_label(entry.person.birth.date.map(|d| d.century())),
            Facet::DeathCentury => century_label(entry.person.death.date.map(|d| d.century())),
        }
    }
}

pub fn century_label(century: Option<i32>) -> String {
    century.map_or_else(|| UNKNOWN.to_string(), |c| c.to_string())
}

impl FromStr for Facet {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "source" => Ok(Facet::Source),
            "gender" => Ok(Facet::Gender),
            "birth-century" => Ok(Facet::BirthCentury),
            "death-century" => Ok(Facet::DeathCentury),
            other => Err(CorpusError::UnknownFacet(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatCell {
    pub key: Vec<String>,
    pub count: usize,
}

/// Cross-tabulated corpus composition counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub facets: Vec<Facet>,
    pub entry_count: usize,
    pub cells: Vec<StatCell>,
    pub totals: BTreeMap<Facet, BTreeMap<String, usize>>,
}

impl CorpusStats {
    pub fn cell(&self, key: &[&str]) -> usize {
        self.cells
            .iter()
            .find(|c| c.key.iter().map(String::as_str).eq(key.iter().copied()))
            .map_or(0, |c| c.count)
    }

    /// Share of entries matching `target` among those matching `within`,
    /// e.g. female share within one source.
    pub fn share(&self, within: (Facet, &str), target: (Facet, &str)) -> Option<Ratio<usize>> {
        let wi = self.facets.iter().position(|f| *f == within.0)?;
        let ti = self.facets.iter().position(|f| *f == target.0)?;
        let (mut hit, mut all) = (0, 0);
        for c in &self.cells {
            if c.key[wi] == within.1 {
                all += c.count;
                if c.key[ti] == target.1 {
                    hit += c.count;
                }
            }
        }
        (all > 0).then(|| Ratio::new(hit, all))
    }
}

pub fn corpus_stats(entries: &[BiographyEntry], facets: &[&str]) -> Result<CorpusStats, CorpusError> {
    let facets: Vec<Facet> = facets.iter().map(|f| f.parse()).collect::<Result<_, _>>()?;
    let mut cells: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut totals: BTreeMap<Facet, BTreeMap<String, usize>> =
        facets.iter().map(|f| (*f, BTreeMap::new())).collect();
    for entry in entries {
        let key: Vec<String> = facets.iter().map(|f| f.value_of(entry)).collect();
        for (facet, value) in facets.iter().zip(&key) {
            *totals.entry(*facet).or_default().entry(value.clone()).or_default() += 1;
        }
        *cells.entry(key).or_default() += 1;
    }
    Ok(CorpusStats {
        facets,
        entry_count: entries.len(),
        cells: cells.into_iter().map(|(key, count)| StatCell { key, count }).collect(),
        totals,
    })
}
