use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::annotate::{EntityClass, Layer, LayeredDocument, RoleLabel};
use crate::corpus::PartialDate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoldLayer {
    Entities,
    Timexes,
    Events,
    Roles,
}

impl GoldLayer {
    pub const ALL: [GoldLayer; 4] = [GoldLayer::Entities, GoldLayer::Timexes, GoldLayer::Events, GoldLayer::Roles];

    pub fn as_str(&self) -> &'static str {
        match self {
            GoldLayer::Entities => "entities",
            GoldLayer::Timexes => "timexes",
            GoldLayer::Events => "events",
            GoldLayer::Roles => "roles",
        }
    }

    /// Annotation layer a system document needs for comparison.
    pub fn source_layer(&self) -> Layer {
        match self {
            GoldLayer::Entities => Layer::Entities,
            GoldLayer::Timexes => Layer::Timexes,
            GoldLayer::Events | GoldLayer::Roles => Layer::Predicates,
        }
    }

    pub fn valid_label(&self, label: &str) -> bool {
        match self {
            GoldLayer::Entities => EntityClass::parse(label).is_some(),
            GoldLayer::Timexes => label.parse::<PartialDate>().is_ok(),
            GoldLayer::Events => !label.trim().is_empty(),
            GoldLayer::Roles => {
                [RoleLabel::Arg0, RoleLabel::Arg1, RoleLabel::Arg2, RoleLabel::Location, RoleLabel::Time]
                    .iter()
                    .any(|r| r.as_str() == label)
            }
        }
    }
}

impl fmt::Display for GoldLayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GoldLayer {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GoldLayer::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| EvalError::UnknownLayer(s.to_string()))
    }
}

/// A labelled character span, end exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpanItem {
    pub begin: usize,
    pub end: usize,
    pub label: String,
}

impl SpanItem {
    pub fn new(begin: usize, end: usize, label: impl Into<String>) -> Self {
        SpanItem { begin, end, label: label.into() }
    }

    pub fn overlaps(&self, other: &SpanItem) -> bool {
        self.begin < other.end && other.begin < self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldAnnotation {
    pub doc_id: String,
    pub layer: GoldLayer,
    pub items: Vec<SpanItem>,
}

impl GoldAnnotation {
    pub fn from_json(text: &str) -> Result<Self, EvalError> {
        serde_json::from_str(text).map_err(|e| EvalError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("gold annotations serialize")
    }

    /// Spans lie inside the text and labels belong to the layer.
    pub fn validate(&self, text_len: usize) -> Result<(), EvalError> {
        for item in &self.items {
            if item.begin >= item.end || item.end > text_len {
                return Err(EvalError::SpanOutOfRange { begin: item.begin, end: item.end, text_len });
            }
            if !self.layer.valid_label(&item.label) {
                return Err(EvalError::InvalidLabel { layer: self.layer, label: item.label.clone() });
            }
        }
        Ok(())
    }
}

/// The spans a system document asserts on one layer.
pub fn system_items(lad: &LayeredDocument, layer: GoldLayer) -> Vec<SpanItem> {
    let index = lad.index();
    let mut out: Vec<SpanItem> = match layer {
        GoldLayer::Entities => lad
            .entities
            .iter()
            .filter_map(|e| index.span_of(&e.term_ids).map(|(b, x)| SpanItem::new(b, x, e.class.as_str())))
            .collect(),
        GoldLayer::Timexes => lad
            .timexes
            .iter()
            .filter_map(|t| index.span_of(&t.term_ids).map(|(b, x)| SpanItem::new(b, x, t.value.to_string())))
            .collect(),
        GoldLayer::Events => lad
            .predicates
            .iter()
            .filter_map(|p| {
                let label = p.frame_id.clone().or_else(|| p.concept_id.clone()).unwrap_or_else(|| "event".to_string());
                index.term_span(&p.term_id).map(|(b, x)| SpanItem::new(b, x, label))
            })
            .collect(),
        GoldLayer::Roles => lad
            .predicates
            .iter()
            .flat_map(|p| p.roles.iter())
            .filter_map(|r| index.span_of(&r.term_ids).map(|(b, x)| SpanItem::new(b, x, r.label.as_str())))
            .collect(),
    };
    out.sort();
    out
}

/// A gold file built from a system document, a starting point for manual correction.
pub fn gold_from_system(lad: &LayeredDocument, layer: GoldLayer) -> GoldAnnotation {
    GoldAnnotation { doc_id: lad.doc_id.clone(), layer, items: system_items(lad, layer) }
}
