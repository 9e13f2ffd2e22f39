use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::analytics::Fraction;
use crate::annotate::{LayeredDocument, Pos};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredDoc {
    pub doc_id: String,
    pub source_id: String,
    pub score: f64,
}

impl ScoredDoc {
    pub fn new(doc_id: impl Into<String>, source_id: impl Into<String>, score: f64) -> Self {
        ScoredDoc { doc_id: doc_id.into(), source_id: source_id.into(), score }
    }
}

/// Per-document subjectivity estimate.
pub trait SubjectivityScorer {
    fn score(&self, lad: &LayeredDocument) -> f64;
}

/// Share of adjectives among non-punctuation terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdjectiveScorer;

impl SubjectivityScorer for AdjectiveScorer {
    fn score(&self, lad: &LayeredDocument) -> f64 {
        let words = lad.terms.iter().filter(|t| t.pos != Pos::Punct).count() as u64;
        let adjectives = lad.terms.iter().filter(|t| t.pos == Pos::Adj).count() as u64;
        Fraction::new(adjectives, words).to_f64()
    }
}

pub fn score_documents<'a>(
    documents: impl IntoIterator<Item = (&'a str, &'a LayeredDocument)>,
    scorer: &dyn SubjectivityScorer,
) -> Vec<ScoredDoc> {
    documents.into_iter().map(|(source, lad)| ScoredDoc::new(&lad.doc_id, source, scorer.score(lad))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    High,
    Mid,
    Low,
}

impl Stratum {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stratum::High => "high",
            Stratum::Mid => "mid",
            Stratum::Low => "low",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleTriple {
    pub source_a: String,
    pub source_b: String,
    /// High scores from A with low scores from B.
    pub confirm: Vec<ScoredDoc>,
    /// Low scores from A with high scores from B.
    pub oppose: Vec<ScoredDoc>,
    /// Middle scores from both.
    pub neutral: Vec<ScoredDoc>,
}

impl SampleTriple {
    pub fn samples(&self) -> [(&'static str, &[ScoredDoc]); 3] {
        [("confirm", &self.confirm), ("oppose", &self.oppose), ("neutral", &self.neutral)]
    }
}

fn rank(a: &ScoredDoc, b: &ScoredDoc) -> std::cmp::Ordering {
    b.score.total_cmp(&a.score).then_with(|| a.doc_id.cmp(&b.doc_id))
}

/// Tertiles of one source's documents, highest scores first. Sizes differ by
/// at most one, with the larger strata on top.
pub fn tertiles(docs: &[ScoredDoc]) -> [Vec<ScoredDoc>; 3] {
    let mut sorted = docs.to_vec();
    sorted.sort_by(rank);
    let n = sorted.len();
    let (base, extra) = (n / 3, n % 3);
    let high = base + usize::from(extra > 0);
    let mid = base + usize::from(extra > 1);
    let low_part = sorted.split_off(high + mid);
    let mid_part = sorted.split_off(high);
    [sorted, mid_part, low_part]
}

fn take(
    strata: &[Vec<ScoredDoc>; 3],
    which: Stratum,
    k: usize,
    source: &str,
) -> Result<Vec<ScoredDoc>, EvalError> {
    let s = &strata[which as usize];
    if s.len() < k {
        return Err(EvalError::InsufficientStratum {
            source_id: source.to_string(),
            stratum: which.as_str(),
            needed: k,
            available: s.len(),
        });
    }
    Ok(s[..k].to_vec())
}

/// Hypothesis-based sampling of `k` documents per source and stratum.
pub fn hypothesis_sample(
    scores: &[ScoredDoc],
    source_a: &str,
    source_b: &str,
    k: usize,
) -> Result<SampleTriple, EvalError> {
    if source_a == source_b {
        return Err(EvalError::Format("the compared sources must differ".to_string()));
    }
    let of = |s: &str| -> Vec<ScoredDoc> { scores.iter().filter(|d| d.source_id == s).cloned().collect() };
    let (a, b) = (tertiles(&of(source_a)), tertiles(&of(source_b)));
    let join = |x: Vec<ScoredDoc>, y: Vec<ScoredDoc>| x.into_iter().chain(y).collect::<Vec<_>>();
    Ok(SampleTriple {
        source_a: source_a.to_string(),
        source_b: source_b.to_string(),
        confirm: join(take(&a, Stratum::High, k, source_a)?, take(&b, Stratum::Low, k, source_b)?),
        oppose: join(take(&a, Stratum::Low, k, source_a)?, take(&b, Stratum::High, k, source_b)?),
        neutral: join(take(&a, Stratum::Mid, k, source_a)?, take(&b, Stratum::Mid, k, source_b)?),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleAgreement {
    pub sample: String,
    pub compared: u64,
    pub agreed: u64,
    pub rate: Fraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceErrors {
    pub source: String,
    /// System says subjective, human says not.
    pub over: u64,
    /// System says not subjective, human says it is.
    pub under: u64,
}

impl SourceErrors {
    pub fn direction(&self) -> i8 {
        match self.over.cmp(&self.under) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub samples: Vec<SampleAgreement>,
    pub overall: Fraction,
    pub sources: Vec<SourceErrors>,
    /// `"<source>+"` when the system leans towards over-classifying one
    /// source only, `"<source>-"` for under-classification.
    pub bias_flags: Vec<String>,
    pub missing: Vec<String>,
}

/// Human and system subjectivity judgements compared on each sample.
pub fn compare_conclusions(
    samples: &SampleTriple,
    human: &BTreeMap<String, bool>,
    system: &BTreeMap<String, bool>,
) -> AgreementReport {
    let mut missing = BTreeSet::new();
    let mut errors: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    errors.insert(samples.source_a.clone(), (0, 0));
    errors.insert(samples.source_b.clone(), (0, 0));
    let (mut total, mut total_agreed) = (0, 0);
    let mut out = Vec::new();
    for (name, docs) in samples.samples() {
        let (mut compared, mut agreed) = (0, 0);
        for d in docs {
            let (Some(&h), Some(&s)) = (human.get(&d.doc_id), system.get(&d.doc_id)) else {
                missing.insert(d.doc_id.clone());
                continue;
            };
            compared += 1;
            let e = errors.entry(d.source_id.clone()).or_default();
            match (s, h) {
                (true, false) => e.0 += 1,
                (false, true) => e.1 += 1,
                _ => agreed += 1,
            }
        }
        total += compared;
        total_agreed += agreed;
        out.push(SampleAgreement { sample: name.to_string(), compared, agreed, rate: Fraction::new(agreed, compared) });
    }
    let sources: Vec<SourceErrors> =
        errors.into_iter().map(|(source, (over, under))| SourceErrors { source, over, under }).collect();
    let mut bias_flags = Vec::new();
    for s in &sources {
        let d = s.direction();
        let others_differ = sources.iter().filter(|o| o.source != s.source).all(|o| o.direction() != d);
        if d != 0 && others_differ {
            bias_flags.push(format!("{}{}", s.source, if d > 0 { "+" } else { "-" }));
        }
    }
    // An empty sample has rate 0; report overall agreement over compared docs.
    AgreementReport {
        samples: out,
        overall: if total == 0 { Fraction::new(0, 1) } else { Fraction::new(total_agreed, total) },
        sources,
        bias_flags,
        missing: missing.into_iter().collect(),
    }
}
