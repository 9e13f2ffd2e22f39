//! Intrinsic scoring against gold spans and hypothesis-based sampling.

mod gold;
mod intrinsic;
mod sampling;

pub use gold::{gold_from_system, system_items, GoldAnnotation, GoldLayer, SpanItem};
pub use intrinsic::{
    compare_items, intrinsic_eval, intrinsic_eval_both, micro_average, ErrorKind, EvalErrorItem, EvalReport, Matching,
};
pub use sampling::{
    compare_conclusions, hypothesis_sample, score_documents, tertiles, AdjectiveScorer, AgreementReport,
    SampleAgreement, SampleTriple, ScoredDoc, SourceErrors, Stratum, SubjectivityScorer,
};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("layer mismatch: {0}")]
    LayerMismatch(String),
    #[error("unknown gold layer {0:?}")]
    UnknownLayer(String),
    #[error("span {begin}..{end} lies outside a text of {text_len} characters")]
    SpanOutOfRange { begin: usize, end: usize, text_len: usize },
    #[error("label {label:?} is not valid on layer {layer}")]
    InvalidLabel { layer: GoldLayer, label: String },
    #[error("source {source_id} has {available} documents in its {stratum} stratum, {needed} needed")]
    InsufficientStratum { source_id: String, stratum: &'static str, needed: usize, available: usize },
    #[error("{0}")]
    Format(String),
}
