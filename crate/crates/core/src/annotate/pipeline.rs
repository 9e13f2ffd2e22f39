use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::clock::Clock;
use crate::corpus::BiographyEntry;
use crate::graph::{Plan, PlanStep};

use super::{
    lemmatize_and_tag, resolve_event_coref, tag_concepts, tag_entities, tag_opinions, tag_predicates, tag_terms,
    tag_timex, tokenize, Layer, LayeredDocument, LexiconKind, Lexicons, PipelineError,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Commit the analyzers were built from; set `BGF_BUILD_COMMIT` at build time.
pub const COMMIT_REF: &str = match option_env!("BGF_BUILD_COMMIT") {
    Some(c) => c,
    None => "workspace",
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Tokenize,
    LemmatizeAndTag,
    TagTimex,
    TagEntities,
    TagTerms,
    TagConcepts,
    TagPredicates,
    ResolveEventCoref,
    TagOpinions,
}

impl StepKind {
    pub const DEFAULT: [StepKind; 9] = [
        StepKind::Tokenize,
        StepKind::LemmatizeAndTag,
        StepKind::TagTimex,
        StepKind::TagEntities,
        StepKind::TagTerms,
        StepKind::TagConcepts,
        StepKind::TagPredicates,
        StepKind::ResolveEventCoref,
        StepKind::TagOpinions,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Tokenize => "tokenize",
            StepKind::LemmatizeAndTag => "lemmatize_and_tag",
            StepKind::TagTimex => "tag_timex",
            StepKind::TagEntities => "tag_entities",
            StepKind::TagTerms => "tag_terms",
            StepKind::TagConcepts => "tag_concepts",
            StepKind::TagPredicates => "tag_predicates",
            StepKind::ResolveEventCoref => "resolve_event_coref",
            StepKind::TagOpinions => "tag_opinions",
        }
    }

    pub fn parse(s: &str) -> Option<StepKind> {
        StepKind::DEFAULT.into_iter().find(|k| k.name() == s)
    }

    pub fn inputs(&self) -> &'static [Layer] {
        match self {
            StepKind::Tokenize => &[],
            StepKind::LemmatizeAndTag => &[Layer::Tokens],
            StepKind::TagTimex | StepKind::TagEntities | StepKind::TagTerms | StepKind::TagConcepts => &[Layer::Terms],
            StepKind::TagPredicates => &[Layer::Terms, Layer::Concepts, Layer::Entities, Layer::Timexes],
            StepKind::ResolveEventCoref => &[Layer::Predicates, Layer::Timexes],
            StepKind::TagOpinions => &[Layer::Terms, Layer::Predicates, Layer::Entities],
        }
    }

    pub fn outputs(&self) -> &'static [Layer] {
        match self {
            StepKind::Tokenize => &[Layer::Tokens],
            StepKind::LemmatizeAndTag => &[Layer::Terms],
            StepKind::TagTimex => &[Layer::Timexes],
            StepKind::TagEntities => &[Layer::Entities],
            StepKind::TagTerms => &[Layer::TermTags],
            StepKind::TagConcepts => &[Layer::Concepts],
            StepKind::TagPredicates => &[Layer::Predicates],
            StepKind::ResolveEventCoref => &[Layer::CorefSets],
            StepKind::TagOpinions => &[Layer::Opinions],
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One executed analyzer, as recorded in the document trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRun {
    pub step_name: String,
    pub tool_version: String,
    pub commit_ref: String,
    pub started_at: DateTime<Utc>,
    pub ended_at: DateTime<Utc>,
    pub input_layers: Vec<Layer>,
    pub output_layers: Vec<Layer>,
    pub plan_step_id: String,
}

/// Ordered step list plus lexicon locations.
///
/// The TOML form is
///
/// ```toml
/// steps = ["tokenize", "lemmatize_and_tag"]
/// speech_frames = ["Statement"]
///
/// [lexicons]
/// gazetteer = "my-gazetteer.tsv"
/// ```
///
/// Lexicon paths are resolved against the config file's directory; kinds
/// not listed use the builtin tables.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub steps: Vec<StepKind>,
    pub lexicons: HashMap<LexiconKind, PathBuf>,
    pub speech_frames: Vec<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            steps: StepKind::DEFAULT.to_vec(),
            lexicons: HashMap::new(),
            speech_frames: vec!["Statement".to_string()],
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    steps: Option<Vec<String>>,
    #[serde(default)]
    lexicons: HashMap<String, PathBuf>,
    speech_frames: Option<Vec<String>>,
}

impl PipelineConfig {
    pub fn with_steps(steps: &[StepKind]) -> Self {
        PipelineConfig { steps: steps.to_vec(), ..Default::default() }
    }

    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self, PipelineError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        let mut config = PipelineConfig::default();
        if let Some(steps) = raw.steps {
            config.steps = steps
                .iter()
                .map(|s| StepKind::parse(s).ok_or_else(|| PipelineError::UnknownStep(s.clone())))
                .collect::<Result<_, _>>()?;
        }
        for (kind, path) in raw.lexicons {
            let kind = LexiconKind::ALL
                .into_iter()
                .find(|k| k.name() == kind)
                .ok_or_else(|| PipelineError::Config(format!("unknown lexicon kind {kind:?}")))?;
            config.lexicons.insert(kind, base_dir.join(path));
        }
        if let Some(frames) = raw.speech_frames {
            config.speech_frames = frames;
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Reject configs where a step reads a layer no earlier step produced.
    pub fn check_dependencies(&self) -> Result<(), PipelineError> {
        let mut produced: HashSet<Layer> = HashSet::new();
        let mut seen = HashSet::new();
        for step in &self.steps {
            if !seen.insert(*step) {
                return Err(PipelineError::DuplicateStep(step.name().to_string()));
            }
            if let Some(missing) = step.inputs().iter().find(|l| !produced.contains(l)) {
                return Err(PipelineError::Dependency { step: step.name().to_string(), missing: *missing });
            }
            produced.extend(step.outputs().iter().copied());
        }
        Ok(())
    }

    /// The plan the configured steps will be bound to.
    pub fn plan(&self) -> Plan {
        let names: Vec<&str> = self.steps.iter().map(|s| s.name()).collect();
        let digest = Sha256::digest(names.join(",").as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        Plan {
            plan_iri: format!("urn:bgf:plan:{hex}"),
            steps: self
                .steps
                .iter()
                .enumerate()
                .map(|(i, s)| PlanStep {
                    step_id: plan_step_id(i, *s),
                    name: s.name().to_string(),
                    expected_input_layers: s.inputs().to_vec(),
                    expected_output_layers: s.outputs().to_vec(),
                })
                .collect(),
        }
    }
}

fn plan_step_id(i: usize, step: StepKind) -> String {
    format!("s{:02}-{}", i + 1, step.name())
}

/// A configured, dependency-checked pipeline with its lexicons loaded.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub config: PipelineConfig,
    pub lexicons: Lexicons,
    plan: Plan,
    validate_between_steps: bool,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Result<Self, PipelineError> {
        config.check_dependencies()?;
        let lexicons = Lexicons::load(&config.lexicons)?;
        Ok(Self::with_lexicons(config, lexicons))
    }

    /// Use already-loaded lexicons; dependency order is still checked on `run`.
    pub fn with_lexicons(config: PipelineConfig, lexicons: Lexicons) -> Self {
        let plan = config.plan();
        Pipeline { config, lexicons, plan, validate_between_steps: false }
    }

    /// Run the layer validator after every step.
    pub fn validating(mut self, on: bool) -> Self {
        self.validate_between_steps = on;
        self
    }

    pub fn plan(&self) -> &Plan {
        &self.plan
    }

    pub fn run(&self, entry: &BiographyEntry, clock: &Clock) -> Result<LayeredDocument, PipelineError> {
        self.config.check_dependencies()?;
        let mut doc = LayeredDocument::new(entry.entry_id.clone());
        doc.plan = Some(self.plan.clone());
        let text_len = entry.char_len();
        for (i, step) in self.config.steps.iter().enumerate() {
            let before: Vec<_> = Layer::ALL.iter().map(|l| doc.layer_json(*l)).collect();
            let started_at = clock.now();
            self.apply(*step, entry, &mut doc);
            let ended_at = clock.now();
            for (l, prev) in Layer::ALL.iter().zip(before) {
                if !step.outputs().contains(l) && doc.layer_json(*l) != prev {
                    return Err(PipelineError::UndeclaredWrite { step: step.name().to_string(), layer: *l });
                }
            }
            if self.validate_between_steps {
                doc.validate(text_len)
                    .map_err(|source| PipelineError::Integrity { step: step.name().to_string(), source })?;
            }
            doc.trace.push(StepRun {
                step_name: step.name().to_string(),
                tool_version: TOOL_VERSION.to_string(),
                commit_ref: COMMIT_REF.to_string(),
                started_at,
                ended_at,
                input_layers: step.inputs().to_vec(),
                output_layers: step.outputs().to_vec(),
                plan_step_id: plan_step_id(i, *step),
            });
        }
        Ok(doc)
    }

    fn apply(&self, step: StepKind, entry: &BiographyEntry, doc: &mut LayeredDocument) {
        let lex = &self.lexicons;
        match step {
            StepKind::Tokenize => doc.tokens = tokenize(&entry.text, &lex.abbreviations),
            StepKind::LemmatizeAndTag => doc.terms = lemmatize_and_tag(&doc.tokens, lex),
            StepKind::TagTimex => doc.timexes = tag_timex(&doc.index(), lex),
            StepKind::TagEntities => doc.entities = tag_entities(&doc.index(), lex),
            StepKind::TagTerms => doc.term_tags = tag_terms(&doc.terms, lex),
            StepKind::TagConcepts => doc.concepts = tag_concepts(&doc.terms, lex),
            StepKind::TagPredicates => doc.predicates = tag_predicates(&doc.index(), lex),
            StepKind::ResolveEventCoref => doc.coref_sets = resolve_event_coref(&doc.index()),
            StepKind::TagOpinions => doc.opinions = tag_opinions(&doc.index(), lex, &self.config.speech_frames),
        }
    }
}

/// Annotate one entry with a freshly loaded pipeline.
pub fn run_pipeline(entry: &BiographyEntry, config: &PipelineConfig, clock: &Clock) -> Result<LayeredDocument, PipelineError> {
    Pipeline::new(config.clone())?.run(entry, clock)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::RoleLabel;
    use crate::corpus::{Gender, PartialDate};

    fn annotate(text: &str) -> LayeredDocument {
        let entry = BiographyEntry::new("t1", "test", "Test", text).with_gender(Gender::Female);
        Pipeline::new(PipelineConfig::default()).unwrap().validating(true).run(&entry, &Clock::epoch()).unwrap()
    }

    fn role_surface(doc: &LayeredDocument, p: usize, label: RoleLabel) -> Option<String> {
        let idx = doc.index();
        let role = doc.predicates[p].roles.iter().find(|r| r.label == label)?;
        Some(role.term_ids.iter().map(|t| idx.surface(t)).collect::<Vec<_>>().join(" "))
    }

    #[test]
    fn marriage_sentence_roles() {
        let doc = annotate("Zij huwde Frederik in 1490 te Gouda.");
        assert_eq!(doc.predicates.len(), 1);
        assert_eq!(doc.predicates[0].frame_id.as_deref(), Some("Marriage"));
        assert_eq!(role_surface(&doc, 0, RoleLabel::Arg0).as_deref(), Some("Zij"));
        assert_eq!(role_surface(&doc, 0, RoleLabel::Arg1).as_deref(), Some("Frederik"));
        assert_eq!(role_surface(&doc, 0, RoleLabel::Time).as_deref(), Some("1490"));
        assert_eq!(role_surface(&doc, 0, RoleLabel::Location).as_deref(), Some("Gouda"));
    }

    #[test]
    fn verbless_sentence_has_no_predicates() {
        assert!(annotate("Een geleerde uit Rotterdam.").predicates.is_empty());
    }

    #[test]
    fn unframed_verb_still_gets_roles() {
        let doc = annotate("Zij sprak in Leiden.");
        assert_eq!(doc.predicates.len(), 1);
        assert_eq!(doc.predicates[0].frame_id, None);
        assert_eq!(role_surface(&doc, 0, RoleLabel::Arg0).as_deref(), Some("Zij"));
        assert_eq!(role_surface(&doc, 0, RoleLabel::Location).as_deref(), Some("Leiden"));
    }

    #[test]
    fn coref_merges_same_year_marriages_only() {
        let same = annotate("Zij huwde in 1490. Zij trouwde in 1490.");
        assert_eq!(same.coref_sets, vec![vec!["pr1".to_string(), "pr2".to_string()]]);
        let differ = annotate("Zij huwde in 1490. Zij trouwde in 1492.");
        assert_eq!(differ.coref_sets.len(), 2);
        let one = annotate("Zij huwde in 1490.");
        assert_eq!(one.coref_sets, vec![vec!["pr1".to_string()]]);
    }

    #[test]
    fn opinion_holder_from_speech_predicate() {
        let authorial = annotate("Zij was briljant.");
        assert_eq!(authorial.opinions.len(), 1);
        assert_eq!(authorial.opinions[0].polarity, crate::annotate::Polarity::Pos);
        assert_eq!(authorial.opinions[0].holder, None);
        let quoted = annotate("Erasmus zei dat zij briljant was.");
        let holder = quoted.opinions[0].holder.as_ref().expect("holder");
        assert_eq!(quoted.index().surface(&holder[0]), "Erasmus");
        assert!(annotate("de tafel").opinions.is_empty());
    }

    #[test]
    fn default_config_runs_every_step() {
        let doc = annotate("Zij huwde in 1608 te Veere.");
        assert_eq!(doc.trace.len(), StepKind::DEFAULT.len());
        assert_eq!(doc.produced_layers().len(), Layer::ALL.len());
        assert_eq!(doc.timexes[0].value, PartialDate::year(1608));
        for run in &doc.trace {
            assert!(run.started_at <= run.ended_at);
            assert!(run.input_layers.iter().all(|l| !run.output_layers.contains(l)));
            assert!(doc.plan.as_ref().unwrap().position(&run.plan_step_id).is_some());
        }
    }

    #[test]
    fn tokenize_only_config() {
        let entry = BiographyEntry::new("t1", "test", "Test", "Zij huwde.");
        let doc = run_pipeline(&entry, &PipelineConfig::with_steps(&[StepKind::Tokenize]), &Clock::epoch()).unwrap();
        assert_eq!(doc.trace.len(), 1);
        assert_eq!(doc.tokens.len(), 3);
        assert!(doc.terms.is_empty());
    }

    #[test]
    fn out_of_order_config_is_rejected_before_running() {
        let cfg = PipelineConfig::with_steps(&[StepKind::TagPredicates, StepKind::Tokenize]);
        assert!(matches!(Pipeline::new(cfg), Err(PipelineError::Dependency { .. })));
    }

    #[test]
    fn missing_lexicon_names_the_path() {
        let text = "[lexicons]\ngazetteer = \"nowhere.tsv\"\n";
        let cfg = PipelineConfig::from_toml(text, Path::new("/tmp/bgf-none")).unwrap();
        let err = Pipeline::new(cfg).unwrap_err().to_string();
        assert!(err.contains("/tmp/bgf-none/nowhere.tsv"), "{err}");
    }

    #[test]
    fn identical_input_gives_identical_layers() {
        let a = annotate("Hij overleed op 28 augustus 1645 te Rostock.");
        let b = annotate("Hij overleed op 28 augustus 1645 te Rostock.");
        assert_eq!(a, b);
    }
}
