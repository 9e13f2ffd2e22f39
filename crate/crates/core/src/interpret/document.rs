use sha2::{Digest, Sha256};

use crate::annotate::{Layer, LayeredDocument, StepRun, COMMIT_REF, TOOL_VERSION};
use crate::clock::Clock;
use crate::corpus::{BiographyEntry, PersonRecord};
use crate::graph::vocab::{bgn, ore, rdf};
use crate::graph::{build_provenance, Activity, Agent, AgentRole, Iris, Plan, PlanStep, ProvenanceRecord, Statement, Term};

use super::{Biographee, InterpretError, InterpretationResult, Interpreter};

pub const INTERPRET_STEP: &str = "interpret";

#[derive(Debug, Clone)]
pub struct InterpretOptions {
    pub iris: Iris,
    /// Makes activity iris deterministic; a random run id is used otherwise.
    pub iri_seed: Option<u64>,
    pub agents: Vec<Agent>,
    pub documentation: Option<String>,
    /// Copy opinion polarity onto mentions (experimental).
    pub polarity: bool,
}

impl Default for InterpretOptions {
    fn default() -> Self {
        Self::with_iris(Iris::default())
    }
}

impl InterpretOptions {
    pub fn with_iris(iris: Iris) -> Self {
        InterpretOptions {
            agents: default_agents(&iris),
            documentation: Some(format!("{}/docs/provenance", iris.base)),
            iris,
            iri_seed: None,
            polarity: false,
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.iri_seed = Some(seed);
        self
    }

    fn run_id(&self, entry_id: &str) -> String {
        match self.iri_seed {
            Some(seed) => {
                let digest = Sha256::digest(format!("{seed}:{entry_id}").as_bytes());
                digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
            }
            None => uuid::Uuid::new_v4().simple().to_string(),
        }
    }
}

pub fn default_agents(iris: &Iris) -> Vec<Agent> {
    vec![
        Agent {
            iri: iris.agent("bgf-developers"),
            role: AgentRole::Developer,
            contact: Some("mailto:maintainers@bgf.example.org".into()),
        },
        Agent { iri: iris.agent("operator"), role: AgentRole::Operator, contact: None },
    ]
}

fn plan_with_interpretation(lad: &LayeredDocument, inputs: &[Layer]) -> Plan {
    let mut plan = lad.plan.clone().unwrap_or_else(|| Plan {
        plan_iri: "urn:bgf:plan:recorded".into(),
        steps: lad
            .trace
            .iter()
            .map(|r| PlanStep {
                step_id: r.plan_step_id.clone(),
                name: r.step_name.clone(),
                expected_input_layers: r.input_layers.clone(),
                expected_output_layers: r.output_layers.clone(),
            })
            .collect(),
    });
    plan.steps.push(PlanStep {
        step_id: format!("s{:02}-{INTERPRET_STEP}", plan.steps.len() + 1),
        name: INTERPRET_STEP.into(),
        expected_input_layers: inputs.to_vec(),
        expected_output_layers: Vec::new(),
    });
    plan
}

/// Build the NLP description of one entry: direct links, events, relation
/// patterns, identity links and grounding, wrapped in provenance.
///
/// The entry's original description statements are never produced or
/// touched here; everything lands in the entry's NLP graph.
pub fn interpret_document(
    lad: &LayeredDocument,
    entry: &BiographyEntry,
    person: &PersonRecord,
    options: &InterpretOptions,
    clock: &Clock,
) -> Result<InterpretationResult, InterpretError> {
    if lad.doc_id != entry.entry_id {
        return Err(InterpretError::Mismatch(format!(
            "layered document {} does not annotate entry {}",
            lad.doc_id, entry.entry_id
        )));
    }
    if !person.entry_ids.contains(&entry.entry_id) {
        return Err(InterpretError::Mismatch(format!(
            "entry {} does not belong to person {}",
            entry.entry_id, person.person_id
        )));
    }
    lad.validate(entry.char_len())?;
    let started = clock.now();
    let iris = &options.iris;
    let biographee = Biographee {
        person_iri: iris.person(&person.person_id),
        gender: entry.person.gender,
        names: entry.person.names.clone(),
    };
    let mut it = Interpreter::new(lad, iris).with_polarity(options.polarity);
    it.step1_direct();
    it.step2_events();
    it.step3_relations();
    it.step4_pronouns(&biographee);
    it.ground_mentions()?;
    let ended = clock.now();

    let d = it.description_iri.clone();
    let g = it.graph.clone();
    let text = iris.text(&entry.entry_id);
    let agg = iris.aggregation(&person.person_id);
    let st = |s: &str, p: &str, o: Term| Statement::new(s, p, o, &g);
    let description_statements = vec![
        st(&d, rdf::TYPE, Term::iri(bgn::NLP_DESCRIPTION)),
        st(&d, rdf::TYPE, Term::iri(ore::PROXY)),
        st(&d, ore::PROXY_FOR, Term::iri(&biographee.person_iri)),
        st(&d, ore::PROXY_IN, Term::iri(&agg)),
        st(&agg, ore::AGGREGATES, Term::iri(&d)),
        st(&d, bgn::ENTRY_ID, Term::str(&entry.entry_id)),
        st(&d, bgn::SOURCE, Term::str(&entry.source_id)),
        st(&d, bgn::HAS_TEXT, Term::iri(&text)),
    ];

    let produced = lad.produced_layers();
    let inputs: Vec<Layer> = Layer::ALL.into_iter().filter(|l| produced.contains(l)).collect();
    let plan = plan_with_interpretation(lad, &inputs);
    let mut step_runs = lad.trace.clone();
    step_runs.push(StepRun {
        step_name: INTERPRET_STEP.into(),
        tool_version: TOOL_VERSION.into(),
        commit_ref: COMMIT_REF.into(),
        started_at: started,
        ended_at: ended,
        input_layers: inputs,
        output_layers: Vec::new(),
        plan_step_id: plan.steps.last().expect("interpret step").step_id.clone(),
    });
    let provenance = ProvenanceRecord {
        entity_iri: d.clone(),
        derived_from: vec![text.clone()],
        activity: Some(Activity {
            iri: iris.activity(&entry.entry_id, &options.run_id(&entry.entry_id)),
            started: lad.trace.first().map(|r| r.started_at).unwrap_or(started),
            ended,
            used: vec![text],
            step_runs,
            documentation: options.documentation.clone(),
        }),
        agents: options.agents.clone(),
        plan: Some(plan),
    };
    let provenance_statements = build_provenance(&provenance, &g)?;
    Ok(InterpretationResult {
        new_description_iri: d,
        graph: g,
        statements: it.statements,
        description_statements,
        provenance_statements,
        events: it.events,
        participants: it.participants,
        provenance,
    })
}
