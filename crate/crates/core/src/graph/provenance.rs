use std::collections::HashSet;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use crate::annotate::{Layer, StepRun};

use super::vocab::{bgn, pplan, prov, rdf};
use super::{GraphError, Statement, Store, Term};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    pub step_id: String,
    pub name: String,
    pub expected_input_layers: Vec<Layer>,
    pub expected_output_layers: Vec<Layer>,
}

/// The intended sequence of processing steps an activity follows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    pub plan_iri: String,
    pub steps: Vec<PlanStep>,
}

impl Plan {
    pub fn step_iri(&self, step_id: &str) -> String {
        format!("{}/{}", self.plan_iri, step_id)
    }

    pub fn position(&self, step_id: &str) -> Option<usize> {
        self.steps.iter().position(|s| s.step_id == step_id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AgentRole {
    Developer,
    Operator,
}

impl AgentRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            AgentRole::Developer => "developer",
            AgentRole::Operator => "operator",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "developer" => Some(AgentRole::Developer),
            "operator" => Some(AgentRole::Operator),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agent {
    pub iri: String,
    pub role: AgentRole,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activity {
    pub iri: String,
    pub started: DateTime<Utc>,
    pub ended: DateTime<Utc>,
    pub used: Vec<String>,
    pub step_runs: Vec<StepRun>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub documentation: Option<String>,
}

/// Derivation, generating activity, responsible agents and plan of one entity.
///
/// Entities converted without any processing (original metadata) carry only
/// the derivation part; `activity`, `agents` and `plan` stay empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    pub entity_iri: String,
    pub derived_from: Vec<String>,
    pub activity: Option<Activity>,
    pub agents: Vec<Agent>,
    pub plan: Option<Plan>,
}

impl ProvenanceRecord {
    pub fn data_only(entity_iri: impl Into<String>, derived_from: Vec<String>) -> Self {
        ProvenanceRecord { entity_iri: entity_iri.into(), derived_from, activity: None, agents: Vec::new(), plan: None }
    }

    /// Set-valued fields sorted, the form `read_provenance` returns.
    pub fn normalized(mut self) -> Self {
        self.derived_from.sort();
        self.derived_from.dedup();
        if let Some(a) = &mut self.activity {
            a.used.sort();
            a.used.dedup();
        }
        self.agents.sort_by(|a, b| a.iri.cmp(&b.iri));
        self.agents.dedup_by(|a, b| a.iri == b.iri);
        self
    }

    /// Every step run names a plan step, in plan order.
    pub fn check(&self) -> Result<(), GraphError> {
        let Some(activity) = &self.activity else { return Ok(()) };
        let mut last: Option<usize> = None;
        for run in &activity.step_runs {
            let pos = self
                .plan
                .as_ref()
                .and_then(|p| p.position(&run.plan_step_id))
                .ok_or_else(|| GraphError::DanglingPlanStep(run.plan_step_id.clone()))?;
            if last.is_some_and(|l| pos <= l) {
                return Err(GraphError::PlanOrder(run.plan_step_id.clone()));
            }
            last = Some(pos);
        }
        Ok(())
    }
}

pub fn timestamp(t: &DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::AutoSi, true)
}

fn layers_literal(layers: &[Layer]) -> Term {
    Term::str(layers.iter().map(|l| l.as_str()).collect::<Vec<_>>().join(","))
}

fn parse_layers(t: Option<Term>) -> Option<Vec<Layer>> {
    let s = t?.as_str()?.to_string();
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(Layer::parse).collect()
}

pub fn sub_activity_iri(activity: &str, index: usize) -> String {
    format!("{activity}/step/{}", index + 1)
}

/// Emit the data, process and responsibility views plus plan statements.
pub fn build_provenance(record: &ProvenanceRecord, graph: &str) -> Result<Vec<Statement>, GraphError> {
    record.check()?;
    let e = record.entity_iri.as_str();
    let st = |s: &str, p: &str, o: Term| Statement::new(s, p, o, graph);
    let mut out = vec![st(e, rdf::TYPE, Term::iri(prov::ENTITY))];
    for d in &record.derived_from {
        out.push(st(e, prov::WAS_DERIVED_FROM, Term::iri(d)));
    }
    let Some(activity) = &record.activity else { return Ok(out) };
    let a = activity.iri.as_str();
    out.push(st(e, prov::WAS_GENERATED_BY, Term::iri(a)));
    out.push(st(a, rdf::TYPE, Term::iri(prov::ACTIVITY)));
    out.push(st(a, prov::STARTED_AT_TIME, Term::str(timestamp(&activity.started))));
    out.push(st(a, prov::ENDED_AT_TIME, Term::str(timestamp(&activity.ended))));
    for u in &activity.used {
        out.push(st(a, prov::USED, Term::iri(u)));
    }
    if let Some(doc) = &activity.documentation {
        out.push(st(a, bgn::DOCUMENTATION, Term::iri(doc)));
    }
    for (i, run) in activity.step_runs.iter().enumerate() {
        let sa = sub_activity_iri(a, i);
        let plan = record.plan.as_ref().expect("checked above");
        out.push(st(&sa, rdf::TYPE, Term::iri(prov::ACTIVITY)));
        out.push(st(&sa, bgn::PART_OF, Term::iri(a)));
        out.push(st(&sa, bgn::STEP_NAME, Term::str(&run.step_name)));
        out.push(st(&sa, bgn::TOOL_VERSION, Term::str(&run.tool_version)));
        out.push(st(&sa, bgn::COMMIT, Term::str(&run.commit_ref)));
        out.push(st(&sa, prov::STARTED_AT_TIME, Term::str(timestamp(&run.started_at))));
        out.push(st(&sa, prov::ENDED_AT_TIME, Term::str(timestamp(&run.ended_at))));
        out.push(st(&sa, bgn::STEP_INDEX, Term::int(i as i64 + 1)));
        out.push(st(&sa, bgn::INPUT_LAYERS, layers_literal(&run.input_layers)));
        out.push(st(&sa, bgn::OUTPUT_LAYERS, layers_literal(&run.output_layers)));
        out.push(st(&sa, pplan::CORRESPONDS_TO_STEP, Term::iri(plan.step_iri(&run.plan_step_id))));
        if i > 0 {
            out.push(st(&sa, prov::WAS_INFORMED_BY, Term::iri(sub_activity_iri(a, i - 1))));
        }
    }
    for agent in &record.agents {
        out.push(st(a, prov::WAS_ASSOCIATED_WITH, Term::iri(&agent.iri)));
        out.push(st(&agent.iri, rdf::TYPE, Term::iri(prov::AGENT)));
        out.push(st(&agent.iri, bgn::AGENT_ROLE, Term::str(agent.role.as_str())));
        if let Some(c) = &agent.contact {
            out.push(st(&agent.iri, bgn::CONTACT, Term::str(c)));
        }
    }
    if let Some(plan) = &record.plan {
        let p = plan.plan_iri.as_str();
        out.push(st(p, rdf::TYPE, Term::iri(pplan::PLAN)));
        out.push(st(a, prov::HAD_PLAN, Term::iri(p)));
        for (i, step) in plan.steps.iter().enumerate() {
            let si = plan.step_iri(&step.step_id);
            out.push(st(&si, rdf::TYPE, Term::iri(pplan::STEP)));
            out.push(st(&si, pplan::IS_STEP_OF_PLAN, Term::iri(p)));
            out.push(st(&si, bgn::STEP_INDEX, Term::int(i as i64 + 1)));
            out.push(st(&si, bgn::STEP_ID, Term::str(&step.step_id)));
            out.push(st(&si, bgn::STEP_NAME, Term::str(&step.name)));
            out.push(st(&si, bgn::EXPECTS_INPUT, layers_literal(&step.expected_input_layers)));
            out.push(st(&si, bgn::EXPECTS_OUTPUT, layers_literal(&step.expected_output_layers)));
            if i > 0 {
                out.push(st(&si, pplan::IS_PRECEDED_BY, Term::iri(plan.step_iri(&plan.steps[i - 1].step_id))));
            }
        }
    }
    Ok(out)
}

fn iris(store: &Store, s: &str, p: &str) -> Vec<String> {
    store.objects(s, p).into_iter().filter_map(|t| t.as_iri().map(str::to_string)).collect()
}

fn string(store: &Store, s: &str, p: &str) -> Option<String> {
    store.object(s, p)?.as_str().map(str::to_string)
}

fn instant(store: &Store, s: &str, p: &str) -> Option<DateTime<Utc>> {
    DateTime::parse_from_rfc3339(&string(store, s, p)?).ok().map(|d| d.with_timezone(&Utc))
}

fn index_of(store: &Store, s: &str) -> i64 {
    store.object(s, bgn::STEP_INDEX).and_then(|t| t.as_int()).unwrap_or(i64::MAX)
}

/// Reconstruct the provenance record of an entity from the store.
pub fn read_provenance(store: &Store, entity_iri: &str) -> Option<ProvenanceRecord> {
    if !store.has_type(entity_iri, prov::ENTITY) {
        return None;
    }
    let derived_from = iris(store, entity_iri, prov::WAS_DERIVED_FROM);
    let Some(a) = iris(store, entity_iri, prov::WAS_GENERATED_BY).into_iter().next() else {
        return Some(ProvenanceRecord::data_only(entity_iri, derived_from));
    };
    let plan = iris(store, &a, prov::HAD_PLAN).into_iter().next().map(|p| {
        let mut steps: Vec<String> = store.subjects(pplan::IS_STEP_OF_PLAN, &Term::iri(&p));
        steps.sort_by_key(|s| index_of(store, s));
        Plan {
            steps: steps
                .iter()
                .map(|s| PlanStep {
                    step_id: string(store, s, bgn::STEP_ID).unwrap_or_default(),
                    name: string(store, s, bgn::STEP_NAME).unwrap_or_default(),
                    expected_input_layers: parse_layers(store.object(s, bgn::EXPECTS_INPUT)).unwrap_or_default(),
                    expected_output_layers: parse_layers(store.object(s, bgn::EXPECTS_OUTPUT)).unwrap_or_default(),
                })
                .collect(),
            plan_iri: p,
        }
    });
    let mut subs: Vec<String> = store.subjects(bgn::PART_OF, &Term::iri(&a));
    subs.sort_by_key(|s| index_of(store, s));
    let step_runs = subs
        .iter()
        .map(|s| {
            let step_iri = iris(store, s, pplan::CORRESPONDS_TO_STEP).into_iter().next();
            Some(StepRun {
                step_name: string(store, s, bgn::STEP_NAME)?,
                tool_version: string(store, s, bgn::TOOL_VERSION)?,
                commit_ref: string(store, s, bgn::COMMIT)?,
                started_at: instant(store, s, prov::STARTED_AT_TIME)?,
                ended_at: instant(store, s, prov::ENDED_AT_TIME)?,
                input_layers: parse_layers(store.object(s, bgn::INPUT_LAYERS))?,
                output_layers: parse_layers(store.object(s, bgn::OUTPUT_LAYERS))?,
                plan_step_id: string(store, &step_iri?, bgn::STEP_ID)?,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    let agents = iris(store, &a, prov::WAS_ASSOCIATED_WITH)
        .into_iter()
        .map(|iri| {
            Some(Agent {
                role: AgentRole::parse(&string(store, &iri, bgn::AGENT_ROLE)?)?,
                contact: string(store, &iri, bgn::CONTACT),
                iri,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    let activity = Activity {
        started: instant(store, &a, prov::STARTED_AT_TIME)?,
        ended: instant(store, &a, prov::ENDED_AT_TIME)?,
        used: iris(store, &a, prov::USED),
        documentation: iris(store, &a, bgn::DOCUMENTATION).into_iter().next(),
        step_runs,
        iri: a,
    };
    Some(ProvenanceRecord { entity_iri: entity_iri.to_string(), derived_from, activity: Some(activity), agents, plan })
}

/// Plan step ids of a record that are not reachable from any run.
pub fn unexecuted_steps(record: &ProvenanceRecord) -> Vec<String> {
    let ran: HashSet<&str> = record
        .activity
        .iter()
        .flat_map(|a| a.step_runs.iter().map(|r| r.plan_step_id.as_str()))
        .collect();
    record
        .plan
        .iter()
        .flat_map(|p| p.steps.iter())
        .filter(|s| !ran.contains(s.step_id.as_str()))
        .map(|s| s.step_id.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::Clock;

    fn run(i: usize, name: &str, clock: &Clock) -> StepRun {
        StepRun {
            step_name: name.into(),
            tool_version: "1.2.0".into(),
            commit_ref: "abc123".into(),
            started_at: clock.now(),
            ended_at: clock.now(),
            input_layers: if i == 0 { vec![] } else { vec![Layer::Tokens] },
            output_layers: vec![Layer::ALL[i]],
            plan_step_id: format!("s{i}"),
        }
    }

    pub(crate) fn record(n: usize) -> ProvenanceRecord {
        let clock = Clock::epoch();
        let names = ["tokenize", "lemmatize_and_tag", "tag_timex"];
        let step_runs: Vec<_> = (0..n).map(|i| run(i, names[i], &clock)).collect();
        let plan = Plan {
            plan_iri: "urn:bgf:plan:test".into(),
            steps: step_runs
                .iter()
                .map(|r| PlanStep {
                    step_id: r.plan_step_id.clone(),
                    name: r.step_name.clone(),
                    expected_input_layers: r.input_layers.clone(),
                    expected_output_layers: r.output_layers.clone(),
                })
                .collect(),
        };
        ProvenanceRecord {
            entity_iri: "https://x.org/description/e1/nlp".into(),
            derived_from: vec!["https://x.org/text/e1".into()],
            activity: Some(Activity {
                iri: "https://x.org/activity/e1/r".into(),
                started: clock.now(),
                ended: clock.now(),
                used: vec!["https://x.org/text/e1".into()],
                step_runs,
                documentation: None,
            }),
            agents: vec![Agent { iri: "https://x.org/agent/dev".into(), role: AgentRole::Developer, contact: None }],
            plan: Some(plan),
        }
    }

    #[test]
    fn three_runs_one_agent_closed_form_count_and_readback() {
        let rec = record(3);
        let sts = build_provenance(&rec, "https://x.org/g").unwrap();
        // data (type, derived, generated) + activity (type, start, end, used)
        // + runs (11 each, plus an informed-by link for all but the first)
        // + agent (associated, type, role) + plan (type, hadPlan) + plan steps
        // (7 each, plus a preceded-by link for all but the first)
        let expected = 3 + 4 + (3 * 11 + 2) + 3 + 2 + (3 * 7 + 2);
        assert_eq!(sts.len(), expected);
        let store = Store::from_statements(sts).unwrap();
        assert_eq!(read_provenance(&store, &rec.entity_iri), Some(rec.normalized()));
    }

    #[test]
    fn version_and_commit_literals_are_verbatim() {
        let sts = build_provenance(&record(1), "https://x.org/g").unwrap();
        assert!(sts.iter().any(|s| s.predicate == bgn::TOOL_VERSION && s.object == Term::str("1.2.0")));
        assert!(sts.iter().any(|s| s.predicate == bgn::COMMIT && s.object == Term::str("abc123")));
    }

    #[test]
    fn zero_steps_gives_data_view_and_top_activity() {
        let mut rec = record(0);
        rec.agents.clear();
        rec.plan = None;
        let sts = build_provenance(&rec, "https://x.org/g").unwrap();
        assert_eq!(sts.len(), 3 + 4);
    }

    #[test]
    fn dangling_plan_step_is_rejected() {
        let mut rec = record(2);
        rec.plan.as_mut().unwrap().steps.remove(1);
        assert!(matches!(build_provenance(&rec, "g"), Err(GraphError::DanglingPlanStep(id)) if id == "s1"));
    }
}
