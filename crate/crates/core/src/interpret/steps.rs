use std::collections::{BTreeSet, HashMap, HashSet};

use crate::annotate::{Entity, EntityClass, LadIndex, LayeredDocument, Pos, Role, RoleLabel, TagKind, Timex};
use crate::corpus::Gender;
use crate::graph::vocab::{bgn, gaf, owl, pb, rdf, sem};
use crate::graph::{Iris, Statement, Term};

use super::{EventInstance, EventRole, InterpretError, Mention, ParticipantInstance, ParticipantKind, Relation, RoleTarget};

/// What an annotated role becomes in the event model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoleConversion {
    Arg(Relation),
    /// `hasTime` with the value of the timex at this index.
    Time(usize),
    /// `hasPlace` over these terms.
    Place(Vec<String>),
    Drop,
}

fn intersects(a: &[String], b: &[String]) -> bool {
    a.iter().any(|x| b.contains(x))
}

/// True when an entity shares a term with some timex; such entities never
/// stand for a place or widen a participant, since the timex wins.
pub fn touches_timex(entity: &Entity, timexes: &[Timex]) -> bool {
    timexes.iter().any(|t| intersects(&t.term_ids, &entity.term_ids))
}

/// Apply the timex/NER-over-SRL precedence to one role.
///
/// Argument roles pass through. A `location` or `time` role whose span
/// intersects a timex becomes `hasTime` with the first such timex; failing
/// that, one intersecting a LOC entity (that shares no term with a timex)
/// becomes `hasPlace` over the entity. A `location` role with neither keeps
/// its own span as place, and a `time` role with neither is dropped.
pub fn convert_role(role: &Role, timexes: &[Timex], entities: &[Entity]) -> RoleConversion {
    let arg = match role.label {
        RoleLabel::Arg0 => Some(Relation::Arg0),
        RoleLabel::Arg1 => Some(Relation::Arg1),
        RoleLabel::Arg2 => Some(Relation::Arg2),
        RoleLabel::Location | RoleLabel::Time => None,
    };
    if let Some(rel) = arg {
        return RoleConversion::Arg(rel);
    }
    if let Some(i) = timexes.iter().position(|t| intersects(&t.term_ids, &role.term_ids)) {
        return RoleConversion::Time(i);
    }
    if let Some(e) = entities
        .iter()
        .find(|e| e.class == EntityClass::LOC && intersects(&e.term_ids, &role.term_ids) && !touches_timex(e, timexes))
    {
        return RoleConversion::Place(e.term_ids.clone());
    }
    match role.label {
        RoleLabel::Location => RoleConversion::Place(role.term_ids.clone()),
        _ => RoleConversion::Drop,
    }
}

/// The person a biography is about, as seen by step 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biographee {
    pub person_iri: String,
    pub gender: Gender,
    pub names: Vec<String>,
}

fn last_word(s: &str) -> Option<String> {
    s.split_whitespace().last().map(str::to_lowercase)
}

/// Whether a name mention refers to the biographee: full match or surname match, case-insensitive.
pub fn name_matches(surface: &str, names: &[String]) -> bool {
    let s = surface.trim().to_lowercase();
    if s.is_empty() {
        return false;
    }
    names.iter().any(|n| {
        let n = n.trim().to_lowercase();
        !n.is_empty() && (n == s || last_word(&n) == last_word(&s))
    })
}

/// Incrementally builds the NLP description of one document.
///
/// Instances are keyed by their term set, so a span mentioned as an event
/// argument and again in a relation pattern is one instance.
pub struct Interpreter<'a> {
    pub lad: &'a LayeredDocument,
    index: LadIndex<'a>,
    iris: &'a Iris,
    pub description_iri: String,
    pub graph: String,
    pub participants: Vec<ParticipantInstance>,
    pub events: Vec<EventInstance>,
    pub statements: Vec<Statement>,
    registry: HashMap<Vec<String>, usize>,
    counters: HashMap<&'static str, usize>,
    with_polarity: bool,
}

impl<'a> Interpreter<'a> {
    pub fn new(lad: &'a LayeredDocument, iris: &'a Iris) -> Self {
        Interpreter {
            lad,
            index: lad.index(),
            iris,
            description_iri: iris.nlp_description(&lad.doc_id),
            graph: iris.nlp_graph(&lad.doc_id),
            participants: Vec::new(),
            events: Vec::new(),
            statements: Vec::new(),
            registry: HashMap::new(),
            counters: HashMap::new(),
            with_polarity: false,
        }
    }

    /// Copy opinion polarity onto mentions (experimental).
    pub fn with_polarity(mut self, on: bool) -> Self {
        self.with_polarity = on;
        self
    }

    fn st(&self, s: &str, p: &str, o: Term) -> Statement {
        Statement::new(s, p, o, &self.graph)
    }

    fn mint(&mut self, layer: &'static str) -> String {
        let n = self.counters.entry(layer).or_insert(0);
        *n += 1;
        self.iris.instance(&self.lad.doc_id, layer, *n)
    }

    fn mention(&self, term_ids: &[String]) -> Option<Mention> {
        let (begin, end) = self.index.span_of(term_ids)?;
        let terms = self.index.sorted_terms(term_ids);
        let head = terms.last()?;
        let polarity = if self.with_polarity {
            self.lad.opinions.iter().find(|o| intersects(&o.term_ids, term_ids)).map(|o| o.polarity)
        } else {
            None
        };
        Some(Mention {
            doc_id: self.lad.doc_id.clone(),
            begin,
            end,
            lemma: self.index.joined_lemma(term_ids),
            pos: head.pos,
            polarity,
        })
    }

    fn surface(&self, term_ids: &[String]) -> String {
        self.index.sorted_terms(term_ids).iter().map(|t| self.index.surface(&t.id)).collect::<Vec<_>>().join(" ")
    }

    fn entity_of(&self, term_ids: &[String]) -> Option<&'a Entity> {
        let lad = self.lad;
        lad.entities.iter().find(|e| intersects(&e.term_ids, term_ids) && !touches_timex(e, &lad.timexes))
    }

    /// Instance for a span, preferring the entity it overlaps.
    fn participant(&mut self, span: &[String]) -> usize {
        let (terms, kind, layer) = match self.entity_of(span) {
            Some(e) => {
                let kind = match e.class {
                    EntityClass::PER => ParticipantKind::Person,
                    EntityClass::LOC => ParticipantKind::Location,
                    EntityClass::ORG => ParticipantKind::Organization,
                    EntityClass::MISC => ParticipantKind::Other,
                };
                (e.term_ids.clone(), kind, "entities")
            }
            None => (span.to_vec(), ParticipantKind::Other, "terms"),
        };
        let key: Vec<String> = self.index.sorted_terms(&terms).iter().map(|t| t.id.clone()).collect();
        if let Some(&i) = self.registry.get(&key) {
            return i;
        }
        let sorted = self.index.sorted_terms(&key);
        let pronoun_gender = match sorted.as_slice() {
            [t] if t.pos == Pos::Pron => Some(t.feature("gender").and_then(Gender::parse).unwrap_or(Gender::Unknown)),
            _ => None,
        };
        let family = sorted.iter().any(|t| {
            self.lad.term_tags.iter().any(|tag| tag.term_id == t.id && tag.tag.kind == TagKind::Family)
        });
        let kind = if pronoun_gender.is_some() || family { ParticipantKind::Person } else { kind };
        let iri = self.mint(layer);
        let label = self.surface(&key);
        let mentions = self.mention(&key).into_iter().collect();
        let class = match kind {
            ParticipantKind::Person => bgn::PERSON,
            ParticipantKind::Location => bgn::LOCATION,
            ParticipantKind::Organization => bgn::ORGANIZATION,
            ParticipantKind::Other => bgn::THING,
        };
        self.statements.push(self.st(&iri, rdf::TYPE, Term::iri(class)));
        self.statements.push(self.st(&iri, bgn::LABEL, Term::str(&label)));
        self.participants.push(ParticipantInstance {
            iri,
            kind,
            label,
            term_ids: key.clone(),
            pronoun_gender,
            same_as: None,
            mentions,
        });
        self.registry.insert(key, self.participants.len() - 1);
        self.participants.len() - 1
    }

    /// Link the description to every concept, lemma and frame in the document.
    pub fn step1_direct(&mut self) -> Vec<Statement> {
        let mut objects: BTreeSet<String> = BTreeSet::new();
        for c in &self.lad.concepts {
            objects.insert(self.iris.concept(&c.concept_id));
        }
        for t in &self.lad.terms {
            if t.pos != Pos::Punct {
                objects.insert(self.iris.lemma(&t.lemma));
            }
        }
        for p in &self.lad.predicates {
            if let Some(f) = &p.frame_id {
                objects.insert(self.iris.frame(f));
            }
        }
        let out: Vec<Statement> =
            objects.into_iter().map(|o| self.st(&self.description_iri, bgn::INCLUDES, Term::Iri(o))).collect();
        self.statements.extend(out.iter().cloned());
        out
    }

    /// One event per coreference set, with roles converted under precedence.
    pub fn step2_events(&mut self) -> Vec<EventInstance> {
        let sets: Vec<Vec<String>> = if self.lad.coref_sets.is_empty() {
            self.lad.predicates.iter().map(|p| vec![p.id.clone()]).collect()
        } else {
            self.lad.coref_sets.clone()
        };
        let mut created = Vec::new();
        for set in sets {
            let preds: Vec<_> = set.iter().filter_map(|id| self.lad.predicates.iter().find(|p| &p.id == id)).collect();
            let Some(first) = preds.first() else { continue };
            let iri = self.mint("events");
            let mut roles: Vec<EventRole> = Vec::new();
            let mut time_mention = None;
            let mut mentions = Vec::new();
            for p in &preds {
                mentions.extend(self.mention(std::slice::from_ref(&p.term_id)));
                for role in &p.roles {
                    let converted = convert_role(role, &self.lad.timexes, &self.lad.entities);
                    let new = match converted {
                        RoleConversion::Arg(rel) => {
                            let i = self.participant(&role.term_ids);
                            EventRole { relation: rel, target: RoleTarget::Instance(self.participants[i].iri.clone()) }
                        }
                        RoleConversion::Time(t) => {
                            if roles.iter().any(|r| r.relation == Relation::HasTime) {
                                continue;
                            }
                            let tmx = &self.lad.timexes[t];
                            time_mention = self.mention(&tmx.term_ids);
                            EventRole { relation: Relation::HasTime, target: RoleTarget::Date(tmx.value) }
                        }
                        RoleConversion::Place(terms) => {
                            let i = self.participant(&terms);
                            EventRole {
                                relation: Relation::HasPlace,
                                target: RoleTarget::Instance(self.participants[i].iri.clone()),
                            }
                        }
                        RoleConversion::Drop => continue,
                    };
                    if !roles.contains(&new) {
                        roles.push(new);
                    }
                }
            }
            let event = EventInstance {
                iri,
                concept_id: first.concept_id.clone(),
                frame_id: first.frame_id.clone(),
                predicate_ids: preds.iter().map(|p| p.id.clone()).collect(),
                roles,
                mentions,
                time_mention,
            };
            self.emit_event(&event);
            created.push(event.clone());
            self.events.push(event);
        }
        created
    }

    fn emit_event(&mut self, e: &EventInstance) {
        let mut out = vec![
            self.st(&self.description_iri, bgn::INCLUDES, Term::iri(&e.iri)),
            self.st(&e.iri, rdf::TYPE, Term::iri(sem::EVENT)),
        ];
        if let Some(c) = &e.concept_id {
            out.push(self.st(&e.iri, rdf::TYPE, Term::iri(self.iris.concept(c))));
        }
        if let Some(f) = &e.frame_id {
            out.push(self.st(&e.iri, rdf::TYPE, Term::iri(self.iris.frame(f))));
        }
        for r in &e.roles {
            let p = match r.relation {
                Relation::Arg0 => pb::ARG0,
                Relation::Arg1 => pb::ARG1,
                Relation::Arg2 => pb::ARG2,
                Relation::HasTime => sem::HAS_TIME,
                Relation::HasPlace => sem::HAS_PLACE,
            };
            let o = match &r.target {
                RoleTarget::Instance(i) => Term::iri(i),
                RoleTarget::Date(d) => Term::date(*d),
            };
            out.push(self.st(&e.iri, p, o));
        }
        if let Some(m) = &e.time_mention {
            let miri = self.iris.mention(&m.doc_id, m.begin, m.end);
            out.push(self.st(&e.iri, bgn::TIME_DENOTED_BY, Term::iri(&miri)));
            out.extend(mention_node(&miri, m, &self.graph));
        }
        self.statements.extend(out);
    }

    /// Family and profession patterns over sentence-local term order.
    pub fn step3_relations(&mut self) -> Vec<Statement> {
        let start = self.statements.len();
        let lad = self.lad;
        let terms = &lad.terms;
        let sentences: Vec<Option<usize>> = terms.iter().map(|t| self.index.sentence_of(&t.id)).collect();
        let tag_of = |i: usize, kind: TagKind| {
            lad.term_tags.iter().find(|t| t.term_id == terms[i].id && t.tag.kind == kind).map(|t| t.tag.label.clone())
        };
        let sentence = |i: usize| sentences[i];
        let per_entity_at = |i: usize| {
            lad.entities.iter().find(|e| e.class == EntityClass::PER && e.term_ids.first() == Some(&terms[i].id))
        };
        let mut profession_used: HashSet<usize> = HashSet::new();
        let mut pending: Vec<(Vec<String>, &'static str, PendingObject)> = Vec::new();

        for i in 0..terms.len() {
            let Some(family) = tag_of(i, TagKind::Family) else { continue };
            let fam_span = vec![terms[i].id.clone()];
            // (b) possessive pronoun directly before the family term
            if i > 0 && sentence(i - 1) == sentence(i) && terms[i - 1].pos == Pos::Pron && terms[i - 1].has_flag("possessive") {
                pending.push((vec![terms[i - 1].id.clone()], bgn::HAS_RELATIVE, PendingObject::Span(fam_span.clone())));
            }
            pending.push((fam_span.clone(), bgn::FAMILY_ROLE, PendingObject::Literal(family)));
            // (c) apposition: a person name right after the family term
            let mut j = i + 1;
            if j < terms.len() && sentence(j) == sentence(i) {
                if let Some(e) = per_entity_at(j) {
                    pending.push((e.term_ids.clone(), bgn::SAME_AS_CANDIDATE, PendingObject::Span(fam_span.clone())));
                    j += e.term_ids.len();
                }
            }
            // (a) copula with a profession complement
            if j < terms.len() && sentence(j) == sentence(i) && terms[j].has_flag("copula") {
                let mut k = j + 1;
                while k < terms.len() && sentence(k) == sentence(i) && matches!(terms[k].pos, Pos::Det | Pos::Adj | Pos::Adv) {
                    k += 1;
                }
                if k < terms.len() && sentence(k) == sentence(i) {
                    if let Some(prof) = tag_of(k, TagKind::Profession) {
                        profession_used.insert(k);
                        pending.push((fam_span, bgn::HAS_PROFESSION, PendingObject::Literal(prof)));
                    }
                }
            }
        }
        for k in 0..terms.len() {
            if profession_used.contains(&k) {
                continue;
            }
            let Some(prof) = tag_of(k, TagKind::Profession) else { continue };
            let subject = (0..terms.len()).filter(|&i| sentence(i) == sentence(k)).find_map(|i| {
                if let Some(e) = per_entity_at(i) {
                    return Some(e.term_ids.clone());
                }
                (terms[i].pos == Pos::Pron && !terms[i].has_flag("possessive")).then(|| vec![terms[i].id.clone()])
            });
            match subject {
                Some(span) => pending.push((span, bgn::HAS_PROFESSION, PendingObject::Literal(prof))),
                None => {
                    let st = self.st(&self.description_iri, bgn::PROFESSION_TAG, Term::str(prof));
                    self.statements.push(st);
                }
            }
        }
        for (subject, predicate, object) in pending {
            let s = self.participant(&subject);
            let o = match object {
                PendingObject::Span(span) => {
                    let o = self.participant(&span);
                    Term::iri(self.participants[o].iri.clone())
                }
                PendingObject::Literal(l) => Term::str(l),
            };
            let st = self.st(&self.participants[s].iri, predicate, o);
            self.statements.push(st);
        }
        self.statements[start..].to_vec()
    }

    /// Identity links from pronouns and names to the biographee.
    pub fn step4_pronouns(&mut self, biographee: &Biographee) -> Vec<Statement> {
        let mut out = Vec::new();
        for i in 0..self.participants.len() {
            let p = &self.participants[i];
            let linked = match p.pronoun_gender {
                Some(g) => g != Gender::Unknown && g == biographee.gender,
                None => p.kind == ParticipantKind::Person
                    && self.entity_of(&p.term_ids).is_some()
                    && name_matches(&p.label, &biographee.names),
            };
            if linked {
                let st = self.st(&p.iri, owl::SAME_AS, Term::iri(&biographee.person_iri));
                self.participants[i].same_as = Some(biographee.person_iri.clone());
                out.push(st);
            }
        }
        self.statements.extend(out.iter().cloned());
        out
    }

    /// `denotedBy` links for every instance mention, plus the mention nodes.
    pub fn ground_mentions(&mut self) -> Result<Vec<Statement>, InterpretError> {
        let out = ground_mentions(&self.events, &self.participants, self.iris, &self.graph)?;
        self.statements.extend(out.iter().cloned());
        Ok(out)
    }
}

enum PendingObject {
    Span(Vec<String>),
    Literal(String),
}

fn mention_node(iri: &str, m: &Mention, graph: &str) -> Vec<Statement> {
    let st = |p: &str, o: Term| Statement::new(iri, p, o, graph);
    let mut v = vec![
        st(rdf::TYPE, Term::iri(gaf::MENTION)),
        st(bgn::DOC_ID, Term::str(&m.doc_id)),
        st(bgn::BEGIN_INDEX, Term::int(m.begin as i64)),
        st(bgn::END_INDEX, Term::int(m.end as i64)),
        st(bgn::LEMMA, Term::str(&m.lemma)),
        st(bgn::POS, Term::str(m.pos.as_str())),
    ];
    if let Some(p) = m.polarity {
        v.push(st(bgn::POLARITY, Term::str(p.as_str())));
    }
    v
}

/// One `denotedBy` statement per (instance, mention) followed by the mention
/// node descriptions; an instance without mentions is an integrity error.
pub fn ground_mentions(
    events: &[EventInstance],
    participants: &[ParticipantInstance],
    iris: &Iris,
    graph: &str,
) -> Result<Vec<Statement>, InterpretError> {
    let mut links = Vec::new();
    let mut nodes = Vec::new();
    let mut seen = HashSet::new();
    let all = events
        .iter()
        .map(|e| (&e.iri, &e.mentions))
        .chain(participants.iter().map(|p| (&p.iri, &p.mentions)));
    for (iri, mentions) in all {
        if mentions.is_empty() {
            return Err(InterpretError::Ungrounded(iri.clone()));
        }
        for m in mentions {
            let miri = iris.mention(&m.doc_id, m.begin, m.end);
            links.push(Statement::new(iri, gaf::DENOTED_BY, Term::iri(&miri), graph));
            if seen.insert(miri.clone()) {
                nodes.extend(mention_node(&miri, m, graph));
            }
        }
    }
    links.extend(nodes);
    Ok(links)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::{ConceptRef, Pipeline, PipelineConfig, Predicate, Term as LadTerm};
    use crate::clock::Clock;
    use crate::corpus::{BiographyEntry, PartialDate};

    fn annotate(text: &str) -> LayeredDocument {
        let entry = BiographyEntry::new("t1", "test", "Test", text);
        Pipeline::new(PipelineConfig::default()).unwrap().run(&entry, &Clock::epoch()).unwrap()
    }

    fn has(sts: &[Statement], s: &str, p: &str, o: &Term) -> bool {
        sts.iter().any(|st| st.subject == s && st.predicate == p && &st.object == o)
    }

    fn iri_of(it: &Interpreter<'_>, label: &str) -> String {
        it.participants.iter().find(|p| p.label == label).unwrap_or_else(|| panic!("no {label}")).iri.clone()
    }

    fn term(id: &str, lemma: &str, pos: Pos) -> LadTerm {
        LadTerm { id: id.into(), token_ids: vec![format!("w{id}")], lemma: lemma.into(), pos, morpho: Default::default() }
    }

    #[test]
    fn step1_links_each_distinct_concept_lemma_and_frame() {
        let mut lad = LayeredDocument::new("d");
        lad.terms = vec![term("1", "zij", Pos::Pron), term("2", "huwen", Pos::Verb)];
        lad.concepts = vec![ConceptRef { term_id: "2".into(), concept_id: "c-marry".into() }];
        lad.predicates = vec![Predicate {
            id: "pr1".into(),
            term_id: "2".into(),
            frame_id: Some("Marriage".into()),
            concept_id: Some("c-marry".into()),
            roles: vec![],
        }];
        let iris = Iris::default();
        assert_eq!(Interpreter::new(&lad, &iris).step1_direct().len(), 4);
        lad.concepts.push(lad.concepts[0].clone());
        assert_eq!(Interpreter::new(&lad, &iris).step1_direct().len(), 4);
        assert!(Interpreter::new(&LayeredDocument::new("e"), &iris).step1_direct().is_empty());
    }

    #[test]
    fn timex_inside_location_role_becomes_time() {
        let mut lad = annotate("Hij huwde in 1466.");
        for r in &mut lad.predicates[0].roles {
            if r.label == RoleLabel::Time {
                r.label = RoleLabel::Location;
            }
        }
        let iris = Iris::default();
        let mut it = Interpreter::new(&lad, &iris);
        let events = it.step2_events();
        assert_eq!(events[0].time(), Some(PartialDate::year(1466)));
        assert_eq!(events[0].targets(Relation::HasPlace).count(), 0);
    }

    #[test]
    fn pronoun_agent_of_marriage() {
        let lad = annotate("Zij huwde in 1608 te Veere.");
        let iris = Iris::default();
        let mut it = Interpreter::new(&lad, &iris);
        let events = it.step2_events();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].concept_id.as_deref(), Some("c-marry"));
        assert_eq!(events[0].frame_id.as_deref(), Some("Marriage"));
        let zij = iri_of(&it, "Zij");
        assert_eq!(events[0].targets(Relation::Arg0).collect::<Vec<_>>(), vec![&RoleTarget::Instance(zij)]);
        assert!(has(&it.statements, &events[0].iri, rdf::TYPE, &Term::iri(sem::EVENT)));
        assert!(Interpreter::new(&annotate("Een geleerde."), &iris).step2_events().is_empty());
    }

    #[test]
    fn father_was_a_doctor() {
        let lad = annotate("her father was a doctor");
        let iris = Iris::default();
        let mut it = Interpreter::new(&lad, &iris);
        let sts = it.step3_relations();
        let (her, father) = (iri_of(&it, "her"), iri_of(&it, "father"));
        assert!(has(&sts, &her, bgn::HAS_RELATIVE, &Term::iri(&father)));
        assert!(has(&sts, &father, bgn::HAS_PROFESSION, &Term::str("doctor")));
        assert!(has(&sts, &father, bgn::FAMILY_ROLE, &Term::str("father")));
    }

    #[test]
    fn son_frederik_apposition() {
        let lad = annotate("her son Frederik was born");
        let iris = Iris::default();
        let mut it = Interpreter::new(&lad, &iris);
        let sts = it.step3_relations();
        let (her, son, fred) = (iri_of(&it, "her"), iri_of(&it, "son"), iri_of(&it, "Frederik"));
        assert!(has(&sts, &her, bgn::HAS_RELATIVE, &Term::iri(&son)));
        assert!(has(&sts, &fred, bgn::SAME_AS_CANDIDATE, &Term::iri(&son)));
    }

    #[test]
    fn profession_falls_back_to_subject_or_description() {
        let iris = Iris::default();
        let lad = annotate("Erasmus was een beroemd geleerde.");
        let mut it = Interpreter::new(&lad, &iris);
        let sts = it.step3_relations();
        assert!(has(&sts, &iri_of(&it, "Erasmus"), bgn::HAS_PROFESSION, &Term::str("scholar")));
        let lad = annotate("Een beroemd geleerde.");
        let mut it = Interpreter::new(&lad, &iris);
        let sts = it.step3_relations();
        assert!(has(&sts, &it.description_iri, bgn::PROFESSION_TAG, &Term::str("scholar")));
    }

    #[test]
    fn pronoun_linking_requires_gender_agreement() {
        let lad = annotate("her father was a doctor");
        let iris = Iris::default();
        let link = |gender: Gender| {
            let mut it = Interpreter::new(&lad, &iris);
            it.step3_relations();
            let b = Biographee { person_iri: "https://x.org/p".into(), gender, names: vec!["X".into()] };
            it.step4_pronouns(&b).len()
        };
        assert_eq!(link(Gender::Female), 1);
        assert_eq!(link(Gender::Male), 0);
        assert_eq!(link(Gender::Unknown), 0);
    }

    #[test]
    fn names_link_on_full_or_surname_match() {
        let names = vec!["Desiderius Erasmus".to_string()];
        assert!(name_matches("Erasmus", &names));
        assert!(name_matches("desiderius erasmus", &names));
        assert!(!name_matches("Desiderius", &names));
        assert!(!name_matches("", &names));
    }

    #[test]
    fn grounding_counts_mentions_and_rejects_ungrounded() {
        let lad = annotate("Zij huwde in 1608 te Veere.");
        let iris = Iris::default();
        let mut it = Interpreter::new(&lad, &iris);
        it.step2_events();
        let links = it.ground_mentions().unwrap();
        let total: usize =
            it.events.iter().map(|e| e.mentions.len()).sum::<usize>() + it.participants.iter().map(|p| p.mentions.len()).sum::<usize>();
        assert_eq!(links.iter().filter(|s| s.predicate == gaf::DENOTED_BY).count(), total);
        let mut p = it.participants[0].clone();
        p.mentions.push(Mention { begin: 0, end: 3, ..p.mentions[0].clone() });
        let two = ground_mentions(&[], std::slice::from_ref(&p), &iris, "g").unwrap();
        assert_eq!(two.iter().filter(|s| s.predicate == gaf::DENOTED_BY).count(), 2);
        p.mentions.clear();
        assert!(matches!(ground_mentions(&[], &[p], &iris, "g"), Err(InterpretError::Ungrounded(_))));
    }
}
