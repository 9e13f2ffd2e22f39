//! Brute-force recomputation of every analytic, over whole fixtures and
//! over per-person and per-entry stores of at most 500 statements.
//!
//! The oracles scan a plain statement list linearly and restate each rule
//! directly, sharing nothing with the indexed store beyond IRI minting.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use bgf::analytics::{
    adjective_ratio, classify, climax_scores, concept_stats, fact_alternatives, participation_graph, resolve_query,
    timeline, ClimaxMode, FactKind, FactValue, GroupBy,
};
use bgf::annotate::Pos;
use bgf::corpus::{Format, PartialDate};
use bgf::dataset::Dataset;
use bgf::graph::vocab::{bgn, edm, gaf, ore, owl, pb, rdf, sem};
use bgf::graph::{match_pattern, Iris, PatternTerm, Statement, Store, Term, TriplePattern, BIRTH_FRAME};

pub const LIMIT: usize = 500;

struct Scan<'a> {
    sts: &'a [Statement],
    iris: &'a Iris,
}

impl<'a> Scan<'a> {
    fn objects(&self, s: &str, p: &str) -> Vec<&'a Term> {
        let mut v: Vec<&Term> = self.sts.iter().filter(|t| t.subject == s && t.predicate == p).map(|t| &t.object).collect();
        v.sort();
        v.dedup();
        v
    }

    fn iri_objects(&self, s: &str, p: &str) -> Vec<String> {
        self.objects(s, p).into_iter().filter_map(|t| t.as_iri().map(str::to_string)).collect()
    }

    fn one_str(&self, s: &str, p: &str) -> Option<String> {
        let v: Vec<String> = self.objects(s, p).into_iter().filter_map(|t| t.as_str().map(str::to_string)).collect();
        assert!(v.len() <= 1, "{s} has several {p}");
        v.into_iter().next()
    }

    fn subjects(&self, p: &str, o: &Term) -> Vec<String> {
        let v: BTreeSet<String> =
            self.sts.iter().filter(|t| t.predicate == p && &t.object == o).map(|t| t.subject.clone()).collect();
        v.into_iter().collect()
    }

    fn has_type(&self, s: &str, class: &str) -> bool {
        self.sts.iter().any(|t| t.subject == s && t.predicate == rdf::TYPE && t.object.as_iri() == Some(class))
    }

    fn of_type(&self, class: &str) -> Vec<String> {
        self.subjects(rdf::TYPE, &Term::iri(class))
    }

    fn event_type(&self, e: &str) -> String {
        let types = self.iri_objects(e, rdf::TYPE);
        let frames: Vec<&str> = types.iter().filter_map(|t| self.iris.frame_id(t)).collect();
        let concepts: Vec<&str> = types.iter().filter_map(|t| self.iris.concept_id(t)).collect();
        assert!(frames.len() <= 1 && concepts.len() <= 1, "ambiguous event type for {e}");
        frames.first().or(concepts.first()).copied().unwrap_or("Event").to_string()
    }

    fn date(&self, e: &str) -> Option<PartialDate> {
        let v: Vec<PartialDate> = self.objects(e, sem::HAS_TIME).into_iter().filter_map(|t| t.as_date()).collect();
        assert!(v.len() <= 1, "{e} has several dates");
        v.into_iter().next()
    }

    fn place_labels(&self, e: &str) -> Vec<String> {
        self.objects(e, sem::HAS_PLACE)
            .into_iter()
            .filter_map(|t| match t {
                Term::Iri(i) => self.one_str(i, bgn::LABEL),
                other => other.as_str().map(str::to_string),
            })
            .collect()
    }

    fn identity(&self, instance: &str) -> Option<String> {
        if self.has_type(instance, edm::PROVIDED_CHO) {
            return Some(instance.to_string());
        }
        let same = self.iri_objects(instance, owl::SAME_AS);
        assert!(same.len() <= 1, "{instance} has several identities");
        if let Some(p) = same.into_iter().next() {
            return Some(p);
        }
        self.has_type(instance, bgn::PERSON).then(|| instance.to_string())
    }

    fn identities(&self, e: &str) -> BTreeSet<String> {
        [sem::HAS_ACTOR, pb::ARG0, pb::ARG1, pb::ARG2]
            .iter()
            .flat_map(|p| self.iri_objects(e, p))
            .filter_map(|i| self.identity(&i))
            .collect()
    }

    fn spans(&self, node: &str, p: &str) -> Vec<(usize, usize)> {
        self.iri_objects(node, p)
            .iter()
            .map(|m| {
                let get = |q: &str| self.objects(m, q).first().and_then(|t| t.as_int()).expect("mention offset") as usize;
                (get(bgn::BEGIN_INDEX), get(bgn::END_INDEX))
            })
            .collect()
    }

    fn entry_of_event(&self, e: &str) -> Option<String> {
        let ds = self.subjects(bgn::INCLUDES, &Term::iri(e));
        assert!(ds.len() <= 1, "{e} included by several descriptions");
        ds.first().and_then(|d| self.one_str(d, bgn::ENTRY_ID))
    }
}

struct Subject {
    name: String,
    statements: Vec<Statement>,
    data: &'static Dataset,
}

fn dataset(bytes: &[u8]) -> &'static Dataset {
    Box::leak(Box::new(Dataset::reproducible(bytes, Format::Xml, 3).unwrap()))
}

/// Stores to check: every fixture whole, then one store per person and one
/// per entry, each built from the named graphs that concern it.
fn subjects() -> &'static [Subject] {
    static ALL: OnceLock<Vec<Subject>> = OnceLock::new();
    ALL.get_or_init(build_subjects)
}

fn build_subjects() -> Vec<Subject> {
    let mut out = Vec::new();
    let fixtures: [(&str, &[u8]); 4] = [
        ("fig3", include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/fig3.xml"))),
        ("erasmus", include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/erasmus.xml"))),
        ("corpus", include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"))),
        ("composition", include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/composition.xml"))),
    ];
    for (name, bytes) in fixtures {
        let data = dataset(bytes);
        let all = data.store.statements();
        let mut pick = |label: String, graphs: Vec<String>| {
            let statements: Vec<Statement> = all.iter().filter(|s| graphs.contains(&s.graph)).cloned().collect();
            out.push(Subject { name: label, statements, data });
        };
        for p in &data.persons {
            let person_graph = data.iris.person_graph(&p.person_id);
            let entry_graphs = |e: &String| [data.iris.metadata_graph(e), data.iris.nlp_graph(e)];
            if p.entry_ids.len() > 1 {
                let mut graphs = vec![person_graph.clone()];
                graphs.extend(p.entry_ids.iter().flat_map(entry_graphs));
                pick(format!("{name}/{}", p.person_id), graphs);
            }
            for e in &p.entry_ids {
                let mut graphs = vec![person_graph.clone()];
                graphs.extend(entry_graphs(e));
                pick(format!("{name}/{}/{e}", p.person_id), graphs);
            }
        }
        out.push(Subject { name: name.to_string(), statements: all, data });
    }
    let small = out.iter().filter(|s| s.statements.len() <= LIMIT).count();
    assert!(small >= 20, "only {small} stores within {LIMIT} statements");
    out
}

fn chrono(a: &Option<PartialDate>, b: &Option<PartialDate>) -> Ordering {
    let key = |d: &PartialDate| (d.year_value(), d.month().unwrap_or(0), d.day().unwrap_or(0));
    match (a, b) {
        (Some(x), Some(y)) => key(x).cmp(&key(y)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

pub fn timeline_matches_brute_force() {
    for subj in subjects() {
        let scan = Scan { sts: &subj.statements, iris: &subj.data.iris };
        let store = Store::from_statements(subj.statements.clone()).unwrap();
        for person in scan.of_type(edm::PROVIDED_CHO) {
            let got = timeline(&store, &person, &subj.data.iris).unwrap();
            let mut expected: Vec<(Option<PartialDate>, Vec<(usize, usize)>, Option<String>, String)> = scan
                .of_type(sem::EVENT)
                .into_iter()
                .filter(|e| scan.identities(e).contains(&person))
                .map(|e| {
                    let mut offsets = scan.spans(&e, gaf::DENOTED_BY);
                    offsets.extend(scan.spans(&e, bgn::TIME_DENOTED_BY));
                    offsets.sort();
                    offsets.dedup();
                    (scan.date(&e), offsets, scan.entry_of_event(&e), e)
                })
                .collect();
            expected.sort_by(|a, b| {
                chrono(&a.0, &b.0).then_with(|| a.1.first().cmp(&b.1.first())).then_with(|| a.2.cmp(&b.2)).then_with(|| a.3.cmp(&b.3))
            });
            assert_eq!(got.entries.len(), expected.len(), "{} {person}", subj.name);
            for (g, (date, offsets, entry, iri)) in got.entries.iter().zip(&expected) {
                assert_eq!(&g.event_iri, iri);
                assert_eq!(&g.date, date);
                assert_eq!(&g.offsets, offsets);
                assert_eq!(&g.entry_id, entry);
                let places = scan.place_labels(iri);
                match &g.place {
                    Some(p) => assert!(places.contains(p), "{iri}: {p} not among {places:?}"),
                    None => assert!(places.is_empty()),
                }
            }
        }
    }
}

pub fn concept_stats_match_brute_force() {
    for subj in subjects() {
        let scan = Scan { sts: &subj.statements, iris: &subj.data.iris };
        let iris = &subj.data.iris;
        let store = Store::from_statements(subj.statements.clone()).unwrap();
        let original = |nlp: &str| -> Option<String> {
            let o = iris.description(&scan.one_str(nlp, bgn::ENTRY_ID)?);
            scan.has_type(&o, bgn::ORIGINAL_DESCRIPTION).then_some(o)
        };
        let stated_birth = |o: &str| -> Option<PartialDate> {
            scan.iri_objects(o, bgn::INCLUDES).iter().filter(|e| scan.event_type(e) == BIRTH_FRAME).find_map(|e| scan.date(e))
        };
        for query in ["huwen", "c-marry", "geboren", "schrijfster", "xyzzy"] {
            let resolved = resolve_query(query, &subj.data.lexicons);
            let targets: BTreeSet<String> = resolved
                .concepts
                .iter()
                .map(|c| iris.concept(c))
                .chain(resolved.lemmas.iter().map(|l| iris.lemma(l)))
                .collect();
            for group_by in [GroupBy::Source, GroupBy::Gender, GroupBy::BirthCentury] {
                let mut expected: BTreeMap<String, (u64, u64)> = BTreeMap::new();
                for d in scan.of_type(bgn::NLP_DESCRIPTION) {
                    let o = original(&d);
                    let key = match group_by {
                        GroupBy::Source => scan.one_str(&d, bgn::SOURCE).or_else(|| o.as_deref().and_then(|o| scan.one_str(o, bgn::SOURCE))),
                        GroupBy::Gender => o.as_deref().and_then(|o| scan.one_str(o, bgn::GENDER)),
                        GroupBy::BirthCentury => o.as_deref().and_then(|o| {
                            stated_birth(o)
                                .or_else(|| {
                                    let person = scan.iri_objects(o, ore::PROXY_FOR).into_iter().next()?;
                                    scan.subjects(ore::PROXY_FOR, &Term::iri(person))
                                        .iter()
                                        .filter(|x| scan.has_type(x, bgn::ORIGINAL_DESCRIPTION))
                                        .filter_map(|x| stated_birth(x))
                                        .min_by(|a, b| chrono(&Some(*a), &Some(*b)))
                                })
                                .map(|d| d.century().to_string())
                        }),
                    }
                    .unwrap_or_else(|| "unknown".to_string());
                    let hit = scan.iri_objects(&d, bgn::INCLUDES).iter().any(|x| targets.contains(x));
                    let slot = expected.entry(key).or_default();
                    slot.1 += 1;
                    slot.0 += u64::from(hit);
                }
                let got = concept_stats(&store, query, group_by, &subj.data.lexicons, iris);
                let got_map: BTreeMap<String, (u64, u64)> =
                    got.groups.iter().map(|g| (g.group.clone(), (g.count, g.size))).collect();
                assert_eq!(got_map, expected, "{} {query} {group_by}", subj.name);
                for g in &got.groups {
                    assert_eq!(g.rate.ratio() * g.size, g.count.into());
                }
            }
        }
    }
}

pub fn adjective_ratio_matches_brute_force() {
    for subj in subjects() {
        let docs = subj.data.documents();
        let sources: BTreeSet<&str> = docs.iter().map(|(s, _)| *s).collect();
        for source in sources {
            let (mut adj, mut words, mut n) = (0u64, 0u64, 0u64);
            for (s, lad) in &docs {
                if *s != source {
                    continue;
                }
                n += 1;
                for t in &lad.terms {
                    words += u64::from(t.pos != Pos::Punct);
                    adj += u64::from(t.pos == Pos::Adj);
                }
            }
            let got = adjective_ratio(source, docs.iter().copied()).unwrap();
            assert_eq!((got.documents, got.adjectives, got.words), (n, adj, words));
            if words > 0 {
                assert_eq!(got.ratio.ratio(), num_ratio(adj, words));
            }
        }
    }
}

fn num_ratio(n: u64, d: u64) -> num_rational::Ratio<u64> {
    num_rational::Ratio::new(n, d)
}

pub fn participation_and_climax_match_brute_force() {
    for subj in subjects() {
        let scan = Scan { sts: &subj.statements, iris: &subj.data.iris };
        let store = Store::from_statements(subj.statements.clone()).unwrap();
        let persons: BTreeSet<String> = scan.of_type(edm::PROVIDED_CHO).into_iter().collect();

        let mut buckets: BTreeMap<(i32, String), BTreeSet<String>> = BTreeMap::new();
        let mut residue: BTreeSet<String> = BTreeSet::new();
        let mut climax: BTreeMap<(String, i32), (BTreeSet<String>, u64)> = BTreeMap::new();
        for e in scan.of_type(sem::EVENT) {
            let ids = scan.identities(&e);
            let ty = scan.event_type(&e);
            let chosen: BTreeSet<String> = ids.intersection(&persons).cloned().collect();
            match scan.date(&e) {
                Some(d) => {
                    if !chosen.is_empty() {
                        buckets.entry((d.year_value(), ty.clone())).or_default().extend(chosen);
                    }
                    let slot = climax.entry((ty, d.year_value())).or_default();
                    slot.1 += u64::from(!ids.is_empty());
                    slot.0.extend(ids);
                }
                None => {
                    if !chosen.is_empty() {
                        residue.insert(e);
                    }
                }
            }
        }

        let g = participation_graph(&store, &[], &[], &subj.data.iris).unwrap();
        let got: BTreeMap<(i32, String), BTreeSet<String>> = g
            .events
            .iter()
            .map(|n| ((n.year, n.event_type.clone()), n.participants.iter().cloned().collect()))
            .collect();
        assert_eq!(got, buckets, "{}", subj.name);
        assert_eq!(g.residue.iter().map(|r| r.event_iri.clone()).collect::<BTreeSet<_>>(), residue);
        assert_eq!(g.actors.len(), persons.len());
        for a in &g.actors {
            assert_eq!(a.event_count, buckets.values().filter(|ps| ps.contains(&a.iri)).count());
        }

        for mode in [ClimaxMode::DistinctParticipants, ClimaxMode::EventCount] {
            let expected: BTreeMap<(String, i32), u64> = climax
                .iter()
                .map(|(k, (people, n))| {
                    (k.clone(), match mode {
                        ClimaxMode::DistinctParticipants => people.len() as u64,
                        ClimaxMode::EventCount => *n,
                    })
                })
                .filter(|(_, s)| *s >= 1)
                .collect();
            let series = climax_scores(&store, mode, &subj.data.iris);
            let got: BTreeMap<(String, i32), u64> = series
                .groups
                .iter()
                .flat_map(|g| g.points.iter().map(move |p| ((g.event_type.clone(), p.year), p.score)))
                .collect();
            assert_eq!(got, expected, "{} {mode:?}", subj.name);
            let maxima: Vec<u64> = series.groups.iter().map(|g| g.max_score()).collect();
            assert!(maxima.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}

pub fn fact_alternatives_match_brute_force() {
    for subj in subjects() {
        let scan = Scan { sts: &subj.statements, iris: &subj.data.iris };
        let store = Store::from_statements(subj.statements.clone()).unwrap();
        for person in scan.of_type(edm::PROVIDED_CHO) {
            for kind in FactKind::ALL {
                let mut expected: BTreeMap<String, BTreeSet<(String, String)>> = BTreeMap::new();
                for d in scan.subjects(ore::PROXY_FOR, &Term::iri(&person)) {
                    if !scan.has_type(&d, bgn::ORIGINAL_DESCRIPTION) && !scan.has_type(&d, bgn::NLP_DESCRIPTION) {
                        continue;
                    }
                    for e in scan.iri_objects(&d, bgn::INCLUDES) {
                        if scan.event_type(&e) != kind.frame() {
                            continue;
                        }
                        let key = if kind.is_date() {
                            scan.date(&e).map(|d| d.to_string())
                        } else {
                            let labels = scan.place_labels(&e);
                            assert!(labels.len() <= 1, "{e} has several places");
                            labels.first().map(|l| l.trim().to_lowercase())
                        };
                        if let Some(k) = key {
                            expected.entry(k).or_default().insert((d.clone(), e.clone()));
                        }
                    }
                }
                let got = fact_alternatives(&store, &person, kind, &subj.data.iris).unwrap();
                let got_map: BTreeMap<String, BTreeSet<(String, String)>> = got
                    .alternatives
                    .iter()
                    .map(|a| {
                        let key = match &a.value {
                            FactValue::Date(d) => d.to_string(),
                            FactValue::Place(p) => p.trim().to_lowercase(),
                        };
                        (key, a.supports.iter().map(|s| (s.description.clone(), s.event_iri.clone())).collect())
                    })
                    .collect();
                assert_eq!(got_map, expected, "{} {person} {kind}", subj.name);
                let n = got.alternatives.len();
                assert_eq!(got.pairs.len(), n * n.saturating_sub(1) / 2);
                for p in &got.pairs {
                    assert_eq!(p.class, classify(&got.alternatives[p.a].value, &got.alternatives[p.b].value));
                }
                let sizes: Vec<usize> = got.alternatives.iter().map(|a| a.supports.len()).collect();
                assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }
}

type Row = BTreeMap<String, Term>;

fn unify(row: &Row, pt: &PatternTerm, value: &Term) -> Option<Row> {
    match pt {
        PatternTerm::Const(c) => (c == value).then(|| row.clone()),
        PatternTerm::Var(v) => match row.get(v) {
            Some(bound) => (bound == value).then(|| row.clone()),
            None => {
                let mut r = row.clone();
                r.insert(v.clone(), value.clone());
                Some(r)
            }
        },
    }
}

fn brute_match(sts: &[Statement], patterns: &[TriplePattern]) -> BTreeSet<Row> {
    let mut rows = vec![Row::new()];
    for p in patterns {
        let mut next = Vec::new();
        for row in &rows {
            for st in sts {
                let r = unify(row, &p.s, &Term::iri(&st.subject))
                    .and_then(|r| unify(&r, &p.p, &Term::iri(&st.predicate)))
                    .and_then(|r| unify(&r, &p.o, &st.object))
                    .and_then(|r| match &p.graph {
                        Some(g) => unify(&r, g, &Term::iri(&st.graph)),
                        None => Some(r),
                    });
                next.extend(r);
            }
        }
        rows = next;
    }
    rows.into_iter().collect()
}

pub fn pattern_matching_matches_brute_force() {
    let v = PatternTerm::var;
    let c = PatternTerm::iri;
    let queries = vec![
        vec![TriplePattern::new(v("e"), c(rdf::TYPE), c(sem::EVENT)), TriplePattern::new(v("e"), c(sem::HAS_TIME), v("t"))],
        vec![
            TriplePattern::new(v("e"), c(pb::ARG0), v("x")),
            TriplePattern::new(v("x"), c(owl::SAME_AS), v("p")),
            TriplePattern::new(v("p"), c(bgn::LABEL), v("l")),
        ],
        vec![TriplePattern::new(v("d"), c(ore::PROXY_FOR), v("p")), TriplePattern::new(v("d"), c(bgn::INCLUDES), v("e"))],
        vec![TriplePattern { graph: Some(v("g")), ..TriplePattern::new(v("s"), v("p"), v("s")) }],
        vec![TriplePattern { graph: Some(v("g")), ..TriplePattern::new(v("s"), c(rdf::TYPE), v("o")) }],
    ];
    for subj in subjects() {
        let store = Store::from_statements(subj.statements.clone()).unwrap();
        for q in &queries {
            let got = match_pattern(&store, q, None);
            let rows: BTreeSet<Row> = got
                .rows
                .iter()
                .map(|r| got.vars.iter().cloned().zip(r.iter().cloned()).collect())
                .collect();
            assert_eq!(rows, brute_match(&subj.statements, q), "{} {q:?}", subj.name);
        }
    }
}

/// Every oracle check by name, for suites that report rather than abort.
pub const CHECKS: [(&str, fn()); 6] = [
    ("timeline", timeline_matches_brute_force),
    ("concept_stats", concept_stats_match_brute_force),
    ("adjective_ratio", adjective_ratio_matches_brute_force),
    ("participation_graph and climax_scores", participation_and_climax_match_brute_force),
    ("fact_alternatives", fact_alternatives_match_brute_force),
    ("match", pattern_matching_matches_brute_force),
];

/// Checked stores within [`LIMIT`] statements.
pub fn small_subjects() -> usize {
    subjects().iter().filter(|s| s.statements.len() <= LIMIT).count()
}
