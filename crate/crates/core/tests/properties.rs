use std::collections::BTreeSet;
use std::sync::OnceLock;

use bgf::analytics::{classify, timeline, FactValue};
use bgf::corpus::{aggregate_persons, corpus_stats, BiographyEntry, Format, Gender, PartialDate};
use bgf::dataset::Dataset;
use bgf::evaluate::{hypothesis_sample, ScoredDoc};
use bgf::graph::vocab::{bgn, pb, rdf, sem};
use bgf::graph::{
    match_naive, match_pattern, parse_statements, serialize_statements, PatternTerm, SerialFormat, Statement,
    Store, Term, TriplePattern,
};
use proptest::prelude::*;

mod common;
use common::precedence;

// ---------------------------------------------------------------------------
// Precedence of timex and NER over semantic roles

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn event_roles_follow_timex_and_entity_precedence(raw in precedence::raw_lad()) {
        if let Err(e) = precedence::check(&raw) {
            prop_assert!(false, "{}", e);
        }
    }
}

// ---------------------------------------------------------------------------
// Graph store, patterns and serialization

fn pool_iri(i: u8) -> String {
    format!("http://example.org/n{i}")
}

fn predicate_pool() -> [&'static str; 4] {
    [rdf::TYPE, bgn::LABEL, sem::HAS_PLACE, pb::ARG0]
}

fn graph_iri(i: u8) -> String {
    format!("http://example.org/g{i}")
}

fn object() -> impl Strategy<Value = Term> {
    prop_oneof![
        (0u8..5).prop_map(|i| Term::iri(pool_iri(i))),
        "[a-c\"\\\\\n é]{0,4}".prop_map(Term::str),
        (-3i64..3).prop_map(Term::int),
        (1600i32..1603).prop_map(|y| Term::date(PartialDate::year(y))),
    ]
}

fn statement() -> impl Strategy<Value = Statement> {
    (0u8..5, 0usize..4, object(), 0u8..3)
        .prop_map(|(s, p, o, g)| Statement::new(pool_iri(s), predicate_pool()[p], o, graph_iri(g)))
}

fn pattern_term(allow_literal: bool) -> impl Strategy<Value = PatternTerm> {
    let consts = if allow_literal {
        object().prop_map(PatternTerm::Const).boxed()
    } else {
        (0u8..5).prop_map(|i| PatternTerm::iri(&pool_iri(i))).boxed()
    };
    prop_oneof![prop::sample::select(vec!["x", "y", "z"]).prop_map(PatternTerm::var), consts]
}

fn triple_pattern() -> impl Strategy<Value = TriplePattern> {
    let pred = prop_oneof![
        prop::sample::select(vec!["p", "x"]).prop_map(PatternTerm::var),
        (0usize..4).prop_map(|i| PatternTerm::iri(predicate_pool()[i])),
    ];
    let graph = prop_oneof![
        Just(None),
        Just(Some(PatternTerm::var("g"))),
        (0u8..3).prop_map(|i| Some(PatternTerm::iri(&graph_iri(i)))),
    ];
    (pattern_term(false), pred, pattern_term(true), graph)
        .prop_map(|(s, p, o, graph)| TriplePattern { s, p, o, graph })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn indexed_matching_equals_naive_matching(
        statements in prop::collection::vec(statement(), 0..30),
        patterns in prop::collection::vec(triple_pattern(), 1..4),
        restrict in prop::option::of(0u8..3),
    ) {
        let store = Store::from_statements(statements).unwrap();
        let graph = restrict.map(graph_iri);
        prop_assert_eq!(
            match_pattern(&store, &patterns, graph.as_deref()),
            match_naive(&store, &patterns, graph.as_deref())
        );
    }

    #[test]
    fn quads_and_json_round_trip(statements in prop::collection::vec(statement(), 0..30)) {
        let expected: BTreeSet<Statement> = statements.iter().cloned().collect();
        for format in [SerialFormat::QuadsLines, SerialFormat::Json] {
            let bytes = serialize_statements(&statements, format);
            let back: BTreeSet<Statement> = parse_statements(&bytes, format).unwrap().into_iter().collect();
            prop_assert_eq!(&back, &expected);
            let again = serialize_statements(&back.iter().cloned().collect::<Vec<_>>(), format);
            prop_assert_eq!(again, bytes);
        }
    }
}

// ---------------------------------------------------------------------------
// Dates and fact comparison

fn partial_date() -> impl Strategy<Value = PartialDate> {
    (1465i32..1470, prop::option::of(1u8..13), prop::option::of(1u8..29)).prop_map(|(y, m, d)| {
        let d = d.filter(|_| m.is_some());
        PartialDate::new(y, m, d).unwrap()
    })
}

fn fact_value() -> impl Strategy<Value = FactValue> {
    prop_oneof![
        partial_date().prop_map(FactValue::Date),
        prop::sample::select(vec!["Rotterdam", "rotterdam ", "Gouda", "Rotter", "", "Den Haag"])
            .prop_map(|s| FactValue::Place(s.to_string())),
    ]
}

proptest! {
    #[test]
    fn date_compatibility_is_symmetric_and_reflexive(a in partial_date(), b in partial_date()) {
        prop_assert!(a.is_compatible(&a));
        prop_assert_eq!(a.is_compatible(&b), b.is_compatible(&a));
        if a.is_compatible(&b) {
            prop_assert_eq!(a.year_value(), b.year_value());
        }
    }

    #[test]
    fn dates_render_and_parse_back(a in partial_date()) {
        prop_assert_eq!(a.to_string().parse::<PartialDate>().unwrap(), a);
    }

    #[test]
    fn fact_classification_is_symmetric(a in fact_value(), b in fact_value()) {
        prop_assert_eq!(classify(&a, &b), classify(&b, &a));
    }
}

// ---------------------------------------------------------------------------
// Sampling and corpus statistics

fn scored_docs() -> impl Strategy<Value = Vec<ScoredDoc>> {
    prop::collection::vec((0u8..2, 0u32..5), 0..24).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (src, score))| ScoredDoc::new(format!("d{i:02}"), ["a", "b"][src as usize], score as f64 / 4.0))
            .collect()
    })
}

proptest! {
    #[test]
    fn sampling_ignores_input_order(docs in scored_docs(), k in 1usize..4, seed in any::<u64>()) {
        let mut shuffled = docs.clone();
        let mut rng = seed;
        for i in (1..shuffled.len()).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (rng >> 33) as usize % (i + 1));
        }
        let left = hypothesis_sample(&docs, "a", "b", k);
        let right = hypothesis_sample(&shuffled, "a", "b", k);
        prop_assert_eq!(left.is_ok(), right.is_ok());
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert_eq!(&l, &r);
            let mut seen = BTreeSet::new();
            for (_, sample) in l.samples() {
                prop_assert_eq!(sample.len(), 2 * k);
                for d in sample {
                    prop_assert!(seen.insert(d.doc_id.clone()), "document sampled twice");
                }
            }
        }
    }
}

fn entries() -> impl Strategy<Value = Vec<BiographyEntry>> {
    prop::collection::vec((0u8..3, 0u8..3, prop::option::of(1450i32..1850), prop::option::of(0u8..4)), 0..20).prop_map(
        |v| {
            v.into_iter()
                .enumerate()
                .map(|(i, (src, g, birth, person))| {
                    let gender = [Gender::Female, Gender::Male, Gender::Unknown][g as usize];
                    let mut e = BiographyEntry::new(&format!("e{i}"), ["nnbw", "vdaa", "bwn"][src as usize], "N", "")
                        .with_gender(gender);
                    e.person.birth.date = birth.map(PartialDate::year);
                    e.person_ref = person.map(|p| format!("p{p}"));
                    e
                })
                .collect()
        },
    )
}

proptest! {
    #[test]
    fn corpus_stats_sum_and_ignore_order(mut list in entries()) {
        let facets = ["source", "gender", "birth-century", "death-century"];
        let stats = corpus_stats(&list, &facets).unwrap();
        prop_assert_eq!(stats.cells.iter().map(|c| c.count).sum::<usize>(), list.len());
        for totals in stats.totals.values() {
            prop_assert_eq!(totals.values().sum::<usize>(), list.len());
        }
        list.reverse();
        prop_assert_eq!(corpus_stats(&list, &facets).unwrap(), stats);
    }

    #[test]
    fn persons_partition_the_entries(list in entries()) {
        let links: Vec<(String, String)> =
            list.iter().filter_map(|e| e.person_ref.clone().map(|p| (e.entry_id.clone(), p))).collect();
        let persons = aggregate_persons(&list, &links).unwrap();
        let mut seen: Vec<String> = persons.iter().flat_map(|p| p.entry_ids.clone()).collect();
        seen.sort();
        let mut all: Vec<String> = list.iter().map(|e| e.entry_id.clone()).collect();
        all.sort();
        prop_assert_eq!(seen, all);
        let ids: BTreeSet<&String> = persons.iter().map(|p| &p.person_id).collect();
        prop_assert_eq!(ids.len(), persons.len());
    }
}

// ---------------------------------------------------------------------------
// Timeline over a permuted store

fn fig3() -> &'static Dataset {
    static DATA: OnceLock<Dataset> = OnceLock::new();
    DATA.get_or_init(|| {
        let bytes = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/fig3.xml"));
        Dataset::reproducible(bytes, Format::Xml, 3).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn timeline_ignores_statement_order(seed in any::<u64>()) {
        let data = fig3();
        let mut statements = data.store.statements();
        let mut rng = seed;
        for i in (1..statements.len()).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            statements.swap(i, (rng >> 33) as usize % (i + 1));
        }
        let shuffled = Store::from_statements(statements).unwrap();
        let person = data.iris.person("maria");
        let expected = timeline(&data.store, &person, &data.iris).unwrap();
        prop_assert!(!expected.entries.is_empty());
        prop_assert_eq!(timeline(&shuffled, &person, &data.iris).unwrap(), expected);
    }
}
