// Interpret a one-sentence biography into events, participants and
// grounded mentions.

use bgf::corpus::{slice_chars, Format};
use bgf::dataset::Dataset;
use bgf::graph::vocab::{bgn, gaf, owl, pb, rdf, sem};
use bgf::graph::Term;

const FIG3: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/fig3.xml"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(FIG3, Format::Xml, 3)?;
    let (store, iris) = (&ds.store, &ds.iris);
    let entry = &ds.entries[0];
    println!("{}", entry.text);

    let events = store.subjects(rdf::TYPE, &Term::iri(sem::EVENT));
    assert_eq!(events.len(), 1);
    let event = &events[0];
    let types: Vec<String> = store.objects(event, rdf::TYPE).iter().map(Term::lexical).collect();
    println!("event {event}\n  types {}", types.join(" "));
    assert!(store.has_type(event, &iris.frame("Marriage")));
    assert!(store.has_type(event, &iris.concept("c-marry")));

    let agent = store.object(event, pb::ARG0).and_then(|t| t.as_iri().map(str::to_string)).expect("an agent");
    let identity = store.object(&agent, owl::SAME_AS).expect("the pronoun is resolved");
    println!("  Arg0 {agent} sameAs {}", identity.lexical());
    assert_eq!(identity, Term::iri(iris.person("maria")));
    if let Some(time) = store.object(event, sem::HAS_TIME) {
        println!("  hasTime {}", time.lexical());
    }

    for mention in store.objects(event, gaf::DENOTED_BY) {
        let m = mention.as_iri().expect("mentions are nodes");
        let begin = store.object(m, bgn::BEGIN_INDEX).and_then(|t| t.as_int()).unwrap_or_default() as usize;
        let end = store.object(m, bgn::END_INDEX).and_then(|t| t.as_int()).unwrap_or_default() as usize;
        let lemma = store.object(m, bgn::LEMMA).map(|t| t.lexical()).unwrap_or_default();
        let surface = slice_chars(&entry.text, begin, end).unwrap_or_default();
        println!("  denotedBy [{begin}, {end}) {surface:?} lemma {lemma}");
        assert_eq!((surface, lemma.as_str()), ("huwde", "huwen"));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
