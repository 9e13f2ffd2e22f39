// Free-text search with facet refinement, recorded as a navigation session
// that can go back, branch and be replayed.

use std::collections::BTreeMap;

use bgf::clock::Clock;
use bgf::corpus::Format;
use bgf::dataset::Dataset;
use bgf::service::{Api, Operation, Refinement, SearchRequest, SearchResponse, SessionStore};

const CORPUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"));

fn show(label: &str, r: &SearchResponse) {
    let people: Vec<&str> = r.persons.iter().map(|p| p.label.as_str()).collect();
    println!("{label}: {} persons [{}]", r.total_persons, people.join("; "));
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(CORPUS, Format::Xml, 1)?;
    let log = tempfile::tempdir()?;
    let api = Api::new(ds, SessionStore::open(&log.path().join("sessions.jsonl"), Clock::epoch())?);

    // Lemma search: "huwen" finds biographies that only say "huwde".
    let first = api.create_session(SearchRequest::query("huwen"))?;
    show("huwen", &first.result);
    println!("  gender facet {:?}", first.result.facets["gender"]);
    let id = first.session.session_id.clone();
    let root = first.session.current.clone();

    let women = Refinement { add: BTreeMap::from([("gender".into(), vec!["female".into()])]), ..Default::default() };
    let step = api.session_step(&id, Operation::Refine(women))?;
    show("  + gender=female", &step.result);

    // Back to the root and off in another direction.
    let nnbw = Refinement { add: BTreeMap::from([("source".into(), vec!["nnbw".into()])]), ..Default::default() };
    let branch = api.session_branch(&id, &root, Some(Operation::Refine(nnbw)))?;
    show("  + source=nnbw", &branch.result);
    println!("  path {:?}, {} leaves", branch.path, branch.session.leaves().len());
    assert_eq!(branch.session.leaves().len(), 2);

    // Replaying the stored session gives the same payload every time.
    let again = api.session(&id)?;
    assert_eq!(again, api.session(&id)?);
    assert_eq!(again.result, branch.result);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
