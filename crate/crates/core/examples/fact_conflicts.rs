// Compare what four dictionaries claim about the birth of Erasmus, and see
// how a year-only date turns a contradiction into a partial agreement.

use bgf::analytics::{fact_alternatives, Agreement, FactAlternatives, FactKind, FactValue};
use bgf::annotate::{Pipeline, PipelineConfig};
use bgf::clock::Clock;
use bgf::corpus::{parse_entries, Format, PartialDate};
use bgf::dataset::Dataset;
use bgf::interpret::InterpretOptions;

const ERASMUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/erasmus.xml"));

fn show(f: &FactAlternatives) {
    println!("{}:", f.kind.as_str());
    for (i, a) in f.alternatives.iter().enumerate() {
        let value = match &a.value {
            FactValue::Date(d) => d.to_string(),
            FactValue::Place(p) => p.clone(),
        };
        let who: Vec<String> = a.supports.iter().map(|s| format!("{} ({:?})", s.title, s.origin)).collect();
        println!("  [{i}] {value:<11} {:?} vs selected; {}", a.versus_selected, who.join(", "));
    }
    for p in &f.pairs {
        println!("  [{}] ~ [{}]: {:?}", p.a, p.b, p.class);
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(ERASMUS, Format::Xml, 5)?;
    let erasmus = ds.iris.person("erasmus");
    let dates = fact_alternatives(&ds.store, &erasmus, FactKind::BirthDate, &ds.iris)?;
    let places = fact_alternatives(&ds.store, &erasmus, FactKind::BirthPlace, &ds.iris)?;
    show(&dates);
    show(&places);
    assert_eq!((dates.alternatives.len(), places.alternatives.len()), (3, 2));
    assert!(dates.pairs.iter().all(|p| p.class == Agreement::Contradict));

    // One dictionary that only knows the year.
    let mut entries = parse_entries(ERASMUS, Format::Xml)?;
    entries[0].person.birth.date = Some(PartialDate::year(1466));
    let pipeline = Pipeline::new(PipelineConfig::default())?;
    let ds = Dataset::build(entries, &pipeline, &InterpretOptions::default().seeded(5), &Clock::epoch())?;
    let dates = fact_alternatives(&ds.store, &erasmus, FactKind::BirthDate, &ds.iris)?;
    show(&dates);
    assert_eq!(dates.alternatives.len(), 4);
    assert!(dates.pairs.iter().any(|p| p.class == Agreement::Partial));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
