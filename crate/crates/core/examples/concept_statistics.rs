// Count biographies mentioning a concept (with its synonyms) per birth
// century, per gender and per dictionary.

use bgf::analytics::{concept_stats, GroupBy};
use bgf::corpus::Format;
use bgf::dataset::Dataset;

const CORPUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(CORPUS, Format::Xml, 1)?;
    for (query, group_by) in [("Amerika", GroupBy::BirthCentury), ("huwen", GroupBy::Gender), ("c-marry", GroupBy::Source)] {
        let stats = concept_stats(&ds.store, query, group_by, &ds.lexicons, &ds.iris);
        println!("{query:?} expands to concepts {:?} and lemmas {:?}", stats.concepts, stats.lemmas);
        for g in &stats.groups {
            println!("  {:<8} {}/{} = {}", g.group, g.count, g.size, g.rate.decimal());
        }
    }
    let america = concept_stats(&ds.store, "Amerika", GroupBy::BirthCentury, &ds.lexicons, &ds.iris);
    let counts: Vec<(&str, u64)> = america.groups.iter().map(|g| (g.group.as_str(), g.count)).collect();
    assert_eq!(counts, [("16", 0), ("17", 1), ("18", 2)]);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
