// Parse the bundled corpora, group entries by person and tabulate who the
// dictionaries wrote about.

use bgf::corpus::{aggregate_persons, corpus_stats, declared_links, parse_entries, serialize_entries, Facet, Format};

const CORPUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"));
const COMPOSITION: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/composition.xml"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let entries = parse_entries(CORPUS, Format::Xml)?;
    let persons = aggregate_persons(&entries, &declared_links(&entries))?;
    println!("{} entries describe {} persons", entries.len(), persons.len());
    for p in &persons {
        println!("  {:<10} {}", p.person_id, p.entry_ids.join(", "));
    }
    assert_eq!((entries.len(), persons.len()), (12, 5));

    // The JSON twin carries the same entries.
    let json = serialize_entries(&entries, Format::Json);
    assert_eq!(parse_entries(&json, Format::Json)?, entries);

    let entries = parse_entries(COMPOSITION, Format::Xml)?;
    let stats = corpus_stats(&entries, &["source", "gender"])?;
    for source in ["bwn", "vdaa"] {
        let share = stats.share((Facet::Source, source), (Facet::Gender, "female")).unwrap_or_default();
        let pct = 100.0 * *share.numer() as f64 / *share.denom() as f64;
        println!("{source}: {share} of the entries are about women ({pct:.1}%)");
    }
    let bwn = stats.share((Facet::Source, "bwn"), (Facet::Gender, "female")).unwrap();
    assert_eq!((*bwn.numer(), *bwn.denom()), (7, 100));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
