// Two historiographic measures: how much each dictionary leans on
// adjectives, and which names the biographies keep mentioning.

use bgf::analytics::{adjective_ratios, name_mentions, NameConfig};
use bgf::corpus::Format;
use bgf::dataset::Dataset;

const CORPUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(CORPUS, Format::Xml, 1)?;
    let ratios = adjective_ratios(ds.documents());
    for r in &ratios {
        println!("{:<5} {} adjectives over {} words in {} documents: {}", r.source, r.adjectives, r.words, r.documents, r.ratio.decimal());
    }
    assert_eq!(ratios.len(), 3);

    let names = name_mentions(ds.entries.iter().map(|e| e.text.as_str()), &NameConfig::default());
    println!("most mentioned:");
    for n in names.iter().take(5) {
        println!("  {:>2} {}", n.count, n.name);
    }
    assert_eq!(names[0].name, "Hugo de Groot");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
