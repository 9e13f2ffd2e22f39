// Order every event a person takes part in, across all their biographies.

use bgf::analytics::timeline;
use bgf::corpus::Format;
use bgf::dataset::Dataset;

const CORPUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(CORPUS, Format::Xml, 1)?;
    let t = timeline(&ds.store, &ds.iris.person("grotius"), &ds.iris)?;
    println!("{}", t.person);
    for e in &t.entries {
        let date = e.date.map_or_else(|| "undated".to_string(), |d| d.to_string());
        println!(
            "  {date:<11} {:<28} {:<11} {} {:?}",
            e.types.join(", "),
            e.place.as_deref().unwrap_or("-"),
            e.entry_id.as_deref().unwrap_or("-"),
            e.offsets
        );
    }
    let first = t.entries.first().expect("events");
    assert!(first.types.iter().any(|x| x == "Being_born"));
    let dated: Vec<_> = t.entries.iter().filter_map(|e| e.date).collect();
    assert!(dated.windows(2).all(|w| w[0].chronological_cmp(&w[1]).is_le()));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
