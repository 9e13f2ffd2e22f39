// Query the statement store with conjunctive patterns and move it through
// the line-based interchange format.

use bgf::corpus::Format;
use bgf::dataset::Dataset;
use bgf::graph::{match_pattern, parse_pattern_query, parse_store, serialize, SerialFormat};

const CORPUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"));

const MARRIAGES: &str = "
# who married when, according to the text
?event rdf:type bgf-frame:Marriage .
?event pb:Arg0 ?agent .
?agent owl:sameAs ?person .
?event sem:hasTime ?when .
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(CORPUS, Format::Xml, 1)?;
    let query = parse_pattern_query(&MARRIAGES.replace("bgf-frame:Marriage", &format!("<{}>", ds.iris.frame("Marriage"))))?;
    let rows = match_pattern(&ds.store, &query.patterns, query.graph.as_deref());
    for row in &rows.rows {
        let get = |v: &str| rows.get(row, v).map(|t| t.lexical()).unwrap_or_default();
        println!("{} married in {}", get("person"), get("when"));
    }
    assert!(rows.len() >= 4);

    let quads = serialize(&ds.store, SerialFormat::QuadsLines);
    let back = parse_store(&quads, SerialFormat::QuadsLines)?;
    assert_eq!(serialize(&back, SerialFormat::QuadsLines), quads);
    println!("{} statements, {} bytes as quads", ds.store.len(), quads.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
