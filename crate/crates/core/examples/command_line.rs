// Drive the command-line stages in-process: ingest, annotate, interpret,
// then query with text and JSON output.

use bgf::cli::run;

fn bgf(args: &[&str]) -> Result<String, Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    run(std::iter::once("bgf").chain(args.iter().copied()), &mut out)?;
    Ok(String::from_utf8(out)?)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/erasmus.xml");
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/pipeline.toml");
    let raw = dir.path().join("raw");
    let store = dir.path().join("store");
    let (raw, store) = (raw.to_str().unwrap(), store.to_str().unwrap());

    print!("{}", bgf(&["ingest", "--in", corpus, "--format", "xml", "--out", raw])?);
    print!("{}", bgf(&["--fixed-clock", "annotate", "--corpus", raw, "--config", config])?);
    print!("{}", bgf(&["--fixed-clock", "interpret", "--corpus", raw, "--out", store, "--iri-seed", "5"])?);
    print!("{}", bgf(&["query", "--store", store, "facts", "--person", "erasmus", "--kind", "birth-place"])?);
    print!("{}", bgf(&["query", "--store", store, "timeline", "--person", "erasmus"])?);

    let json = bgf(&["query", "--store", store, "--json", "climax"])?;
    let parsed: serde_json::Value = serde_json::from_str(&json)?;
    println!("climax groups: {}", parsed["groups"].as_array().map_or(0, Vec::len));
    assert!(bgf(&["query", "--store", store, "facts", "--person", "erasmus", "--kind", "shoe-size"]).is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
