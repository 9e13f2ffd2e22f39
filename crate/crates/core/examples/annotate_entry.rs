// Run the rule-based annotation pipeline over one biography and look at
// the layers it produced.

use bgf::annotate::{Pipeline, PipelineConfig};
use bgf::clock::Clock;
use bgf::corpus::{parse_entries, slice_chars, Format};

const ERASMUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/erasmus.xml"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let entries = parse_entries(ERASMUS, Format::Xml)?;
    let entry = &entries[0];
    let pipeline = Pipeline::new(PipelineConfig::default())?;
    let lad = pipeline.run(entry, &Clock::epoch())?;
    let index = lad.index();
    println!("{}", entry.text);

    for t in &lad.timexes {
        let (b, e) = index.span_of(&t.term_ids).expect("timex terms exist");
        println!("timex  {:<18} -> {}", slice_chars(&entry.text, b, e).unwrap_or(""), t.value);
    }
    for e in &lad.entities {
        let (b, x) = index.span_of(&e.term_ids).expect("entity terms exist");
        println!("entity {:<18} {}", slice_chars(&entry.text, b, x).unwrap_or(""), e.class.as_str());
    }
    for p in &lad.predicates {
        let roles: Vec<&str> = p.roles.iter().map(|r| r.label.as_str()).collect();
        println!("event  {:<18} {:?} [{}]", index.surface(&p.term_id), p.frame_id, roles.join(", "));
    }
    for run in &lad.trace {
        println!("step {:<20} wrote {:?}", run.step_name, run.output_layers);
    }

    let values: Vec<String> = lad.timexes.iter().map(|t| t.value.to_string()).collect();
    assert_eq!(values, ["1466-10-28", "1536-07-12"]);
    assert_eq!(lad.trace.len(), 9);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
