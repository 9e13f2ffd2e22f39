// Follow a machine-generated description back to its text, the activity
// that produced it, the agents responsible and the plan it followed.

use bgf::corpus::Format;
use bgf::dataset::Dataset;
use bgf::service::{provenance_chain, ProvenanceChain};

const FIG3: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/fig3.xml"));

fn show(chain: &ProvenanceChain, depth: usize) {
    let pad = "  ".repeat(depth);
    println!("{pad}{}", chain.entity);
    if let Some(p) = &chain.process {
        println!("{pad}  generated by {} ({} .. {})", p.activity, p.started, p.ended);
        for s in &p.steps {
            println!("{pad}    {:>2}. {:<20} {} @ {}", s.index, s.name, s.tool_version, s.commit);
        }
    }
    for a in &chain.responsibility {
        println!("{pad}  responsible: {} as {}", a.iri, a.role.as_str());
    }
    for d in &chain.data.derived_from {
        show(d, depth + 1);
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(FIG3, Format::Xml, 3)?;
    let chain = provenance_chain(&ds.store, &ds.iris.nlp_description("fig3"))?;
    show(&chain, 0);
    let process = chain.process.as_ref().expect("generated by an activity");
    assert_eq!(process.steps.len(), 10);
    assert!(!chain.responsibility.is_empty());
    assert!(chain.plan.is_some());
    assert_eq!(chain.data.derived_from.len(), 1);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
