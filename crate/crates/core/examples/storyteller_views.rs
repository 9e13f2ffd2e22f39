// Data behind the actor-line and climax visualizations.

use bgf::analytics::{climax_scores, participation_graph, storyteller_export, ClimaxMode};
use bgf::corpus::Format;
use bgf::dataset::Dataset;

const CORPUS: &[u8] = include_bytes!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/corpus.xml"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = Dataset::reproducible(CORPUS, Format::Xml, 1)?;
    let people = [ds.iris.person("grotius"), ds.iris.person("maria")];
    let graph = participation_graph(&ds.store, &people, &[], &ds.iris)?;
    for a in &graph.actors {
        println!("actor {} (colour {}, {} events)", a.label, a.color_index, a.event_count);
    }
    for e in &graph.events {
        println!("  {} {:<12} {}", e.year, e.event_type, e.participants.len());
    }
    let shared = graph.events.iter().find(|e| e.participants.len() == 2).expect("the couple meet");
    println!("lines cross at {} {}", shared.event_type, shared.year);
    assert_eq!((shared.event_type.as_str(), shared.year), ("Marriage", 1608));

    let climax = climax_scores(&ds.store, ClimaxMode::DistinctParticipants, &ds.iris);
    for g in &climax.groups {
        let points: Vec<String> = g.points.iter().map(|p| format!("{}:{}", p.year, p.score)).collect();
        println!("{:<12} {}", g.event_type, points.join(" "));
    }
    assert_eq!(climax.score("Marriage", 1608), Some(2));

    let export = storyteller_export(&ds.store, &[], &[], ClimaxMode::EventCount, &ds.iris)?;
    println!("export: {} actors, {} event nodes, {} climax groups", export.actors.len(), export.events.len(), export.groups.len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
