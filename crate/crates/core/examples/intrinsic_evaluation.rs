// Score annotations against a gold standard under exact and overlapping
// span matching.

use bgf::annotate::{Pipeline, PipelineConfig};
use bgf::clock::Clock;
use bgf::corpus::BiographyEntry;
use bgf::evaluate::{compare_items, gold_from_system, intrinsic_eval_both, GoldLayer, Matching, SpanItem};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Ten gold entities; the system misses two and invents one.
    let gold: Vec<SpanItem> = (0..10).map(|i| SpanItem::new(i * 10, i * 10 + 5, "PER")).collect();
    let mut system: Vec<SpanItem> = gold[2..].to_vec();
    system.push(SpanItem::new(200, 204, "LOC"));
    let report = compare_items("seeded", GoldLayer::Entities, &gold, &system, Matching::ExactSpan);
    println!("P {} R {} F1 {}", report.precision, report.recall, report.f1);
    assert_eq!((report.precision.numerator, report.precision.denominator), (8, 9));
    assert_eq!((report.recall.numerator, report.recall.denominator), (4, 5));

    // Against a real document: a gold file seeded from the system output and
    // then corrected by hand.
    let entry = BiographyEntry::new(
        "d1",
        "nnbw",
        "Maria van Reigersberch",
        "Maria van Reigersberch huwde in 1608 te Veere en woonde later in Den Haag.",
    );
    let lad = Pipeline::new(PipelineConfig::default())?.run(&entry, &Clock::epoch())?;
    let mut gold = gold_from_system(&lad, GoldLayer::Entities);
    for item in &mut gold.items {
        match item.label.as_str() {
            // The annotator disagrees about the class of the person...
            "PER" => item.label = "MISC".into(),
            // ...and about where "Den Haag" starts.
            "LOC" if item.end - item.begin == 8 => item.begin += 4,
            _ => {}
        }
    }
    gold.validate(entry.char_len())?;
    let [exact, overlap] = intrinsic_eval_both(&lad, &gold)?;
    for r in [&exact, &overlap] {
        println!("{} {}: P {} R {} F1 {}", r.layer, r.matching.as_str(), r.precision.decimal(), r.recall.decimal(), r.f1.decimal());
        for e in &r.errors {
            println!("  {:?} gold {:?} system {:?}", e.kind, e.gold, e.system);
        }
    }
    assert_eq!(exact.true_positives, 1);
    assert_eq!(overlap.true_positives, 2);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
