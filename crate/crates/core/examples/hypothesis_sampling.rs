// Draw hypothesis-confirming, hypothesis-opposing and neutral samples and
// check whether the tool's judgements agree with a human's.

use std::collections::BTreeMap;

use bgf::evaluate::{compare_conclusions, hypothesis_sample, ScoredDoc};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Subjectivity scores for nine documents from each of two dictionaries.
    let mut scores = Vec::new();
    for i in 0..9 {
        scores.push(ScoredDoc::new(format!("vdaa-{i}"), "vdaa", 0.02 * (i as f64 + 1.0)));
        scores.push(ScoredDoc::new(format!("nnbw-{i}"), "nnbw", 0.015 * (i as f64 + 1.0)));
    }
    let samples = hypothesis_sample(&scores, "vdaa", "nnbw", 3)?;
    for (name, docs) in samples.samples() {
        let ids: Vec<&str> = docs.iter().map(|d| d.doc_id.as_str()).collect();
        println!("{name:<8} {}", ids.join(" "));
        assert_eq!(docs.len(), 6);
    }

    // The tool calls a document subjective above 0.1; the human reader is
    // stricter about the older dictionary.
    let system: BTreeMap<String, bool> = scores.iter().map(|d| (d.doc_id.clone(), d.score > 0.1)).collect();
    let mut human = system.clone();
    human.insert("vdaa-5".into(), false);
    human.insert("vdaa-6".into(), false);
    let report = compare_conclusions(&samples, &human, &system);
    for s in &report.samples {
        println!("{:<8} agreement {}", s.sample, s.rate.decimal());
    }
    for e in &report.sources {
        println!("{:<5} over-estimates {} under-estimates {}", e.source, e.over, e.under);
    }
    println!("bias flags: {:?}", report.bias_flags);
    assert_eq!(report.bias_flags, ["vdaa+"]);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
