use std::collections::HashSet;

use super::{Entity, EntityClass, LadIndex, Lexicons, Pos};

/// Gazetteer matching (longest, then leftmost) followed by MISC tagging of
/// remaining runs of NAME terms that do not start a sentence.
pub fn tag_entities(index: &LadIndex<'_>, lex: &Lexicons) -> Vec<Entity> {
    let terms = &index.doc.terms;
    let surfaces: Vec<String> = terms.iter().map(|t| index.surface(&t.id)).collect();
    let sentences: Vec<Option<usize>> = terms.iter().map(|t| index.sentence_of(&t.id)).collect();
    let mut spans: Vec<(usize, usize, EntityClass)> = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let best = lex
            .gazetteer
            .iter()
            .filter(|g| {
                let n = g.words.len();
                n > 0
                    && i + n <= terms.len()
                    && sentences[i..i + n].iter().all(|s| *s == sentences[i])
                    && g.words.iter().zip(&surfaces[i..i + n]).all(|(w, s)| w == s)
            })
            .max_by_key(|g| g.words.len());
        match best {
            Some(g) => {
                spans.push((i, i + g.words.len(), g.class));
                i += g.words.len();
            }
            None => i += 1,
        }
    }
    let covered: HashSet<usize> = spans.iter().flat_map(|(a, b, _)| *a..*b).collect();
    let mut i = 0;
    while i < terms.len() {
        if terms[i].pos != Pos::Name || covered.contains(&i) {
            i += 1;
            continue;
        }
        let start = i;
        while i < terms.len() && terms[i].pos == Pos::Name && !covered.contains(&i) && sentences[i] == sentences[start] {
            i += 1;
        }
        let sentence_initial = start == 0 || sentences[start - 1] != sentences[start];
        if !sentence_initial {
            spans.push((start, i, EntityClass::MISC));
        }
    }
    spans.sort_by_key(|s| s.0);
    spans
        .into_iter()
        .enumerate()
        .map(|(n, (a, b, class))| Entity {
            id: format!("e{}", n + 1),
            term_ids: terms[a..b].iter().map(|t| t.id.clone()).collect(),
            class,
            external_ref: None,
        })
        .collect()
}
