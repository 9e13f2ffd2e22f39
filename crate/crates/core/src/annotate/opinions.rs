use std::collections::HashSet;

use super::{EntityClass, LadIndex, Lexicons, Opinion, Pos, RoleLabel};

/// Polar adjectives and adverbs. The holder is the person Arg0 of a speech
/// predicate in the same sentence; absent otherwise (the author).
pub fn tag_opinions(index: &LadIndex<'_>, lex: &Lexicons, speech_frames: &[String]) -> Vec<Opinion> {
    let doc = index.doc;
    let per_terms: HashSet<&str> = doc
        .entities
        .iter()
        .filter(|e| e.class == EntityClass::PER)
        .flat_map(|e| e.term_ids.iter().map(String::as_str))
        .collect();
    doc.terms
        .iter()
        .filter(|t| matches!(t.pos, Pos::Adj | Pos::Adv))
        .filter_map(|t| {
            let polarity = *lex.polarity.get(&t.lemma)?;
            let sentence = index.sentence_of(&t.id);
            let holder = doc
                .predicates
                .iter()
                .filter(|p| p.frame_id.as_ref().is_some_and(|f| speech_frames.contains(f)))
                .filter(|p| index.sentence_of(&p.term_id) == sentence)
                .flat_map(|p| p.roles.iter().filter(|r| r.label == RoleLabel::Arg0))
                .find(|r| r.term_ids.iter().any(|id| per_terms.contains(id.as_str())))
                .map(|r| r.term_ids.clone());
            Some(Opinion { term_ids: vec![t.id.clone()], polarity, holder })
        })
        .collect()
}
