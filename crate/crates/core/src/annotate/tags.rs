use super::{ConceptRef, Lexicons, Term, TermTag};

/// Profession and family-relation tags from the domain lexicon.
pub fn tag_terms(terms: &[Term], lex: &Lexicons) -> Vec<TermTag> {
    terms
        .iter()
        .flat_map(|t| {
            lex.domain_tags
                .get(&t.lemma)
                .into_iter()
                .flatten()
                .map(|tag| TermTag { term_id: t.id.clone(), tag: tag.clone() })
        })
        .collect()
}

/// Most-frequent-sense concept for every content word found in the lexicon.
pub fn tag_concepts(terms: &[Term], lex: &Lexicons) -> Vec<ConceptRef> {
    terms
        .iter()
        .filter(|t| t.pos.is_content())
        .filter_map(|t| {
            lex.best_sense(&t.lemma, t.pos)
                .map(|c| ConceptRef { term_id: t.id.clone(), concept_id: c.to_string() })
        })
        .collect()
}
