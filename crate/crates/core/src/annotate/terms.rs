use std::collections::BTreeMap;

use super::{Lexicons, Pos, Term, Token};

/// Build one term per token: pronoun lexicon, lemma lexicon, number and
/// punctuation detection, capitalized names, suffix rules, then a lowercase
/// fallback with pos OTHER.
pub fn lemmatize_and_tag(tokens: &[Token], lex: &Lexicons) -> Vec<Term> {
    tokens
        .iter()
        .enumerate()
        .map(|(i, tok)| {
            let (lemma, pos, morpho) = analyze(&tok.surface, lex);
            Term { id: format!("t{}", i + 1), token_ids: vec![tok.id.clone()], lemma, pos, morpho }
        })
        .collect()
}

pub fn analyze(surface: &str, lex: &Lexicons) -> (String, Pos, BTreeMap<String, String>) {
    let lower = surface.to_lowercase();
    if let Some(morpho) = lex.pronouns.get(&lower) {
        return (lower, Pos::Pron, morpho.clone());
    }
    if let Some(entry) = lex.forms.get(&lower) {
        return (entry.lemma.clone(), entry.pos, entry.feats.clone());
    }
    if surface.chars().all(|c| c.is_ascii_digit()) {
        return (surface.to_string(), Pos::Num, BTreeMap::new());
    }
    if !surface.chars().any(char::is_alphanumeric) {
        return (surface.to_string(), Pos::Punct, BTreeMap::new());
    }
    if surface.chars().next().is_some_and(char::is_uppercase) {
        return (surface.to_string(), Pos::Name, BTreeMap::new());
    }
    let len = lower.chars().count();
    for rule in &lex.suffix_rules {
        let sfx_len = rule.suffix.chars().count();
        if len >= sfx_len + 2 && lower.ends_with(&rule.suffix) {
            let stem = &lower[..lower.len() - rule.suffix.len()];
            return (format!("{stem}{}", rule.replacement), rule.pos, BTreeMap::new());
        }
    }
    (lower, Pos::Other, BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicon_and_fallbacks() {
        let lex = Lexicons::builtin();
        assert_eq!(analyze("huwde", &lex).0, "huwen");
        assert_eq!(analyze("huwde", &lex).1, Pos::Verb);
        assert_eq!(analyze(".", &lex), (".".into(), Pos::Punct, BTreeMap::new()));
        assert_eq!(analyze("1466", &lex).1, Pos::Num);
        assert_eq!(analyze("Rotterdam", &lex).1, Pos::Name);
        assert_eq!(analyze("bouwde", &lex), ("bouwen".into(), Pos::Verb, BTreeMap::new()));
        assert_eq!(analyze("xyz", &lex), ("xyz".into(), Pos::Other, BTreeMap::new()));
        let (_, pos, morpho) = analyze("Zij", &lex);
        assert_eq!(pos, Pos::Pron);
        assert_eq!(morpho["gender"], "female");
    }
}
