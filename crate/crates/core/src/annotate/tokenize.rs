use std::collections::HashSet;

use super::Token;

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '’')
}

/// Split text into word and punctuation tokens with character offsets.
///
/// Words are alphanumeric runs that may contain internal hyphens or
/// apostrophes (and start with an apostrophe, as in `'s-Gravenhage`). A
/// word directly followed by `.` absorbs the period when the lowercased
/// result is a listed abbreviation or the word is a single capital letter
/// (an initial). Sentences end after `.`, `!` or `?` tokens and at newlines.
pub fn tokenize(text: &str, abbreviations: &HashSet<String>) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut sentence = 0usize;
    let mut pending_break = false;
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            if c == '\n' && !tokens.is_empty() {
                pending_break = true;
            }
            i += 1;
            continue;
        }
        if pending_break {
            sentence += 1;
            pending_break = false;
        }
        let start = i;
        let word_start = c.is_alphanumeric()
            || (is_joiner(c)
                && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric())
                && (i == 0 || !chars[i - 1].is_alphanumeric()));
        if word_start {
            i += 1;
            while i < chars.len() {
                if chars[i].is_alphanumeric() {
                    i += 1;
                } else if is_joiner(chars[i]) && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric()) {
                    i += 2;
                } else {
                    break;
                }
            }
            if chars.get(i) == Some(&'.') {
                let word: String = chars[start..i].iter().collect();
                let with_dot = format!("{}.", word.to_lowercase());
                let initial = word.chars().count() == 1 && word.chars().all(char::is_uppercase);
                if abbreviations.contains(&with_dot) || initial {
                    i += 1;
                }
            }
        } else {
            i += 1;
        }
        let surface: String = chars[start..i].iter().collect();
        let terminal = matches!(surface.as_str(), "." | "!" | "?");
        tokens.push(Token {
            id: format!("w{}", tokens.len() + 1),
            surface,
            offset: start,
            length: i - start,
            sentence,
        });
        if terminal {
            pending_break = true;
        }
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abbrevs() -> HashSet<String> {
        ["geb.".to_string()].into_iter().collect()
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("", &abbrevs()).is_empty());
    }

    #[test]
    fn offsets_hand_counted() {
        let toks = tokenize("Hij huwde in 1466.", &abbrevs());
        let surfaces: Vec<_> = toks.iter().map(|t| t.surface.as_str()).collect();
        let offsets: Vec<_> = toks.iter().map(|t| t.offset).collect();
        assert_eq!(surfaces, ["Hij", "huwde", "in", "1466", "."]);
        assert_eq!(offsets, [0, 4, 10, 13, 17]);
    }

    #[test]
    fn abbreviation_does_not_split() {
        let toks = tokenize("geb. 1466 te Rotterdam", &abbrevs());
        assert_eq!(toks[0].surface, "geb.");
        assert!(toks.iter().all(|t| t.sentence == 0));
        let toks = tokenize("geb. 1466. Te Rotterdam", &HashSet::new());
        assert_eq!(toks.iter().map(|t| t.sentence).max(), Some(2));
    }

    #[test]
    fn apostrophe_and_hyphen_words() {
        let toks = tokenize("te 's-Gravenhage, B. Glasius", &HashSet::new());
        let surfaces: Vec<_> = toks.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(surfaces, ["te", "'s-Gravenhage", ",", "B.", "Glasius"]);
    }

    #[test]
    fn newline_breaks_sentence() {
        let toks = tokenize("Erasmus\ngeboren", &HashSet::new());
        assert_eq!(toks[1].sentence, 1);
    }
}
