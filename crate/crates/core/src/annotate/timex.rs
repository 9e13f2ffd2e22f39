use crate::corpus::PartialDate;

use super::{LadIndex, Lexicons, Pos, Timex};

fn year_of(surface: &str) -> Option<i32> {
    if surface.len() == 4 && surface.bytes().all(|b| b.is_ascii_digit()) {
        surface.parse().ok().filter(|y| (1000..=2100).contains(y))
    } else {
        None
    }
}

fn day_of(surface: &str) -> Option<u8> {
    if (1..=2).contains(&surface.len()) && surface.bytes().all(|b| b.is_ascii_digit()) {
        surface.parse().ok().filter(|d| (1..=31).contains(d))
    } else {
        None
    }
}

/// Recognize day-month-year, month-year and bare-year expressions.
///
/// Scans each sentence left to right; at every position the longest
/// pattern that yields a valid calendar date wins and its terms are consumed.
pub fn tag_timex(index: &LadIndex<'_>, lex: &Lexicons) -> Vec<Timex> {
    let terms = &index.doc.terms;
    let surface = |i: usize| index.surface(&terms[i].id);
    let sentence = |i: usize| index.sentence_of(&terms[i].id);
    let month = |i: usize| lex.months.get(&surface(i).to_lowercase()).copied();
    let mut out = Vec::new();
    let mut i = 0;
    while i < terms.len() {
        let same_sentence = |j: usize| j < terms.len() && sentence(j) == sentence(i);
        let mut matched: Option<(usize, PartialDate)> = None;
        if terms[i].pos == Pos::Num && same_sentence(i + 2) {
            if let (Some(d), Some(m), Some(y)) = (day_of(&surface(i)), month(i + 1), year_of(&surface(i + 2))) {
                matched = PartialDate::ymd(y, m, d).ok().map(|v| (3, v));
            }
        }
        if matched.is_none() && same_sentence(i + 1) {
            if let (Some(m), Some(y)) = (month(i), year_of(&surface(i + 1))) {
                matched = PartialDate::new(y, Some(m), None).ok().map(|v| (2, v));
            }
        }
        if matched.is_none() && terms[i].pos == Pos::Num {
            matched = year_of(&surface(i)).map(|y| (1, PartialDate::year(y)));
        }
        match matched {
            Some((len, value)) => {
                out.push(Timex {
                    id: format!("tmx{}", out.len() + 1),
                    term_ids: terms[i..i + len].iter().map(|t| t.id.clone()).collect(),
                    value,
                });
                i += len;
            }
            None => i += 1,
        }
    }
    out
}

/// Render a date back through the pattern templates using canonical month names.
pub fn render_timex(value: &PartialDate, lex: &Lexicons) -> String {
    let name = |m: u8| lex.month_names.get(&m).cloned().unwrap_or_default();
    match (value.month(), value.day()) {
        (Some(m), Some(d)) => format!("{d} {} {:04}", name(m), value.year_value()),
        (Some(m), None) => format!("{} {:04}", name(m), value.year_value()),
        _ => format!("{:04}", value.year_value()),
    }
}
