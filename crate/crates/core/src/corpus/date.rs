use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CorpusError;

/// A calendar date whose month and day may be unknown.
///
/// Lexical form is `YYYY`, `YYYY-MM` or `YYYY-MM-DD`. Two partial dates are
/// *compatible* when they agree on every component present in both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialDate {
    year: i32,
    month: Option<u8>,
    day: Option<u8>,
}

impl PartialDate {
    pub fn new(year: i32, month: Option<u8>, day: Option<u8>) -> Result<Self, CorpusError> {
        let invalid = || CorpusError::InvalidDate(render(year, month, day));
        if let Some(m) = month {
            if !(1..=12).contains(&m) {
                return Err(invalid());
            }
        }
        match (month, day) {
            (None, Some(_)) => return Err(invalid()),
            (Some(m), Some(d)) if d == 0 || d > days_in_month(year, m) => return Err(invalid()),
            _ => {}
        }
        Ok(PartialDate { year, month, day })
    }

    pub fn year(year: i32) -> Self {
        PartialDate { year, month: None, day: None }
    }

    pub fn ymd(year: i32, month: u8, day: u8) -> Result<Self, CorpusError> {
        Self::new(year, Some(month), Some(day))
    }

    pub fn year_value(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> Option<u8> {
        self.month
    }

    pub fn day(&self) -> Option<u8> {
        self.day
    }

    /// Century with the convention that year 1500 belongs to the 15th century.
    pub fn century(&self) -> i32 {
        (self.year - 1).div_euclid(100) + 1
    }

    pub fn is_compatible(&self, other: &PartialDate) -> bool {
        if self.year != other.year {
            return false;
        }
        let agree = |a: Option<u8>, b: Option<u8>| match (a, b) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        };
        agree(self.month, other.month) && agree(self.day, other.day)
    }

    /// Number of components present (1..=3).
    pub fn precision(&self) -> u8 {
        1 + u8::from(self.month.is_some()) + u8::from(self.day.is_some())
    }

    /// Chronological ordering where a less specific date sorts before a more
    /// specific one in the same year/month.
    pub fn chronological_cmp(&self, other: &PartialDate) -> Ordering {
        (self.year, self.month.unwrap_or(0), self.day.unwrap_or(0)).cmp(&(
            other.year,
            other.month.unwrap_or(0),
            other.day.unwrap_or(0),
        ))
    }
}

fn render(year: i32, month: Option<u8>, day: Option<u8>) -> String {
    match (month, day) {
        (Some(m), Some(d)) => format!("{year:04}-{m:02}-{d:02}"),
        (Some(m), None) => format!("{year:04}-{m:02}"),
        (None, Some(d)) => format!("{year:04}-??-{d:02}"),
        (None, None) => format!("{year:04}"),
    }
}

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_month(year: i32, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap_year(year) => 29,
        2 => 28,
        _ => 0,
    }
}

impl fmt::Display for PartialDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.year, self.month, self.day))
    }
}

impl FromStr for PartialDate {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || CorpusError::InvalidDate(s.to_string());
        let mut parts = s.trim().split('-');
        let year_part = parts.next().ok_or_else(invalid)?;
        if year_part.len() != 4 || !year_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let year = year_part.parse().map_err(|_| invalid())?;
        let mut component = |len: usize| -> Result<Option<u8>, CorpusError> {
            match parts.next() {
                None => Ok(None),
                Some(p) if p.len() == len && p.bytes().all(|b| b.is_ascii_digit()) => {
                    p.parse().map(Some).map_err(|_| invalid())
                }
                Some(_) => Err(invalid()),
            }
        };
        let month = component(2)?;
        let day = if month.is_some() { component(2)? } else { None };
        if parts.next().is_some() {
            return Err(invalid());
        }
        PartialDate::new(year, month, day)
    }
}

impl Serialize for PartialDate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartialDate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
