use std::sync::atomic::{AtomicI64, Ordering};

use chrono::{DateTime, Duration, Utc};

/// Timestamp source for trace and provenance records.
///
/// `Fixed` hands out `start + n` seconds on the n-th call so that runs are
/// reproducible byte for byte.
#[derive(Debug)]
pub enum Clock {
    System,
    Fixed { start: DateTime<Utc>, ticks: AtomicI64 },
}

impl Clock {
    pub fn fixed(start: DateTime<Utc>) -> Self {
        Clock::Fixed { start, ticks: AtomicI64::new(0) }
    }

    /// Fixed clock starting at 2000-01-01T00:00:00Z.
    pub fn epoch() -> Self {
        Self::fixed(DateTime::<Utc>::from_timestamp(946_684_800, 0).expect("valid epoch"))
    }

    pub fn now(&self) -> DateTime<Utc> {
        match self {
            Clock::System => Utc::now(),
            Clock::Fixed { start, ticks } => *start + Duration::seconds(ticks.fetch_add(1, Ordering::Relaxed)),
        }
    }
}

impl Default for Clock {
    fn default() -> Self {
        Clock::System
    }
}
