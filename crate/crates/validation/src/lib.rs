//! Reporting helper for the acceptance gate in `tests/acceptance.rs`.
//!
//! Each criterion collects the clauses that failed and reduces them to one
//! `criterion <k>: PASS|FAIL ...` line.

use std::time::{Duration, Instant};

pub struct Gate {
    id: u32,
    title: &'static str,
    start: Instant,
    limit: Duration,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Gate {
    /// Starts the clock for criterion `id` with a wall-time limit.
    pub fn new(id: u32, title: &'static str, limit_secs: u64) -> Self {
        Self {
            id,
            title,
            start: Instant::now(),
            limit: Duration::from_secs(limit_secs),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, clause: impl Into<String>) {
        if !ok {
            self.failures.push(clause.into());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// The verdict line, counting an overrun of the time limit as a failure.
    pub fn verdict(&mut self) -> (bool, String) {
        let elapsed = self.start.elapsed();
        if elapsed > self.limit {
            self.failures
                .push(format!("took {elapsed:.2?}, limit {:?}", self.limit));
        }
        let pass = self.failures.is_empty();
        let mut line = format!(
            "criterion {}: {} {} ({elapsed:.2?})",
            self.id,
            if pass { "PASS" } else { "FAIL" },
            self.title
        );
        if !self.notes.is_empty() {
            line.push_str(&format!(" [{}]", self.notes.join("; ")));
        }
        if !pass {
            line.push_str(&format!(" failed: {}", self.failures.join("; ")));
        }
        (pass, line)
    }
}
