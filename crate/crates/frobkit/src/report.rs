//! Deterministic verification reports. Given the same seed and parameters
//! the per-trial content is byte-identical; wall-clock readings live only in
//! the `micros` fields so reports diff cleanly.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub summary: String,
    /// Labelled outcomes, e.g. `("source", "yes")` and `("image", "yes")`.
    pub outcomes: Vec<(String, String)>,
    pub agree: bool,
    pub micros: u128,
    /// The instance, serialized, so a disagreement is reproducible from the
    /// report alone.
    pub instance_json: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub which: String,
    pub seed: u64,
    pub library_version: String,
    pub trials: Vec<TrialRecord>,
    pub total_micros: u128,
}

impl VerifyReport {
    pub fn new(which: &str, seed: u64) -> Self {
        VerifyReport {
            which: which.to_string(),
            seed,
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            trials: Vec::new(),
            total_micros: 0,
        }
    }

    pub fn push(&mut self, record: TrialRecord) {
        self.trials.push(record);
    }

    pub fn agreements(&self) -> usize {
        self.trials.iter().filter(|t| t.agree).count()
    }

    pub fn disagreements(&self) -> Vec<&TrialRecord> {
        self.trials.iter().filter(|t| !t.agree).collect()
    }

    pub fn all_agree(&self) -> bool {
        self.trials.iter().all(|t| t.agree)
    }

    /// Count of trials whose first outcome is "yes" (and "no").
    pub fn yes_no_counts(&self) -> (usize, usize) {
        let yes = self
            .trials
            .iter()
            .filter(|t| t.outcomes.first().map_or(false, |(_, v)| v == "yes"))
            .count();
        let no = self
            .trials
            .iter()
            .filter(|t| t.outcomes.first().map_or(false, |(_, v)| v == "no"))
            .count();
        (yes, no)
    }
}
