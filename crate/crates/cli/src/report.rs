//! The JSON report envelope every subcommand emits.

use serde::Serialize;
use serde_json::Value;

/// A digest of one input file the run consumed, for provenance.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Where the run's inputs and randomness came from.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
}

/// The report envelope: a stable schema version, the command line that
/// produced it, the verb-specific results, any warnings (always present,
/// possibly empty), and provenance. Serialized pretty-printed so reports
/// diff cleanly; the representation is deterministic for fixed inputs.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: Vec<String>,
    pub results: Value,
    pub warnings: Vec<String>,
    pub provenance: Provenance,
}

impl Report {
    pub fn to_json_text(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        text.push('\n');
        text
    }
}
