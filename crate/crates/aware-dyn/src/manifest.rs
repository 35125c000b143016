use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Record written next to the outputs of every run.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub version: String,
    /// SHA-256 over version, subcommand, seed and the canonical config.
    pub scenario_hash: String,
    pub seed: Option<u64>,
    pub model: String,
    pub started: String,
    pub finished: String,
    pub outputs: Vec<String>,
    /// Every setting the run used, defaults included.
    pub settings: Value,
    pub results: Value,
}

pub fn scenario_hash(subcommand: &str, seed: Option<u64>, canonical: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("aware-dyn {VERSION}\n{subcommand}\n"));
    match seed {
        Some(s) => h.update(format!("seed={s}\n")),
        None => h.update("seed=none\n"),
    }
    h.update(canonical.as_bytes());
    hex::encode(h.finalize())
}

pub fn now() -> String {
    OffsetDateTime::now_utc().format(&Rfc3339).unwrap_or_else(|_| "unknown".into())
}
