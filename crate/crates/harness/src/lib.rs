//! Instance files, verification suite and report emission for the
//! wakkit toolkit.

pub mod instance;
pub mod report;
pub mod setup;
pub mod suite;

use anyhow::{Context, Result};

use wakkit_core::Limits;

/// Reads the dimension cap from `WAKKIT_MAX_DIM` (default 64).
pub fn limits_from_env() -> Limits {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var("WAKKIT_MAX_DIM") {
        if let Ok(n) = v.parse::<usize>() {
            limits.max_dim = n;
        }
    }
    limits
}

/// Parses and builds an instance from a file path.
pub fn load(path: &std::path::Path, limits: Limits) -> Result<setup::Setup> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file = instance::InstanceFile::parse(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    setup::build(file, limits).with_context(|| format!("building {}", path.display()))
}
