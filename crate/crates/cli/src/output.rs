use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use hcs_core::{SCHEMA_VERSION, TOOL_VERSION};
use serde_json::{json, Value};

/// Provenance block embedded in every output.
pub fn meta(seed: u64) -> Value {
    json!({
        "tool_version": TOOL_VERSION,
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
    })
}

/// Same block as DIMACS comment lines.
pub fn dimacs_header(seed: u64, what: &str) -> String {
    format!("c {what}\nc tool_version {TOOL_VERSION}\nc schema_version {SCHEMA_VERSION}\nc seed {seed}\n")
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Per-input failure record, written next to the successful outputs.
pub fn error_record(seed: u64, id: &str, source: &str, error: &anyhow::Error) -> Value {
    json!({
        "meta": meta(seed),
        "instance": id,
        "source": source,
        "error": format!("{error:#}"),
    })
}
