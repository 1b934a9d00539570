pub mod analyze;
pub mod construct;
pub mod expansion;
pub mod features;
pub mod generate;
pub mod scaling;

use std::path::Path;

use anyhow::Result;
use hcs_core::DecomposeConfig;

use crate::input::Input;
use crate::output::{error_record, write_json};
use crate::{Global, Status};

pub fn decompose_config(g: &Global) -> DecomposeConfig {
    DecomposeConfig {
        seed: g.seed,
        max_depth: g.max_depth,
        min_size: g.min_size,
    }
}

/// Writes `<id>.error.json` for every failed input and reports the status.
pub fn record_failures<T>(g: &Global, out: &Path, inputs: &[Input], results: &[Result<T>]) -> Result<Status> {
    let mut failed = 0;
    for (input, result) in inputs.iter().zip(results) {
        if let Err(e) = result {
            failed += 1;
            eprintln!("{}: {e:#}", input.path.display());
            let record = error_record(g.seed, &input.id, &input.path.to_string_lossy(), e);
            write_json(&out.join(format!("{}.error.json", input.id)), &record)?;
        }
    }
    Ok(if failed == 0 { Status::Ok } else { Status::Partial })
}
