use std::collections::HashMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use hcs_core::features::{extract_with, write_csv, FeatureRow, FEATURE_NAMES};
use serde_json::json;

use super::decompose_config;
use crate::input::{expand, load};
use crate::output::{meta, write_json};
use crate::{batch, Format, Global, Status};

#[derive(Args, Debug)]
pub struct FeaturesArgs {
    #[arg(required = true)]
    pub inputs: Vec<String>,
    /// Two-column CSV mapping instance id to class label.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, short, default_value = "features.csv")]
    pub out: PathBuf,
}

/// Reads `instance,label` pairs; blank lines, `#` comments and a leading
/// `instance,label` header are skipped.
pub fn read_labels(path: &Path) -> Result<HashMap<String, String>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading labels {}", path.display()))?;
    let mut labels = HashMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            bail!("{}: line {} has {} fields, expected 2", path.display(), i + 1, record.len());
        }
        if i == 0 && &record[0] == "instance" && &record[1] == "label" {
            continue;
        }
        labels.insert(record[0].to_string(), record[1].to_string());
    }
    Ok(labels)
}

pub fn run(g: &Global, args: FeaturesArgs) -> Result<Status> {
    if !matches!(g.format.unwrap_or(Format::Csv), Format::Csv) {
        bail!("features writes csv");
    }
    let inputs = expand(&args.inputs)?;
    let labels = match &args.labels {
        Some(path) => {
            let labels = read_labels(path)?;
            let missing: Vec<&str> = inputs
                .iter()
                .filter(|i| !labels.contains_key(&i.id))
                .map(|i| i.id.as_str())
                .collect();
            if !missing.is_empty() {
                bail!("labels file {} has no entry for: {}", path.display(), missing.join(", "));
            }
            Some(labels)
        }
        None => None,
    };

    let global = g.clone();
    let results = batch::run(&inputs, g.timeout, move |input| {
        let cnf = load(&input.path, &global)?;
        Ok(extract_with(&cnf, decompose_config(&global))?.0)
    });

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (input, result) in inputs.iter().zip(results) {
        match result {
            Ok(features) => rows.push(FeatureRow {
                instance: input.id.clone(),
                label: labels.as_ref().map(|l| l[&input.id].clone()),
                features,
            }),
            Err(e) => {
                eprintln!("{}: {e:#}", input.path.display());
                errors.push(json!({ "instance": input.id, "source": input.path, "error": format!("{e:#}") }));
            }
        }
    }
    if rows.is_empty() {
        bail!("no instance could be processed");
    }
    write_csv(&rows, &args.out)?;
    let sidecar = json!({
        "meta": meta(g.seed),
        "columns": FEATURE_NAMES.len() + 2,
        "instances": rows.iter().map(|r| &r.instance).collect::<Vec<_>>(),
        "decomposition": { "maxDepth": g.max_depth, "minSize": g.min_size, "maxWidth": g.max_width },
        "errors": errors,
    });
    write_json(&meta_path(&args.out), &sidecar)?;
    Ok(if errors.is_empty() { Status::Ok } else { Status::Partial })
}

/// `features.csv` → `features.csv.meta.json`.
pub fn meta_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}
