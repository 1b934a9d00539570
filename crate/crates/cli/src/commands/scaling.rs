use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use hcs_core::scaling::fit_loglog;
use serde_json::json;

use crate::output::{meta, write_json};
use crate::{Global, Status};

#[derive(Args, Debug)]
pub struct ScalingArgs {
    /// Feature CSV written by `hcs features`.
    pub csv: PathBuf,
    /// Column naming each class.
    #[arg(long, default_value = "label")]
    pub group_by: String,
    #[arg(long, default_value = "numVars")]
    pub x: String,
    #[arg(long, default_value = "rootInterEdges")]
    pub y: String,
    /// Points CSV; the fits go to the same path with `.fit.json` appended.
    #[arg(long, short, default_value = "scaling.csv")]
    pub out: PathBuf,
}

pub fn run(g: &Global, args: ScalingArgs) -> Result<Status> {
    let mut reader = csv::Reader::from_path(&args.csv).with_context(|| format!("reading {}", args.csv.display()))?;
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .with_context(|| format!("{} has no column {name:?}", args.csv.display()))
    };
    let (gi, xi, yi) = (column(&args.group_by)?, column(&args.x)?, column(&args.y)?);

    let mut groups: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let num = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .with_context(|| format!("row {}: {:?} is not a number", line + 2, &record[i]))
        };
        groups.entry(record[gi].to_string()).or_default().push((num(xi)?, num(yi)?));
    }
    if groups.is_empty() {
        bail!("{} has no rows", args.csv.display());
    }

    let mut writer = csv::Writer::from_path(&args.out).with_context(|| format!("writing {}", args.out.display()))?;
    writer.write_record(["group", args.x.as_str(), args.y.as_str()])?;
    let mut fits = Vec::new();
    let mut failed = 0;
    for (group, points) in &groups {
        for (x, y) in points {
            writer.write_record([group.clone(), x.to_string(), y.to_string()])?;
        }
        match fit_loglog(points) {
            Ok(fit) => {
                println!("{group}: slope {:.4} intercept {:.4} ({} points)", fit.slope, fit.intercept, fit.points);
                fits.push(json!({
                    "group": group,
                    "points": fit.points,
                    "slope": fit.slope,
                    "intercept": fit.intercept,
                    "prefactor": fit.intercept.exp(),
                }));
            }
            Err(e) => {
                failed += 1;
                eprintln!("{group}: {e}");
                fits.push(json!({ "group": group, "points": points.len(), "error": e.to_string() }));
            }
        }
    }
    writer.flush()?;
    let mut fit_path = args.out.clone().into_os_string();
    fit_path.push(".fit.json");
    write_json(
        &PathBuf::from(fit_path),
        &json!({ "meta": meta(g.seed), "x": args.x, "y": args.y, "log": "natural", "fits": fits }),
    )?;
    match failed {
        0 => Ok(Status::Ok),
        n if n == groups.len() => bail!("no group has enough points for a fit"),
        _ => Ok(Status::Partial),
    }
}
