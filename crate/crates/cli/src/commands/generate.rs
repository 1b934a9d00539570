use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use hcs_core::cnf::render_dimacs;
use hcs_core::genlab::{generate, GenParams};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::output::{dimacs_header, error_record, meta, write_json, write_text};
use crate::{Global, Status};

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// JSON array of parameter objects; entries without a seed use --seeds.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub depth: u32,
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    #[arg(long, default_value_t = 16)]
    pub leaf_size: usize,
    /// Clause width k.
    #[arg(long, default_value_t = 3)]
    pub width: usize,
    #[arg(long, default_value_t = 4.0)]
    pub cvr: f64,
    /// Power-law exponent for variable choice inside leaves.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, default_value_t = 0.02)]
    pub bridge_fraction: f64,
    #[arg(long, default_value_t = 0.5)]
    pub inter_var_fraction: f64,
    /// Comma-separated seeds to sweep; defaults to --seed.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Vec<u64>,
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
}

/// First 12 hex digits of SHA-256 over the parameters without the seed.
pub fn param_hash(p: &GenParams) -> String {
    let mut v = serde_json::to_value(p).expect("params serialize");
    v.as_object_mut().unwrap().remove("seed");
    let digest = Sha256::digest(v.to_string().as_bytes());
    hex::encode(digest)[..12].to_string()
}

fn entries(g: &Global, args: &GenerateArgs) -> Result<Vec<Result<GenParams>>> {
    let seeds = if args.seeds.is_empty() { vec![g.seed] } else { args.seeds.clone() };
    let Some(path) = &args.manifest else {
        return Ok(seeds
            .into_iter()
            .map(|seed| {
                Ok(GenParams {
                    depth: args.depth,
                    degree: args.degree,
                    leaf_size: args.leaf_size,
                    clause_width: args.width,
                    cvr: args.cvr,
                    powerlaw_beta: args.beta,
                    bridge_fraction: args.bridge_fraction,
                    inter_var_fraction: args.inter_var_fraction,
                    seed,
                })
            })
            .collect());
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let list: Vec<Value> = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut out = Vec::new();
    for entry in list {
        if entry.get("seed").is_some() {
            out.push(serde_json::from_value(entry).map_err(Into::into));
            continue;
        }
        for &seed in &seeds {
            let mut e = entry.clone();
            if let Some(obj) = e.as_object_mut() {
                obj.insert("seed".into(), seed.into());
            }
            out.push(serde_json::from_value(e).map_err(Into::into));
        }
    }
    if out.is_empty() {
        bail!("manifest {} is empty", path.display());
    }
    Ok(out)
}

pub fn run(g: &Global, args: GenerateArgs) -> Result<Status> {
    let mut failed = 0;
    for (i, entry) in entries(g, &args)?.into_iter().enumerate() {
        let name = match &entry {
            Ok(p) => format!("planted-{}-s{}", param_hash(p), p.seed),
            Err(_) => format!("entry-{i}"),
        };
        let result = entry.and_then(|p| generate(&p).map(|inst| (p, inst)).map_err(Into::into));
        match result {
            Ok((p, inst)) => {
                let mut text = dimacs_header(p.seed, &format!("planted HCS instance {name}"));
                text.push_str(&render_dimacs(&inst.cnf));
                write_text(&args.out.join(format!("{name}.cnf")), &text)?;
                let mut sidecar = inst.sidecar_json();
                sidecar["meta"] = meta(p.seed);
                sidecar["paramHash"] = json!(param_hash(&p));
                write_json(&args.out.join(format!("{name}.json")), &sidecar)?;
            }
            Err(e) => {
                failed += 1;
                eprintln!("{name}: {e:#}");
                write_json(&args.out.join(format!("{name}.error.json")), &error_record(g.seed, &name, "generate", &e))?;
            }
        }
    }
    Ok(if failed == 0 { Status::Ok } else { Status::Partial })
}
