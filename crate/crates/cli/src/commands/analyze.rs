use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use hcs_core::expansion::{audit_json, hcs_expansion_audit_with};
use hcs_core::features::features_of;
use hcs_core::{decompose, Vig};
use serde_json::json;

use super::{decompose_config, record_failures};
use crate::input::{expand, load};
use crate::output::{meta, write_json, write_text};
use crate::{batch, Format, Global, Status};

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// DIMACS files, directories or glob patterns.
    #[arg(required = true)]
    pub inputs: Vec<String>,
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
    /// Include 1-based vertex lists in the tree export.
    #[arg(long)]
    pub vertices: bool,
    /// Largest community whose exact expansion is computed (at most 24).
    #[arg(long, default_value_t = 16)]
    pub expansion_limit: usize,
}

pub fn run(g: &Global, args: AnalyzeArgs) -> Result<Status> {
    let format = g.format.unwrap_or(Format::Json);
    if !matches!(format, Format::Json | Format::Dot) {
        bail!("analyze writes json or dot");
    }
    let inputs = expand(&args.inputs)?;
    let (global, out) = (g.clone(), args.out.clone());
    let (vertices, limit) = (args.vertices, args.expansion_limit);
    let results = batch::run(&inputs, g.timeout, move |input| {
        let cnf = load(&input.path, &global)?;
        let vig = Vig::build(&cnf);
        let tree = decompose(&vig, decompose_config(&global))?;
        if format == Format::Dot {
            return write_text(&out.join(format!("{}.dot", input.id)), &tree.to_dot());
        }
        let features = features_of(&cnf, &tree)?;
        let audit = hcs_expansion_audit_with(&vig, &tree, limit);
        let doc = json!({
            "meta": meta(global.seed),
            "instance": input.id,
            "numVars": cnf.num_vars,
            "numClauses": cnf.num_clauses(),
            "graphFingerprint": format!("{:016x}", tree.fingerprint),
            "config": {
                "maxDepth": global.max_depth,
                "minSize": global.min_size,
                "maxWidth": global.max_width,
                "strict": global.strict,
            },
            "tree": tree.to_json(vertices),
            "features": features.to_json(),
            "expansionAudit": audit_json(&audit),
        });
        write_json(&out.join(format!("{}.json", input.id)), &doc)
    });
    record_failures(g, &args.out, &inputs, &results)
}
