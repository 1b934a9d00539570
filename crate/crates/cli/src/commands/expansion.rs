use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use hcs_core::expansion::{audit_json, edge_expansion_exact, hcs_expansion_audit_with, report_json, EXPANSION_LIMIT};
use hcs_core::{decompose, Vig};
use serde_json::json;

use super::{decompose_config, record_failures};
use crate::input::{expand, load};
use crate::output::{meta, write_json};
use crate::{batch, Global, Status};

#[derive(Args, Debug)]
pub struct ExpansionArgs {
    #[arg(required = true)]
    pub inputs: Vec<String>,
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
    /// Largest tree node whose exact expansion is computed (at most 24).
    #[arg(long, default_value_t = EXPANSION_LIMIT)]
    pub node_limit: usize,
}

pub fn run(g: &Global, args: ExpansionArgs) -> Result<Status> {
    let inputs = expand(&args.inputs)?;
    let (global, out, limit) = (g.clone(), args.out.clone(), args.node_limit);
    let results = batch::run(&inputs, g.timeout, move |input| {
        let cnf = load(&input.path, &global)?;
        let vig = Vig::build(&cnf);
        let whole = if vig.num_vertices() <= EXPANSION_LIMIT {
            report_json(&edge_expansion_exact(&vig)?)
        } else {
            json!({ "skipped": format!("{} vertices exceed the limit of {EXPANSION_LIMIT}", vig.num_vertices()) })
        };
        let tree = decompose(&vig, decompose_config(&global))?;
        let doc = json!({
            "meta": meta(global.seed),
            "instance": input.id,
            "numVars": cnf.num_vars,
            "expansion": whole,
            "audit": audit_json(&hcs_expansion_audit_with(&vig, &tree, limit)),
        });
        write_json(&out.join(format!("{}.expansion.json", input.id)), &doc)
    });
    record_failures(g, &args.out, &inputs, &results)
}
