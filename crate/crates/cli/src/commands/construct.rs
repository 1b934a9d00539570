use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use hcs_core::cnf::render_dimacs;
use hcs_core::genlab::{default_charges, disjoint_copies, random_kcnf, ring_of_cliques, rooted_clique_product, tseitin};
use hcs_core::{Cnf, Vig};
use serde_json::{json, Value};

use crate::input::load;
use crate::output::{dimacs_header, meta, write_json, write_text};
use crate::{Format, Global, Status};

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// `q` cliques of `c` vertices joined in a ring, one clause per edge.
    RingOfCliques {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c: usize,
        #[command(flatten)]
        out: OutFile,
    },
    /// `t` variable-disjoint copies of a formula.
    DisjointCopies {
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        out: OutFile,
    },
    /// Attach a `p`-variable block formula of width `t` to every variable.
    RootedProduct {
        input: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[command(flatten)]
        out: OutFile,
    },
    /// Uniform random k-CNF with round(cvr·n) clauses.
    RandomKcnf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        cvr: f64,
        #[command(flatten)]
        out: OutFile,
    },
    /// Tseitin parity formula of a graph.
    Tseitin {
        /// cycle:N, complete:N, grid:RxC or torus:RxC.
        #[arg(long, conflicts_with = "from")]
        graph: Option<String>,
        /// Use the variable incidence graph of this DIMACS file.
        #[arg(long)]
        from: Option<PathBuf>,
        /// `odd` (vertex 1 charged), `even`, or a 0/1 string, one digit per vertex.
        #[arg(long, default_value = "odd")]
        charges: String,
        #[command(flatten)]
        out: OutFile,
    },
}

#[derive(Args, Debug)]
pub struct OutFile {
    /// Output file; stdout when absent. A JSON sidecar is written next to it.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

pub fn parse_graph(spec: &str) -> Result<Vig> {
    let (kind, arg) = spec.split_once(':').with_context(|| format!("graph spec {spec:?} needs kind:size"))?;
    let dims = |s: &str| -> Result<(usize, usize)> {
        let (r, c) = s.split_once('x').with_context(|| format!("expected RxC, got {s:?}"))?;
        Ok((r.parse()?, c.parse()?))
    };
    let mut edges = Vec::new();
    let n = match kind {
        "cycle" => {
            let n: usize = arg.parse()?;
            if n < 3 {
                bail!("cycle needs at least 3 vertices");
            }
            edges.extend((0..n).map(|i| (i, (i + 1) % n)));
            n
        }
        "complete" => {
            let n: usize = arg.parse()?;
            edges.extend((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))));
            n
        }
        "grid" | "torus" => {
            let (r, c) = dims(arg)?;
            let wrap = kind == "torus";
            if wrap && (r < 3 || c < 3) {
                bail!("torus needs both sides at least 3");
            }
            for i in 0..r {
                for j in 0..c {
                    if j + 1 < c || wrap {
                        edges.push((i * c + j, i * c + (j + 1) % c));
                    }
                    if i + 1 < r || wrap {
                        edges.push((i * c + j, ((i + 1) % r) * c + j));
                    }
                }
            }
            r * c
        }
        _ => bail!("unknown graph kind {kind:?}"),
    };
    Ok(Vig::from_edges(n, edges.into_iter().map(|(u, v)| (u as u32, v as u32))))
}

fn parse_charges(spec: &str, n: usize) -> Result<Vec<bool>> {
    match spec {
        "odd" => Ok(default_charges(n)),
        "even" => Ok(vec![false; n]),
        bits => {
            let charges: Vec<bool> = bits
                .chars()
                .map(|ch| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => bail!("charge digits must be 0 or 1"),
                })
                .collect::<Result<_>>()?;
            if charges.len() != n {
                bail!("{} charges for {n} vertices", charges.len());
            }
            Ok(charges)
        }
    }
}

fn emit(g: &Global, out: &OutFile, what: &str, cnf: &Cnf, details: Value) -> Result<Status> {
    let text = match g.format.unwrap_or(Format::Dimacs) {
        Format::Dimacs => {
            let mut text = dimacs_header(g.seed, what);
            text.push_str(&render_dimacs(cnf));
            text
        }
        Format::Dot => Vig::build(cnf).to_dot(),
        other => bail!("construct writes dimacs or dot, not {other:?}"),
    };
    match &out.out {
        None => print!("{text}"),
        Some(path) => {
            write_text(path, &text)?;
            let mut sidecar = json!({
                "meta": meta(g.seed),
                "construction": what,
                "numVars": cnf.num_vars,
                "numClauses": cnf.num_clauses(),
            });
            sidecar["details"] = details;
            write_json(&sidecar_path(path), &sidecar)?;
        }
    }
    Ok(Status::Ok)
}

/// `x.cnf` → `x.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

pub fn run(g: &Global, c: Construct) -> Result<Status> {
    match c {
        Construct::RingOfCliques { q, c, out } => {
            let ring = ring_of_cliques(q, c, g.seed)?;
            let details = ring.sidecar_json();
            emit(g, &out, &format!("ring-of-cliques q={q} c={c}"), &ring.cnf, details)
        }
        Construct::DisjointCopies { input, t, out } => {
            let f = load(&input, g)?;
            let cnf = disjoint_copies(&f, t)?;
            let details = json!({ "source": input, "copies": t, "varsPerCopy": f.num_vars });
            emit(g, &out, &format!("disjoint-copies t={t}"), &cnf, details)
        }
        Construct::RootedProduct { input, p, t, out } => {
            let f = load(&input, g)?;
            let rp = rooted_clique_product(&f, p, t)?;
            let blocks: Vec<Vec<u32>> = rp.blocks.iter().map(|b| b.iter().map(|v| v + 1).collect()).collect();
            let details = json!({ "source": input, "p": p, "t": t, "blocks": blocks });
            emit(g, &out, &format!("rooted-product p={p} t={t}"), &rp.cnf, details)
        }
        Construct::RandomKcnf { n, k, cvr, out } => {
            let cnf = random_kcnf(n, k, cvr, g.seed)?;
            emit(g, &out, &format!("random-kcnf n={n} k={k} cvr={cvr}"), &cnf, json!({ "n": n, "k": k, "cvr": cvr }))
        }
        Construct::Tseitin { graph, from, charges, out } => {
            let (vig, source) = match (graph, from) {
                (Some(spec), None) => (parse_graph(&spec)?, spec),
                (None, Some(path)) => (Vig::build(&load(&path, g)?), path.display().to_string()),
                _ => bail!("tseitin needs --graph or --from"),
            };
            let ch = parse_charges(&charges, vig.num_vertices())?;
            let cnf = tseitin(&vig, &ch, g.seed)?;
            let odd = ch.iter().filter(|&&b| b).count() % 2 == 1;
            let details = json!({
                "graph": source,
                "vertices": vig.num_vertices(),
                "edges": vig.num_edges(),
                "charges": ch.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
                "satisfiable": !odd,
            });
            emit(g, &out, "tseitin", &cnf, details)
        }
    }
}
