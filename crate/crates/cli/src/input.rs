use std::collections::HashSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hcs_core::cnf::reduce_width;
use hcs_core::{parse_dimacs, Cnf, ParseOptions};

use crate::Global;

/// One input file and the id used for its outputs.
#[derive(Clone, Debug)]
pub struct Input {
    pub id: String,
    pub path: PathBuf,
}

/// Expands paths, directories (their `*.cnf` files) and glob patterns, in
/// sorted order. Fails if nothing matches or two files share an id.
pub fn expand(specs: &[String]) -> Result<Vec<Input>> {
    let mut paths = Vec::new();
    for spec in specs {
        let p = Path::new(spec);
        if p.is_dir() {
            let pattern = p.join("*.cnf");
            paths.extend(glob_sorted(&pattern.to_string_lossy())?);
        } else if p.exists() {
            paths.push(p.to_path_buf());
        } else {
            paths.extend(glob_sorted(spec)?);
        }
    }
    if paths.is_empty() {
        bail!("no inputs matched {}", specs.join(" "));
    }
    let mut seen = HashSet::new();
    paths
        .into_iter()
        .map(|path| {
            let id = instance_id(&path);
            if !seen.insert(id.clone()) {
                bail!("duplicate instance id {id:?} ({})", path.display());
            }
            Ok(Input { id, path })
        })
        .collect()
}

fn glob_sorted(pattern: &str) -> Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = glob::glob(pattern)
        .with_context(|| format!("bad glob pattern {pattern:?}"))?
        .filter_map(|entry| entry.ok())
        .filter(|p| p.is_file())
        .collect();
    out.sort();
    Ok(out)
}

/// File name without a trailing `.cnf`.
pub fn instance_id(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    name.strip_suffix(".cnf").map(str::to_owned).unwrap_or(name)
}

/// Reads and parses one DIMACS file, reducing clause width if requested.
pub fn load(path: &Path, g: &Global) -> Result<Cnf> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let cnf = parse_dimacs(&bytes, ParseOptions { strict: g.strict })?;
    match g.max_width {
        Some(w) => Ok(reduce_width(&cnf, w)?),
        None => Ok(cnf),
    }
}
