//! The 49-column structural feature vector of a formula.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::cnf::{base_features, Cnf};
use crate::error::{Error, Result};
use crate::hcs::{decompose, DecomposeConfig, HcsTree, LevelValue, NodeMetric};
use crate::mergeability::{level_mean, node_mergeability};
use crate::vig::Vig;

/// Canonical column names, in output order.
pub const FEATURE_NAMES: [&str; 49] = [
    "numVars",
    "numClauses",
    "CVR",
    "dvMean",
    "dvVariance",
    "numCommunities",
    "numLeaves",
    "avgLeafDepth",
    "depthMostLeaves",
    "rootInterVars",
    "lvl2InterVars",
    "lvl3InterVars",
    "rootInterEdges",
    "lvl2InterEdges",
    "lvl3InterEdges",
    "rootDegree",
    "lvl2Degree",
    "lvl3Degree",
    "maxDegree",
    "rootModularity",
    "lvl2Modularity",
    "lvl3Modularity",
    "maxModularity",
    "rootMergeability",
    "lvl2Mergeability",
    "lvl3Mergeability",
    "maxMergeability",
    "lvl2CommunitySize",
    "lvl3CommunitySize",
    "leafCommunitySize",
    "numLeaves/numCommunities",
    "rootInterEdges/rootInterVars",
    "lvl2InterEdges/lvl2InterVars",
    "lvl3InterEdges/lvl3InterVars",
    "max(interEdges/interVars)",
    "rootInterEdges/rootCommunitySize",
    "lvl2InterEdges/lvl2CommunitySize",
    "lvl3InterEdges/lvl3CommunitySize",
    "max(interEdges/communitySize)",
    "rootInterVars/rootCommunitySize",
    "lvl2InterVars/lvl2CommunitySize",
    "lvl3InterVars/lvl3CommunitySize",
    "max(interVars/communitySize)",
    "rootInterEdges/rootDegree",
    "lvl2InterEdges/lvl2Degree",
    "lvl3InterEdges/lvl3Degree",
    "rootInterVars/rootDegree",
    "lvl2InterVars/lvl2Degree",
    "lvl3InterVars/lvl3Degree",
];

pub const NUM_FEATURES: usize = FEATURE_NAMES.len();

/// Feature values plus a flag per column telling whether the value is
/// backed by data (`false`: absent level or a zero denominator, value 0).
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector {
    pub values: [f64; NUM_FEATURES],
    pub present: [bool; NUM_FEATURES],
}

impl FeatureVector {
    pub fn index_of(name: &str) -> Option<usize> {
        FEATURE_NAMES.iter().position(|&n| n == name)
    }

    /// Value by canonical name. Panics on an unknown name.
    pub fn get(&self, name: &str) -> f64 {
        self.values[Self::index_of(name).unwrap_or_else(|| panic!("unknown feature {name}"))]
    }

    pub fn is_present(&self, name: &str) -> bool {
        self.present[Self::index_of(name).unwrap_or_else(|| panic!("unknown feature {name}"))]
    }

    /// JSON object; absent values are `null`.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (i, name) in FEATURE_NAMES.iter().enumerate() {
            let v = if self.present[i] {
                json!(self.values[i])
            } else {
                Value::Null
            };
            map.insert(name.to_string(), v);
        }
        Value::Object(map)
    }
}

struct Builder {
    values: Vec<f64>,
    present: Vec<bool>,
}

impl Builder {
    fn push(&mut self, v: f64) {
        self.values.push(v);
        self.present.push(true);
    }

    fn level(&mut self, v: LevelValue) {
        self.values.push(v.value);
        self.present.push(v.present);
    }

    fn ratio(&mut self, num: LevelValue, den: LevelValue) {
        let r = ratio(num, den);
        self.level(r);
    }
}

/// `num / den`, absent when either side is absent or the denominator is 0.
pub fn ratio(num: LevelValue, den: LevelValue) -> LevelValue {
    if num.present && den.present && den.value != 0.0 {
        LevelValue::present(num.value / den.value)
    } else {
        LevelValue::ABSENT
    }
}

/// Largest value among the present ones; absent if none is present.
fn max_present(values: impl IntoIterator<Item = LevelValue>) -> LevelValue {
    values
        .into_iter()
        .filter(|v| v.present)
        .fold(LevelValue::ABSENT, |acc, v| {
            if !acc.present || v.value > acc.value {
                v
            } else {
                acc
            }
        })
}

/// Builds the VIG, decomposes it and computes all features.
pub fn extract(cnf: &Cnf, seed: u64) -> Result<FeatureVector> {
    extract_with(cnf, DecomposeConfig::with_seed(seed)).map(|(f, _)| f)
}

/// Like [`extract`] with an explicit decomposition config; also returns the tree.
pub fn extract_with(cnf: &Cnf, config: DecomposeConfig) -> Result<(FeatureVector, HcsTree)> {
    let vig = Vig::build(cnf);
    if vig.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let tree = decompose(&vig, config)?;
    let features = features_of(cnf, &tree)?;
    Ok((features, tree))
}

/// Features of `cnf` given its (already computed) HCS tree.
pub fn features_of(cnf: &Cnf, tree: &HcsTree) -> Result<FeatureVector> {
    let base = base_features(cnf)?;
    let levels = tree.depth();
    let agg = |d: usize, m: NodeMetric| tree.level_aggregate(d, m);
    let per_level = |m: NodeMetric| (1..=levels).map(move |d| agg(d, m)).collect::<Vec<_>>();

    let num_communities = tree.nodes.len();
    let leaves: Vec<_> = tree.leaves().collect();
    let num_leaves = leaves.len();
    let avg_leaf_depth = leaves.iter().map(|l| l.depth as f64).sum::<f64>() / num_leaves as f64;
    let leaf_size = leaves.iter().map(|l| l.size() as f64).sum::<f64>() / num_leaves as f64;
    let mut leaves_at = vec![0usize; levels + 1];
    for l in &leaves {
        leaves_at[l.depth] += 1;
    }
    // First depth with the maximal leaf count.
    let depth_most_leaves = (1..=levels)
        .fold((0usize, 0usize), |(bd, bc), d| {
            if leaves_at[d] > bc {
                (d, leaves_at[d])
            } else {
                (bd, bc)
            }
        })
        .0;

    let merge_nodes = node_mergeability(cnf, tree);
    let merge_levels: Vec<LevelValue> = (1..=levels)
        .map(|d| level_mean(tree, &merge_nodes, d))
        .collect();
    let at = |v: &Vec<LevelValue>, d: usize| v.get(d - 1).copied().unwrap_or(LevelValue::ABSENT);

    let inter_vars = per_level(NodeMetric::InterVertices);
    let inter_edges = per_level(NodeMetric::InterEdges);
    let degree = per_level(NodeMetric::Degree);
    let modularity = per_level(NodeMetric::Modularity);
    let mut size = per_level(NodeMetric::Size);
    // Root community size is the number of variables.
    size[0] = LevelValue::present(base.num_vars as f64);

    let mut b = Builder {
        values: Vec::with_capacity(NUM_FEATURES),
        present: Vec::with_capacity(NUM_FEATURES),
    };
    b.push(base.num_vars as f64);
    b.push(base.num_clauses as f64);
    b.push(base.cvr);
    b.push(base.dv_mean);
    b.push(base.dv_variance);
    b.push(num_communities as f64);
    b.push(num_leaves as f64);
    b.push(avg_leaf_depth);
    b.push(depth_most_leaves as f64);
    for series in [&inter_vars, &inter_edges] {
        for d in 1..=3 {
            b.level(at(series, d));
        }
    }
    for series in [&degree, &modularity, &merge_levels] {
        for d in 1..=3 {
            b.level(at(series, d));
        }
        b.level(max_present(series.iter().copied()));
    }
    b.level(at(&size, 2));
    b.level(at(&size, 3));
    b.push(leaf_size);
    b.push(num_leaves as f64 / num_communities as f64);

    let ratios = |num: &Vec<LevelValue>, den: &Vec<LevelValue>| -> Vec<LevelValue> {
        (1..=levels).map(|d| ratio(at(num, d), at(den, d))).collect()
    };
    for (num, den) in [(&inter_edges, &inter_vars), (&inter_edges, &size), (&inter_vars, &size)] {
        for d in 1..=3 {
            b.ratio(at(num, d), at(den, d));
        }
        b.level(max_present(ratios(num, den)));
    }
    for num in [&inter_edges, &inter_vars] {
        for d in 1..=3 {
            b.ratio(at(num, d), at(&degree, d));
        }
    }

    debug_assert_eq!(b.values.len(), NUM_FEATURES);
    Ok(FeatureVector {
        values: b.values.try_into().unwrap(),
        present: b.present.try_into().unwrap(),
    })
}

/// One CSV row: instance id, optional label and features.
#[derive(Clone, Debug)]
pub struct FeatureRow {
    pub instance: String,
    pub label: Option<String>,
    pub features: FeatureVector,
}

/// Writes rows as CSV: `instance,label,` followed by the 49 feature
/// columns. Absent values are written as 0.
pub fn write_csv_to<W: Write>(rows: &[FeatureRow], writer: W) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::BadParams("no rows to write".into()));
    }
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["instance", "label"];
    header.extend(FEATURE_NAMES);
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.instance.clone(), row.label.clone().unwrap_or_default()];
        record.extend(row.features.values.iter().map(|v| format_value(*v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(rows: &[FeatureRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv_to(rows, std::io::BufWriter::new(file))
}

fn format_value(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}
