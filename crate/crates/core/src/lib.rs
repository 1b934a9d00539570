//! Hierarchical community structure (HCS) of CNF formulas.
//!
//! The crate turns a DIMACS formula into its variable incidence graph,
//! decomposes that graph by recursively maximizing modularity, and reports
//! the structural features used to tell industrial instances apart from
//! random and crafted ones. It also carries exhaustive oracles (optimal
//! partitions, best two-partitions, exact edge expansion) for small graphs
//! and generators for instances with planted hierarchical structure.

pub mod cnf;
pub mod community;
pub mod error;
pub mod expansion;
pub mod features;
pub mod genlab;
pub mod hcs;
pub mod mergeability;
pub mod scaling;
pub mod seed;
pub mod vig;

pub use cnf::{parse_dimacs, Clause, Cnf, Literal, Origin, ParseOptions};
pub use community::{louvain, modularity, Partition, PartitionMetrics};
pub use error::{Error, Result};
pub use features::{extract, FeatureVector};
pub use hcs::{decompose, DecomposeConfig, HcsNode, HcsTree};
pub use vig::Vig;

/// Version stamped into every serialized output.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Version of the JSON/CSV output schemas.
pub const SCHEMA_VERSION: u32 = 1;
