//! CNF formulas: literals, clauses, DIMACS I/O, width reduction and the
//! occurrence statistics that seed the feature vector.

mod dimacs;

use std::collections::HashSet;
use std::fmt;
use std::num::NonZeroI32;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dimacs::{parse_dimacs, render_dimacs, ParseOptions};

/// A signed, nonzero variable reference. Variables are numbered from 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Literal(NonZeroI32);

impl Literal {
    pub fn new(value: i32) -> Option<Self> {
        NonZeroI32::new(value).map(Literal)
    }

    pub fn positive(var: u32) -> Self {
        Literal::from_var(var, true)
    }

    pub fn from_var(var: u32, positive: bool) -> Self {
        assert!(var >= 1 && var <= i32::MAX as u32, "variable out of range");
        let v = var as i32;
        Literal(NonZeroI32::new(if positive { v } else { -v }).unwrap())
    }

    pub fn value(self) -> i32 {
        self.0.get()
    }

    /// 1-based variable index.
    pub fn var(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    pub fn negated(self) -> Self {
        Literal(NonZeroI32::new(-self.0.get()).unwrap())
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A disjunction of literals without repeated literals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Clause(Vec<Literal>);

impl Clause {
    /// Builds a clause, dropping repeated literals (first occurrence wins).
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut out: Vec<Literal> = Vec::new();
        for lit in literals {
            if !out.contains(&lit) {
                out.push(lit);
            }
        }
        Clause(out)
    }

    /// Convenience constructor from raw DIMACS integers. Panics on 0.
    pub fn from_ints(values: &[i32]) -> Self {
        Clause::new(values.iter().map(|&v| Literal::new(v).expect("zero literal")))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Contains some variable in both polarities.
    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|l| self.0.contains(&l.negated()))
    }

    /// Literals sorted by (variable, polarity); the canonical form used to
    /// detect duplicate clauses.
    pub fn sorted_literals(&self) -> Vec<Literal> {
        let mut lits = self.0.clone();
        lits.sort_by_key(|l| (l.var(), l.is_positive()));
        lits
    }

    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|l| l.var())
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.0
            .iter()
            .any(|l| assignment[l.var() as usize - 1] == l.is_positive())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Where a formula came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Parsed,
    Generated,
    Constructed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
    pub origin: Origin,
    /// Number of tautological clauses retained in `clauses`.
    pub tautologies: usize,
}

impl Cnf {
    /// Builds a formula, validating every literal against `num_vars`.
    pub fn new(num_vars: usize, clauses: Vec<Clause>, origin: Origin) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::ZeroWidthClause { line: i + 1 });
            }
            if let Some(l) = c.literals().iter().find(|l| l.var() as usize > num_vars) {
                return Err(Error::LiteralOutOfRange {
                    line: i + 1,
                    literal: l.value() as i64,
                    num_vars,
                });
            }
        }
        let tautologies = clauses.iter().filter(|c| c.is_tautology()).count();
        Ok(Cnf {
            num_vars,
            clauses,
            origin,
            tautologies,
        })
    }

    pub fn from_ints(num_vars: usize, clauses: &[&[i32]], origin: Origin) -> Result<Self> {
        Cnf::new(
            num_vars,
            clauses.iter().map(|c| Clause::from_ints(c)).collect(),
            origin,
        )
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn num_distinct_clauses(&self) -> usize {
        self.clauses
            .iter()
            .map(|c| c.sorted_literals())
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    /// Occurrence count of every variable (index 0 is variable 1).
    pub fn occurrences(&self) -> Vec<u64> {
        let mut occ = vec![0u64; self.num_vars];
        for c in &self.clauses {
            for v in c.vars() {
                occ[v as usize - 1] += 1;
            }
        }
        occ
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(assignment))
    }
}

/// Splits every clause wider than `max_width` into a chain linked by fresh
/// auxiliary variables:
/// `(l1 ∨ … ∨ l(K-1) ∨ a1) (¬a1 ∨ … ∨ a2) … (¬a(j) ∨ … ∨ lw)`.
pub fn reduce_width(cnf: &Cnf, max_width: usize) -> Result<Cnf> {
    if max_width < 3 {
        return Err(Error::BadParams(format!(
            "max_width must be at least 3, got {max_width}"
        )));
    }
    if cnf.max_width() <= max_width {
        return Ok(cnf.clone());
    }
    let mut next_var = cnf.num_vars as u32;
    let mut clauses = Vec::with_capacity(cnf.clauses.len());
    for clause in &cnf.clauses {
        let lits = clause.literals();
        if lits.len() <= max_width {
            clauses.push(clause.clone());
            continue;
        }
        let mut rest = lits;
        let mut link: Option<Literal> = None;
        loop {
            let room = max_width - usize::from(link.is_some());
            if rest.len() <= room {
                clauses.push(Clause::new(link.into_iter().chain(rest.iter().copied())));
                break;
            }
            next_var += 1;
            let fresh = Literal::positive(next_var);
            let (head, tail) = rest.split_at(room - 1);
            clauses.push(Clause::new(
                link.into_iter()
                    .chain(head.iter().copied())
                    .chain(std::iter::once(fresh)),
            ));
            link = Some(fresh.negated());
            rest = tail;
        }
    }
    Cnf::new(next_var as usize, clauses, cnf.origin)
}

/// Clause/variable counts and occurrence statistics of a formula.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseFeatures {
    pub num_vars: usize,
    /// Distinct clauses (duplicates in the raw list are counted once).
    pub num_clauses: usize,
    pub cvr: f64,
    pub dv_mean: f64,
    /// Population variance of per-variable occurrence counts.
    pub dv_variance: f64,
    pub total_occurrences: u64,
}

pub fn base_features(cnf: &Cnf) -> Result<BaseFeatures> {
    if cnf.num_vars == 0 {
        return Err(Error::EmptyFormula);
    }
    let n = cnf.num_vars as f64;
    let occ = cnf.occurrences();
    let total: u64 = occ.iter().sum();
    let sum_sq: u128 = occ.iter().map(|&x| (x as u128) * (x as u128)).sum();
    let num_clauses = cnf.num_distinct_clauses();
    // n·Σx² − (Σx)² is exact in integers; divide once.
    let spread = cnf.num_vars as u128 * sum_sq - (total as u128) * (total as u128);
    Ok(BaseFeatures {
        num_vars: cnf.num_vars,
        num_clauses,
        cvr: num_clauses as f64 / n,
        dv_mean: total as f64 / n,
        dv_variance: spread as f64 / (n * n),
        total_occurrences: total,
    })
}
