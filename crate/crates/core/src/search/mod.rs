//! Exhaustive oracles: the largest number of admissible columns in any rank-r
//! (or a-rank-r) configuration, found by scanning every r-dimensional subspace.
//!
//! A set of distinct columns of length n has rank at most r exactly when it sits
//! inside some r-dimensional subspace of GF(q)^n, so the maximum over subspaces of
//! the number of admissible members is the extremal value at that n. Affine
//! queries lift each column to `(1 | v)` and scan GF(q)^(1+n) instead.

mod recursion;
mod scan;
mod uniqueness;

pub use recursion::{verify_recursion, RecursionReport, RecursionRow};
pub use uniqueness::{check_uniqueness, UniquenessReport};

use crate::error::{Error, Result};
use crate::gf::{field, Field};
use crate::linalg::{same_field, GfMatrix};
use crate::subspace::{Subspace, DEFAULT_MEMBER_BUDGET, DEFAULT_SUBSPACE_BUDGET};
use crate::vectors::{LabelSystem, ProfileDownSet, WeightProfile};

/// What a counted column must look like.
#[derive(Clone, Debug)]
pub enum Mode {
    Weight { k: usize },
    Coweight { k: usize },
    Labeled { labels: LabelSystem, kappa: WeightProfile },
    DownSet { labels: LabelSystem, set: ProfileDownSet },
    Affine { labels: LabelSystem, kappa: WeightProfile },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Weight { .. } => "weight",
            Mode::Coweight { .. } => "coweight",
            Mode::Labeled { .. } => "labeled",
            Mode::DownSet { .. } => "downset",
            Mode::Affine { .. } => "affine",
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, Mode::Affine { .. })
    }

    fn labels(&self) -> Option<&LabelSystem> {
        match self {
            Mode::Weight { .. } | Mode::Coweight { .. } => None,
            Mode::Labeled { labels, .. } | Mode::DownSet { labels, .. } | Mode::Affine { labels, .. } => Some(labels),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleQuery {
    pub field: Field,
    pub r: usize,
    pub mode: Mode,
    /// Column lengths to scan.
    pub n_list: Vec<usize>,
}

/// `{r, r+1, r+2}`, or `{r-1, ..., r+2}` (clipped at 0) for affine queries.
pub fn default_n_list(r: usize, affine: bool) -> Vec<usize> {
    let lo = if affine { r.saturating_sub(1) } else { r };
    (lo..=r + 2).collect()
}

impl OracleQuery {
    pub fn new(field: Field, r: usize, mode: Mode, n_list: Option<Vec<usize>>) -> Result<Self> {
        if let Some(labels) = mode.labels() {
            same_field(&field, labels.field())?;
        }
        match &mode {
            Mode::Labeled { labels, kappa } | Mode::Affine { labels, kappa } => {
                if kappa.len() != labels.len() {
                    return Err(Error::LengthMismatch {
                        expected: labels.len(),
                        got: kappa.len(),
                    });
                }
            }
            Mode::DownSet { labels, set } => {
                if let Some(w) = set.width() {
                    if w != labels.len() {
                        return Err(Error::LengthMismatch {
                            expected: labels.len(),
                            got: w,
                        });
                    }
                }
            }
            _ => {}
        }
        let affine = mode.is_affine();
        let mut n_list = n_list.unwrap_or_else(|| default_n_list(r, affine));
        n_list.sort_unstable();
        n_list.dedup();
        if n_list.is_empty() {
            return Err(Error::BadArguments("empty n_list".into()));
        }
        for &n in &n_list {
            let ambient = if affine { n + 1 } else { n };
            if r > ambient {
                return Err(Error::BadArguments(format!(
                    "rank bound {r} exceeds scanned dimension {ambient} (n = {n})"
                )));
            }
        }
        Ok(OracleQuery { field, r, mode, n_list })
    }

    pub fn weight(q: u64, r: usize, k: usize, n_list: Option<Vec<usize>>) -> Result<Self> {
        Self::new(field(q)?, r, Mode::Weight { k }, n_list)
    }

    pub fn coweight(q: u64, r: usize, k: usize, n_list: Option<Vec<usize>>) -> Result<Self> {
        Self::new(field(q)?, r, Mode::Coweight { k }, n_list)
    }

    pub fn labeled(labels: LabelSystem, r: usize, kappa: WeightProfile, n_list: Option<Vec<usize>>) -> Result<Self> {
        Self::new(labels.field().clone(), r, Mode::Labeled { labels, kappa }, n_list)
    }

    pub fn downset(labels: LabelSystem, r: usize, set: ProfileDownSet, n_list: Option<Vec<usize>>) -> Result<Self> {
        Self::new(labels.field().clone(), r, Mode::DownSet { labels, set }, n_list)
    }

    pub fn affine(labels: LabelSystem, r: usize, kappa: WeightProfile, n_list: Option<Vec<usize>>) -> Result<Self> {
        Self::new(labels.field().clone(), r, Mode::Affine { labels, kappa }, n_list)
    }

    /// Dimension of the scanned ambient space for column length `n`.
    pub fn ambient(&self, n: usize) -> usize {
        if self.mode.is_affine() {
            n + 1
        } else {
            n
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub subspace_budget: u64,
    pub member_budget: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Witnesses kept per result (the total is still counted).
    pub witness_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            subspace_budget: DEFAULT_SUBSPACE_BUDGET,
            member_budget: DEFAULT_MEMBER_BUDGET,
            threads: None,
            witness_limit: 64,
        }
    }
}

/// One maximizing subspace together with the columns it contributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: usize,
    pub subspace: Subspace,
    /// Counted columns (affine queries: with the leading 1 removed), in member order.
    pub columns: GfMatrix,
    /// Coordinates where some counted column is nonzero.
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerN {
    pub n: usize,
    pub max_count: u64,
    pub witness_count: u64,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub query: OracleQuery,
    pub max_count: u64,
    /// Smallest scanned length attaining `max_count`.
    pub best_n: usize,
    pub per_n: Vec<PerN>,
    /// Sorted by (n, RREF entries); at most `witness_limit` of them.
    pub witnesses: Vec<Witness>,
    /// Number of maximizing subspaces over all lengths attaining the maximum.
    pub witness_count: u64,
    pub truncated: bool,
    pub exhaustive: bool,
}

impl OracleResult {
    pub fn witness_supports(&self) -> Vec<Vec<usize>> {
        self.witnesses.iter().map(|w| w.support.clone()).collect()
    }
}

/// Runs any query.
pub fn run_oracle(query: &OracleQuery, config: &OracleConfig) -> Result<OracleResult> {
    match config.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::BadArguments(e.to_string()))?;
            pool.install(|| scan::run(query, config))
        }
        None => scan::run(query, config),
    }
}

fn expect_mode(query: &OracleQuery, name: &str) -> Result<()> {
    if query.mode.name() == name {
        Ok(())
    } else {
        Err(Error::BadArguments(format!(
            "expected a {name} query, got {}",
            query.mode.name()
        )))
    }
}

pub fn oracle_ex(query: &OracleQuery, config: &OracleConfig) -> Result<OracleResult> {
    expect_mode(query, "weight")?;
    run_oracle(query, config)
}

pub fn oracle_coex(query: &OracleQuery, config: &OracleConfig) -> Result<OracleResult> {
    expect_mode(query, "coweight")?;
    run_oracle(query, config)
}

pub fn oracle_labeled(query: &OracleQuery, config: &OracleConfig) -> Result<OracleResult> {
    expect_mode(query, "labeled")?;
    run_oracle(query, config)
}

pub fn oracle_downset(query: &OracleQuery, config: &OracleConfig) -> Result<OracleResult> {
    expect_mode(query, "downset")?;
    run_oracle(query, config)
}

pub fn oracle_aex(query: &OracleQuery, config: &OracleConfig) -> Result<OracleResult> {
    expect_mode(query, "affine")?;
    run_oracle(query, config)
}
