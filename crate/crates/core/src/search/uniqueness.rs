use std::collections::BTreeSet;

use itertools::Itertools;

use super::OracleResult;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::linalg::GfMatrix;

/// Orbit enumeration is skipped when `rows! * (q-1)^rows` exceeds this.
const ORBIT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    pub expected_support: usize,
    /// Support size of every listed witness.
    pub supports: Vec<usize>,
    pub supports_match: bool,
    /// Nonzero rows of each witness counted up to nonzero scalar multiples.
    pub row_classes: Vec<usize>,
    pub row_classes_match: bool,
    /// Distinct witnesses up to coordinate permutation and nonzero coordinate
    /// scaling, after merging proportional rows; `None` when too many symmetries.
    pub orbit_count: Option<usize>,
    pub unique_up_to_symmetry: Option<bool>,
    /// Not every maximizing subspace was listed.
    pub truncated: bool,
}

pub fn check_uniqueness(result: &OracleResult, expected_support: usize) -> Result<UniquenessReport> {
    if !result.exhaustive || result.witnesses.is_empty() {
        return Err(Error::NotExhaustive);
    }
    let supports: Vec<usize> = result.witnesses.iter().map(|w| w.support.len()).collect();
    let reduced: Vec<Vec<Vec<u8>>> = result.witnesses.iter().map(|w| row_classes(&w.columns)).collect();
    let row_counts: Vec<usize> = reduced.iter().map(|rows| rows.len()).collect();
    let f = result.query.field.as_ref();
    let mut forms = BTreeSet::new();
    let mut feasible = true;
    for rows in &reduced {
        match canonical_form(f, rows) {
            Some(c) => {
                forms.insert(c);
            }
            None => {
                feasible = false;
                break;
            }
        }
    }
    let orbit_count = feasible.then_some(forms.len());
    Ok(UniquenessReport {
        expected_support,
        supports_match: supports.iter().all(|&s| s == expected_support),
        row_classes_match: row_counts.iter().all(|&s| s == expected_support),
        supports,
        row_classes: row_counts,
        unique_up_to_symmetry: orbit_count.map(|c| c == 1),
        orbit_count,
        truncated: result.truncated,
    })
}

/// Nonzero rows of `m`, one representative per class of proportional rows,
/// each scaled so its first nonzero entry is 1.
fn row_classes(m: &GfMatrix) -> Vec<Vec<u8>> {
    let f = m.field();
    let mut seen = BTreeSet::new();
    for i in 0..m.n_rows() {
        let row = m.row_raw(i);
        if let Some(&lead) = row.iter().find(|&&x| x != 0) {
            let s = f.inv_u8(lead);
            seen.insert(row.iter().map(|&x| f.mul_u8(s, x)).collect::<Vec<u8>>());
        }
    }
    seen.into_iter().collect()
}

/// Lexicographically least column set over all row orders and row scalings.
/// Rows are the coordinates, so this is exactly the coordinate symmetry group.
fn canonical_form(f: &FieldSpec, rows: &[Vec<u8>]) -> Option<Vec<Vec<u8>>> {
    let n = rows.len();
    let q = f.order() as u64;
    let group = (1..=n as u64)
        .product::<u64>()
        .checked_mul((q - 1).checked_pow(n as u32)?)?;
    if group > ORBIT_BUDGET {
        return None;
    }
    let cols = rows.first().map_or(0, |r| r.len());
    let nonzero: Vec<u8> = (1..q).map(|a| a as u8).collect();
    let mut best: Option<Vec<Vec<u8>>> = None;
    for perm in (0..n).permutations(n) {
        for scales in std::iter::repeat_n(nonzero.iter(), n).multi_cartesian_product() {
            let mut columns: Vec<Vec<u8>> = (0..cols)
                .map(|j| {
                    perm.iter()
                        .zip(&scales)
                        .map(|(&i, &&s)| f.mul_u8(s, rows[i][j]))
                        .collect()
                })
                .collect();
            columns.sort_unstable();
            if best.as_ref().is_none_or(|b| columns < *b) {
                best = Some(columns);
            }
        }
        if n == 0 {
            break;
        }
    }
    Some(best.unwrap_or_default())
}
