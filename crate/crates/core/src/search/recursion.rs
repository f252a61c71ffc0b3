use super::{run_oracle, OracleConfig, OracleQuery};
use crate::error::{Error, Result};
use crate::vectors::{LabelSystem, WeightProfile};

/// One instance of `aex*(r, kappa) <= aex*(r-1, kappa) + sum_i |L_i| aex*(r-1, kappa - e_i)`,
/// where `aex*(r, .)` is the affine oracle at rank `r + 1` if some list has two or
/// more labels and at rank `r` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionRow {
    pub r: usize,
    pub lhs: u64,
    pub same_profile: u64,
    /// `(i, |L_i|, aex*(r-1, kappa - e_i))` for every list with `k_i > 0`.
    pub lowered: Vec<(usize, usize, u64)>,
    pub rhs: u64,
    pub holds: bool,
    /// `r >= |kappa| + 2`, where the inequality is guaranteed.
    pub in_range: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub kappa: WeightProfile,
    pub rows: Vec<RecursionRow>,
}

impl RecursionReport {
    /// No failure at any `r` inside the guaranteed range.
    pub fn holds_where_guaranteed(&self) -> bool {
        self.rows.iter().all(|row| row.holds || !row.in_range)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.rows.iter().filter(|row| !row.holds).map(|row| row.r).collect()
    }
}

pub fn verify_recursion(
    labels: &LabelSystem,
    kappa: &WeightProfile,
    r_range: impl IntoIterator<Item = usize>,
    config: &OracleConfig,
) -> Result<RecursionReport> {
    if kappa.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: labels.len(),
            got: kappa.len(),
        });
    }
    let shift = labels.lists().iter().any(|l| l.len() > 1) as usize;
    let aex_star = |r: usize, kappa: &WeightProfile| -> Result<u64> {
        let query = OracleQuery::affine(labels.clone(), r + shift, kappa.clone(), None)?;
        Ok(run_oracle(&query, config)?.max_count)
    };
    let mut rows = Vec::new();
    for r in r_range {
        if r == 0 {
            return Err(Error::BadArguments("the recursion needs r >= 1".into()));
        }
        let lhs = aex_star(r, kappa)?;
        let same_profile = aex_star(r - 1, kappa)?;
        let mut lowered = Vec::new();
        for i in 0..kappa.len() {
            if let Some(lower) = kappa.minus_unit(i) {
                lowered.push((i, labels.lists()[i].len(), aex_star(r - 1, &lower)?));
            }
        }
        let rhs = same_profile + lowered.iter().map(|&(_, size, v)| size as u64 * v).sum::<u64>();
        rows.push(RecursionRow {
            r,
            lhs,
            same_profile,
            lowered,
            rhs,
            holds: lhs <= rhs,
            in_range: r >= kappa.norm() + 2,
        });
    }
    Ok(RecursionReport {
        kappa: kappa.clone(),
        rows,
    })
}
