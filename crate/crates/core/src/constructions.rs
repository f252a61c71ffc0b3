//! Builders for the extremal column families, each with self-certifying claims.
//!
//! The claimed rank and a-rank of an "all (L, kappa)-vectors on m coordinates"
//! family follow from the span of pairwise differences `D`:
//! moving a label onto a zero coordinate gives `l (e_a - e_b)`, so `D` contains
//! the sum-zero hyperplane; relabeling one coordinate inside a list with two or
//! more labels gives a multiple of `e_a`, so then `D` is everything. The a-rank is
//! `dim D + 1`, and the rank is `dim D` exactly when a member (hence every member)
//! already lies in `D`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{
    aex_formula, coex_formula, ex_formula, ex_labeled_formula, hamming_params, label_power, multinomial,
};
use crate::gf::{field, Field, FieldElement};
use crate::linalg::{GfMatrix, GfVector};
use crate::num::ExactInt;
use crate::subspace::odometer_next;
use crate::vectors::{enumerate_profile_vectors, profile_of, LabelMatch, LabelSystem, WeightProfile};
use crate::Count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionId {
    Weight,
    Coweight,
    Labeled,
    Affine,
    DualHamming,
}

/// What a builder asserts about its matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub construction_id: ConstructionId,
    pub q: u64,
    pub rows: usize,
    pub columns: u64,
    pub rank: usize,
    pub arank: usize,
    /// Number of nonzero rows.
    pub support: usize,
    /// Common column weight, when the family has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<WeightProfile>,
}

/// What elimination and a column scan actually find.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub distinct_columns: bool,
    pub columns: u64,
    pub rank: usize,
    pub arank: usize,
    pub support: usize,
    /// Every column has the claimed weight / profile (vacuously true if none is claimed).
    pub columns_conform: bool,
    pub matches_claims: bool,
}

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub matrix: GfMatrix,
    pub claims: Claims,
}

impl ConstructionReport {
    pub fn verify(&self) -> Result<Verification> {
        verify_claims(&self.matrix, &self.claims)
    }

    pub fn is_certified(&self) -> bool {
        self.verify().is_ok_and(|v| v.matches_claims)
    }
}

/// Re-derives every claimed quantity from the matrix alone.
pub fn verify_claims(matrix: &GfMatrix, claims: &Claims) -> Result<Verification> {
    if matrix.field().order() as u64 != claims.q {
        return Err(Error::FieldMismatch {
            left: matrix.field().order(),
            right: claims.q as usize,
        });
    }
    let cols = matrix.columns();
    let weights_ok = claims.weight.is_none_or(|w| cols.iter().all(|c| c.weight() == w));
    let profile_ok = match (&claims.labels, &claims.kappa) {
        (Some(lists), Some(kappa)) => {
            let labels = LabelSystem::from_values(matrix.field().clone(), lists)?;
            let mut ok = true;
            for c in &cols {
                ok &= profile_of(c, &labels)? == LabelMatch::Profile(kappa.clone());
            }
            ok
        }
        _ => true,
    };
    let v = Verification {
        distinct_columns: matrix.has_distinct_columns(),
        columns: matrix.n_cols() as u64,
        rank: matrix.rank(),
        arank: matrix.a_rank(),
        support: matrix.nonzero_rows().len(),
        columns_conform: weights_ok && profile_ok,
        matches_claims: false,
    };
    let matches_claims = v.distinct_columns
        && v.columns_conform
        && matrix.n_rows() == claims.rows
        && v.columns == claims.columns
        && v.rank == claims.rank
        && v.arank == claims.arank
        && v.support == claims.support;
    Ok(Verification { matches_claims, ..v })
}

/// (rank, a-rank) of the matrix whose columns are all (L, kappa)-vectors of length m.
pub fn all_vectors_ranks(labels: &LabelSystem, kappa: &WeightProfile, m: usize) -> (usize, usize) {
    if kappa.is_zero() {
        return (0, 1);
    }
    let active: Vec<usize> = (0..kappa.len()).filter(|&i| kappa.counts()[i] > 0).collect();
    let relabelable = active.iter().any(|&i| labels.lists()[i].len() > 1);
    if !relabelable && kappa.norm() == m && active.len() == 1 {
        // one label filling every coordinate: a single column
        return (1, 1);
    }
    if relabelable {
        return (m, m + 1);
    }
    let f = labels.field();
    let sum = active.iter().fold(FieldElement::ZERO, |acc, &i| {
        f.add(acc, f.times(labels.lists()[i][0], kappa.counts()[i] as u64))
    });
    let diff_dim = m - 1;
    let rank = if sum.is_zero() { diff_dim } else { diff_dim + 1 };
    (rank, diff_dim + 1)
}

fn to_u64(c: &Count) -> Result<u64> {
    c.to_u64()
        .ok_or_else(|| Error::budget("construction columns", c, u64::MAX))
}

use num_traits::ToPrimitive;

fn all_vectors_family(
    id: ConstructionId,
    labels: &LabelSystem,
    kappa: &WeightProfile,
    m: usize,
    claimed_columns: Count,
    weight: Option<usize>,
) -> Result<ConstructionReport> {
    let listed: Count = label_power::<Count>(labels, kappa) * multinomial::<Count>(m as u64, kappa)?;
    debug_assert_eq!(listed, claimed_columns);
    let columns: Vec<GfVector> = enumerate_profile_vectors(m, labels, kappa)?.collect();
    let matrix = GfMatrix::from_columns(labels.field().clone(), m, &columns)?;
    let (rank, arank) = all_vectors_ranks(labels, kappa, m);
    let claims = Claims {
        construction_id: id,
        q: labels.field().order() as u64,
        rows: m,
        columns: to_u64(&claimed_columns)?,
        rank,
        arank,
        support: if kappa.is_zero() { 0 } else { m },
        weight,
        labels: Some(
            labels
                .lists()
                .iter()
                .map(|l| l.iter().map(|e| e.value() as u64).collect())
                .collect(),
        ),
        kappa: Some(kappa.clone()),
    };
    Ok(ConstructionReport { matrix, claims })
}

/// All weight-k columns on r coordinates, or on r + 1 coordinates when q = 2 and k is
/// even (they then lie in the sum-zero hyperplane, so the rank is still at most r).
pub fn build_weight_family(q: u64, r: usize, k: usize) -> Result<ConstructionReport> {
    let f = field(q)?;
    let m = if q == 2 && k.is_multiple_of(2) { r + 1 } else { r };
    if k > m {
        return Err(Error::BadArguments(format!("weight {k} does not fit on {m} rows")));
    }
    let value = ex_formula::<Count>(q, r as u64, k as u64)?.value;
    all_vectors_family(
        ConstructionId::Weight,
        &LabelSystem::full(f),
        &WeightProfile::single(k),
        m,
        value,
        Some(k),
    )
}

/// All columns of length r with exactly k zeros.
pub fn build_coweight_family(q: u64, r: usize, k: usize) -> Result<ConstructionReport> {
    let f = field(q)?;
    let value = coex_formula::<Count>(q, r as u64, k as u64)?.value;
    all_vectors_family(
        ConstructionId::Coweight,
        &LabelSystem::full(f),
        &WeightProfile::single(r - k),
        r,
        value,
        Some(r - k),
    )
}

/// All (L, kappa)-vectors on r + 1 coordinates in the singleton zero-sum case, else on r.
pub fn build_labeled_family(labels: &LabelSystem, r: usize, kappa: &WeightProfile) -> Result<ConstructionReport> {
    let value = ex_labeled_formula::<Count>(labels, r as u64, kappa)?.value;
    let m = if labels.is_zero_sum(kappa) { r + 1 } else { r };
    all_vectors_family(ConstructionId::Labeled, labels, kappa, m, value, None)
}

/// All (L, kappa)-vectors on r coordinates for singleton lists, else on r - 1; the
/// a-rank is at most r either way.
pub fn build_affine_family(labels: &LabelSystem, r: usize, kappa: &WeightProfile) -> Result<ConstructionReport> {
    let m = if labels.is_singletons() {
        r
    } else {
        r.checked_sub(1)
            .ok_or_else(|| Error::BadArguments("affine family with a multi-label list needs r >= 1".into()))?
    };
    let value = aex_formula::<Count>(labels, r as u64, kappa)?.value;
    if kappa.norm() > m {
        return Err(Error::ProfileTooHeavy {
            norm: kappa.norm() as u64,
            len: m as u64,
        });
    }
    all_vectors_family(ConstructionId::Affine, labels, kappa, m, value, None)
}

/// Rows indexed by all of GF(q)^r, columns by the nonzero coefficient vectors
/// `lambda`, entry `v . lambda`: every nonzero codeword of the dual Hamming code.
pub fn build_dual_hamming(q: u64, r: usize, budget: u64) -> Result<ConstructionReport> {
    let f: Field = field(q)?;
    let (cols, weight) = hamming_params::<Count>(q, r as u64)?;
    let rows = <Count as ExactInt>::pow_u64(q, r as u64);
    let n_rows = rows
        .to_u64()
        .filter(|&v| v <= budget)
        .ok_or_else(|| Error::budget("dual Hamming rows", &rows, budget))? as usize;
    let n_cols = n_rows - 1;
    let points = all_vectors(q as usize, r);
    let mut data = vec![0u8; n_rows * n_cols];
    for (i, v) in points.iter().enumerate() {
        for (j, lambda) in points[1..].iter().enumerate() {
            let dot = v
                .iter()
                .zip(lambda)
                .fold(0u8, |acc, (&a, &b)| f.add_u8(acc, f.mul_u8(a, b)));
            data[i * n_cols + j] = dot;
        }
    }
    let matrix = GfMatrix::from_raw(f, n_rows, n_cols, data);
    let claims = Claims {
        construction_id: ConstructionId::DualHamming,
        q,
        rows: n_rows,
        columns: to_u64(&cols)?,
        rank: r,
        // the all-ones row is a combination of the rows only for the single column (1)
        arank: if q == 2 && r == 1 { 1 } else { r + 1 },
        support: n_rows - 1,
        weight: Some(to_u64(&weight)? as usize),
        labels: None,
        kappa: None,
    };
    Ok(ConstructionReport { matrix, claims })
}

/// GF(q)^r in lexicographic order of element indices.
fn all_vectors(q: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(q.pow(r as u32));
    let mut digits = vec![0u8; r];
    loop {
        out.push(digits.clone());
        if !odometer_next(&mut digits, q) {
            break;
        }
    }
    out
}
