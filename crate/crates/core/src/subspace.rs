//! Subspaces of GF(q)^n in canonical RREF form, their enumeration and their members.
//!
//! Every r-dimensional subspace has exactly one RREF basis, determined by a pivot
//! set `p_0 < ... < p_{r-1}` together with the entries in the "free" slots (row i,
//! column j > p_i, j not a pivot). Enumerating pivot sets lexicographically and the
//! free slots as a base-q odometer therefore visits every subspace exactly once.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::formulas::gaussian_binomial;
use crate::gf::{Field, FieldSpec};
use crate::linalg::{same_field, GfMatrix, GfVector};

pub const DEFAULT_SUBSPACE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_MEMBER_BUDGET: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: GfMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in GF({})^{}, rows {:?})",
            self.dim(),
            self.basis.field().order(),
            self.ambient_dim(),
            self.basis.values()
        )
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by ambient dimension, then dimension, then the RREF entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim(), self.dim(), self.basis.raw()).cmp(&(other.ambient_dim(), other.dim(), other.basis.raw()))
    }
}

impl Subspace {
    /// Row space of `m`.
    pub fn row_space(m: &GfMatrix) -> Self {
        let r = m.rref();
        let basis = r.matrix.select_rows(&(0..r.rank).collect::<Vec<_>>()).unwrap();
        Subspace {
            basis,
            pivots: r.pivots,
        }
    }

    pub fn span(field: Field, n: usize, generators: &[GfVector]) -> Result<Self> {
        let m = GfMatrix::from_columns(field, n, generators)?.transpose();
        Ok(Subspace::row_space(&m))
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Subspace {
            basis: GfMatrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Self {
        Subspace {
            basis: GfMatrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub(crate) fn from_rref_raw(field: Field, n: usize, pivots: Vec<usize>, basis: Vec<u8>) -> Self {
        Subspace {
            basis: GfMatrix::from_raw(field, pivots.len(), n, basis),
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.n_rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.n_cols()
    }

    /// RREF basis, one row per dimension.
    pub fn basis(&self) -> &GfMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &GfVector) -> Result<bool> {
        same_field(self.field(), v.field())?;
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.len(),
            });
        }
        let f = self.field();
        let mut x: Vec<u8> = v.entries().iter().map(|e| e.raw()).collect();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = x[p];
            if c != 0 {
                let neg = f.neg_u8(c);
                for (xj, &bj) in x.iter_mut().zip(self.basis.row_raw(i)) {
                    *xj = f.add_u8(*xj, f.mul_u8(neg, bj));
                }
            }
        }
        Ok(x.iter().all(|&c| c == 0))
    }

    /// `{x : x . w = 0 for all w in self}` under the standard dot product.
    pub fn orthogonal_complement(&self) -> Subspace {
        let f = self.field();
        let n = self.ambient_dim();
        let free: Vec<usize> = (0..n).filter(|j| !self.pivots.contains(j)).collect();
        let mut data = vec![0u8; free.len() * n];
        for (k, &fc) in free.iter().enumerate() {
            data[k * n + fc] = 1;
            for (i, &p) in self.pivots.iter().enumerate() {
                data[k * n + p] = f.neg_u8(self.basis.row_raw(i)[fc]);
            }
        }
        let m = GfMatrix::from_raw(f.clone(), free.len(), n, data);
        Subspace::row_space(&m)
    }

    /// All `q^dim` members, ordered lexicographically by their coefficient vectors.
    pub fn members(&self, budget: u64) -> Result<Members> {
        let q = self.field().order() as u64;
        let count = q.checked_pow(self.dim() as u32);
        match count {
            Some(c) if c <= budget => Ok(Members {
                cursor: MemberCursor::new(self.field(), self.basis.raw(), self.dim(), self.ambient_dim()),
                field: self.field().clone(),
                started: false,
            }),
            _ => Err(Error::budget(
                "subspace members",
                BigInt::from(q).pow(self.dim() as u32),
                budget,
            )),
        }
    }
}

/// Iterator over the members of a subspace.
pub struct Members {
    cursor: MemberCursor,
    field: Field,
    started: bool,
}

impl Iterator for Members {
    type Item = GfVector;

    fn next(&mut self) -> Option<GfVector> {
        if self.started {
            if !self.cursor.advance() {
                return None;
            }
        } else {
            self.started = true;
        }
        Some(GfVector::from_raw(self.field.clone(), self.cursor.member()))
    }
}

/// Walks `sum c_i b_i` over all coefficient vectors `c`, last coefficient fastest,
/// updating the member incrementally.
pub(crate) struct MemberCursor {
    n: usize,
    q: u8,
    coeffs: Vec<u8>,
    member: Vec<u8>,
    /// `steps[t][a]` = (a+1)·b_t − a·b_t for a < q−1, and `steps[t][q-1]` = −(q−1)·b_t.
    steps: Vec<Vec<Vec<u8>>>,
    field: Field,
}

impl MemberCursor {
    pub(crate) fn new(field: &Field, basis: &[u8], dim: usize, n: usize) -> Self {
        let f: &FieldSpec = field;
        let q = f.order();
        let multiples =
            |t: usize, a: u8| -> Vec<u8> { basis[t * n..(t + 1) * n].iter().map(|&b| f.mul_u8(a, b)).collect() };
        let steps = (0..dim)
            .map(|t| {
                (0..q)
                    .map(|a| a as u8)
                    .map(|a| {
                        let cur = multiples(t, a);
                        let next = if (a as usize) + 1 < q {
                            multiples(t, a + 1)
                        } else {
                            vec![0; n]
                        };
                        next.iter().zip(&cur).map(|(&x, &y)| f.add_u8(x, f.neg_u8(y))).collect()
                    })
                    .collect()
            })
            .collect();
        MemberCursor {
            n,
            q: (q - 1) as u8,
            coeffs: vec![0; dim],
            member: vec![0; n],
            steps,
            field: field.clone(),
        }
    }

    pub(crate) fn member(&self) -> &[u8] {
        &self.member
    }

    #[allow(dead_code)]
    pub(crate) fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Moves to the next coefficient vector; `false` once all have been visited
    /// (the cursor is then back at the zero vector).
    pub(crate) fn advance(&mut self) -> bool {
        let qm1 = self.q;
        let f = &self.field;
        for t in (0..self.coeffs.len()).rev() {
            let a = self.coeffs[t];
            let step = &self.steps[t][a as usize];
            for (x, &d) in self.member.iter_mut().zip(step) {
                *x = f.add_u8(*x, d);
            }
            if a < qm1 {
                self.coeffs[t] = a + 1;
                return true;
            }
            self.coeffs[t] = 0;
        }
        debug_assert!(self.member.iter().all(|&x| x == 0) || self.n == 0);
        false
    }
}

/// All r-subsets of `0..n` in lexicographic order.
pub fn pivot_sets(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(r)
}

/// Free-slot layout of one RREF pivot profile.
#[derive(Clone, Debug)]
pub(crate) struct PivotProfile {
    pub n: usize,
    pub pivots: Vec<usize>,
    /// (row, column) of every free entry, row-major.
    pub free: Vec<(usize, usize)>,
}

impl PivotProfile {
    pub(crate) fn new(n: usize, pivots: Vec<usize>) -> Self {
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                (p + 1..n).filter(move |j| !pivots.contains(j)).map(move |j| (i, j))
            })
            .collect();
        PivotProfile { n, pivots, free }
    }

    pub(crate) fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Basis with every free entry zero.
    pub(crate) fn base_basis(&self) -> Vec<u8> {
        let mut b = vec![0u8; self.dim() * self.n];
        for (i, &p) in self.pivots.iter().enumerate() {
            b[i * self.n + p] = 1;
        }
        b
    }

    pub(crate) fn write_free(&self, basis: &mut [u8], values: &[u8]) {
        for (&(i, j), &v) in self.free.iter().zip(values) {
            basis[i * self.n + j] = v;
        }
    }
}

/// Increments a base-q counter, last digit fastest. Returns `false` on wrap-around.
pub(crate) fn odometer_next(digits: &mut [u8], q: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < q {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Streams every r-dimensional subspace of GF(q)^n exactly once.
pub struct SubspaceIter {
    field: Field,
    n: usize,
    sets: Box<dyn Iterator<Item = Vec<usize>> + Send>,
    current: Option<(PivotProfile, Vec<u8>)>,
    pending: bool,
}

pub fn enumerate_subspaces(field: Field, n: usize, r: usize, budget: u64) -> Result<SubspaceIter> {
    if r > n {
        return Err(Error::BadArguments(format!(
            "subspace dimension {r} exceeds ambient dimension {n}"
        )));
    }
    let count: BigInt = gaussian_binomial(field.order() as u64, n as u64, r as u64);
    if count.to_u64().is_none_or(|c| c > budget) {
        return Err(Error::budget("subspaces", count, budget));
    }
    Ok(SubspaceIter {
        field,
        n,
        sets: Box::new(pivot_sets(n, r)),
        current: None,
        pending: false,
    })
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let q = self.field.order();
        loop {
            if let Some((profile, values)) = &mut self.current {
                if self.pending || odometer_next(values, q) {
                    self.pending = false;
                    let mut basis = profile.base_basis();
                    profile.write_free(&mut basis, values);
                    return Some(Subspace::from_rref_raw(
                        self.field.clone(),
                        profile.n,
                        profile.pivots.clone(),
                        basis,
                    ));
                }
            }
            let pivots = self.sets.next()?;
            let profile = PivotProfile::new(self.n, pivots);
            let values = vec![0u8; profile.free.len()];
            self.current = Some((profile, values));
            self.pending = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field;
    use std::collections::BTreeSet;

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        for (q, n, r, expected) in [
            (2, 4, 2, 35u64),
            (3, 3, 1, 13),
            (2, 5, 0, 1),
            (4, 3, 3, 1),
            (2, 3, 2, 7),
        ] {
            let subs: Vec<Subspace> = enumerate_subspaces(field(q).unwrap(), n, r, 1 << 20).unwrap().collect();
            assert_eq!(subs.len() as u64, expected, "q={q} n={n} r={r}");
            let distinct: BTreeSet<_> = subs.iter().cloned().collect();
            assert_eq!(distinct.len(), subs.len());
        }
    }

    #[test]
    fn enumerated_bases_are_canonical() {
        for s in enumerate_subspaces(field(3).unwrap(), 4, 2, 1 << 20).unwrap() {
            assert_eq!(Subspace::row_space(s.basis()), s);
            assert_eq!(s.basis().rank(), 2);
        }
    }

    #[test]
    fn enumeration_errors() {
        let f = field(2).unwrap();
        assert!(matches!(
            enumerate_subspaces(f.clone(), 2, 3, 100),
            Err(Error::BadArguments(_))
        ));
        assert!(matches!(
            enumerate_subspaces(f, 10, 5, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn members_in_coefficient_order() {
        let f = field(3).unwrap();
        let s = Subspace::row_space(&GfMatrix::from_values(f.clone(), 2, 3, &[1, 0, 1, 0, 1, 2]).unwrap());
        let members: Vec<Vec<usize>> = s.members(100).unwrap().map(|v| v.values()).collect();
        assert_eq!(members.len(), 9);
        assert_eq!(members[0], vec![0, 0, 0]);
        assert_eq!(members[1], vec![0, 1, 2]);
        assert_eq!(members[2], vec![0, 2, 1]);
        assert_eq!(members[3], vec![1, 0, 1]);
        assert_eq!(members[8], vec![2, 2, 0]);
        assert!(members.iter().all(|m| {
            let v = GfVector::from_values(f.clone(), &m.iter().map(|&x| x as u64).collect::<Vec<_>>()).unwrap();
            s.contains(&v).unwrap()
        }));
        assert!(s.members(8).is_err());
    }

    #[test]
    fn zero_and_full() {
        let f = field(4).unwrap();
        assert_eq!(Subspace::zero(f.clone(), 3).members(10).unwrap().count(), 1);
        assert_eq!(Subspace::full(f.clone(), 2).members(100).unwrap().count(), 16);
        assert_eq!(
            Subspace::full(f.clone(), 3).orthogonal_complement(),
            Subspace::zero(f, 3)
        );
    }

    #[test]
    fn orthogonal_complement_is_orthogonal() {
        let f = field(3).unwrap();
        let s = Subspace::row_space(&GfMatrix::from_values(f.clone(), 1, 3, &[1, 1, 1]).unwrap());
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 2);
        for v in c.members(100).unwrap() {
            assert!(v.dot(&s.basis().row(0)).unwrap().is_zero());
        }
        assert_eq!(c.orthogonal_complement(), s);
    }
}
