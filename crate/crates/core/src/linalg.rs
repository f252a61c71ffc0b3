//! Dense vectors and matrices over GF(q).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement, FieldSpec};

pub use crate::subspace::{enumerate_subspaces, pivot_sets, Subspace, SubspaceIter};

pub(crate) fn same_field(a: &Field, b: &Field) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref() {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: a.order(),
            right: b.order(),
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GfVector {
    field: Field,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.field.order())?;
        f.debug_list().entries(&self.entries).finish()
    }
}

impl GfVector {
    pub fn new(field: Field, entries: Vec<FieldElement>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| !field.contains(**e)) {
            return Err(Error::ElementOutOfRange {
                value: bad.value() as u64,
                q: field.order(),
            });
        }
        Ok(GfVector { field, entries })
    }

    /// Builds a vector from raw element indices, validating each against q.
    pub fn from_values(field: Field, values: &[u64]) -> Result<Self> {
        let entries = values.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>()?;
        Ok(GfVector { field, entries })
    }

    pub(crate) fn from_raw(field: Field, raw: &[u8]) -> Self {
        GfVector {
            field,
            entries: raw.iter().map(|&v| FieldElement::from_raw(v)).collect(),
        }
    }

    pub fn zeros(field: Field, n: usize) -> Self {
        GfVector {
            field,
            entries: vec![FieldElement::ZERO; n],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.value()).collect()
    }

    pub fn get(&self, i: usize) -> FieldElement {
        self.entries[i]
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    /// Number of zero entries.
    pub fn coweight(&self) -> usize {
        self.len() - self.weight()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.entries[i].is_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Standard bilinear dot product.
    pub fn dot(&self, other: &GfVector) -> Result<FieldElement> {
        same_field(&self.field, &other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let f = &self.field;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }

    pub fn add(&self, other: &GfVector) -> Result<GfVector> {
        same_field(&self.field, &other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let f = &self.field;
        Ok(GfVector {
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: FieldElement) -> GfVector {
        let f = &self.field;
        GfVector {
            field: self.field.clone(),
            entries: self.entries.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }
}

/// Result of Gaussian elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: GfMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix GF({}) {}x{}", self.field.order(), self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row_raw(i))?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for &e in row {
                if !field.contains(e) {
                    return Err(Error::ElementOutOfRange {
                        value: e.value() as u64,
                        q: field.order(),
                    });
                }
                data.push(e.raw());
            }
        }
        Ok(GfMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Row-major element indices, validated against q.
    pub fn from_values(field: Field, rows: usize, cols: usize, values: &[u64]) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: values.len(),
            });
        }
        let data = values
            .iter()
            .map(|&v| field.element(v).map(FieldElement::raw))
            .collect::<Result<Vec<_>>>()?;
        Ok(GfMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        GfMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors; all must have length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[GfVector]) -> Result<Self> {
        let mut m = GfMatrix::zeros(field.clone(), rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            same_field(&field, col.field())?;
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            for (i, e) in col.entries().iter().enumerate() {
                m.data[i * m.cols + j] = e.raw();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        FieldElement::from_raw(self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, value: FieldElement) {
        assert!(self.field.contains(value));
        self.data[i * self.cols + j] = value.raw();
    }

    pub(crate) fn row_raw(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.data
    }

    pub fn row(&self, i: usize) -> GfVector {
        GfVector::from_raw(self.field.clone(), self.row_raw(i))
    }

    pub fn column(&self, j: usize) -> GfVector {
        let col: Vec<u8> = (0..self.rows).map(|i| self.data[i * self.cols + j]).collect();
        GfVector::from_raw(self.field.clone(), &col)
    }

    pub fn columns(&self) -> Vec<GfVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn values(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| self.row_raw(i).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Rows with at least one nonzero entry.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        (0..self.rows)
            .filter(|&i| self.row_raw(i).iter().any(|&v| v != 0))
            .collect()
    }

    pub fn has_distinct_columns(&self) -> bool {
        let mut cols: Vec<Vec<u8>> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i * self.cols + j]).collect())
            .collect();
        cols.sort_unstable();
        cols.windows(2).all(|w| w[0] != w[1])
    }

    /// Canonical reduced row-echelon form: pivots strictly increasing, pivot entries 1,
    /// zeros above and below each pivot, zero rows last.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, self.rows, self.cols);
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rref_in_place(&self.field, &mut data, self.rows, self.cols).len()
    }

    /// Rank after appending a row of all ones. For a matrix with no columns this is 0.
    pub fn a_rank(&self) -> usize {
        if self.cols == 0 {
            return 0;
        }
        self.with_ones_row().rank()
    }

    fn with_ones_row(&self) -> GfMatrix {
        let mut data = self.data.clone();
        data.extend(std::iter::repeat_n(1u8, self.cols));
        GfMatrix::from_raw(self.field.clone(), self.rows + 1, self.cols, data)
    }

    pub fn append_row(&self, row: &[FieldElement]) -> Result<GfMatrix> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        let mut data = self.data.clone();
        for &e in row {
            if !self.field.contains(e) {
                return Err(Error::ElementOutOfRange {
                    value: e.value() as u64,
                    q: self.field.order(),
                });
            }
            data.push(e.raw());
        }
        Ok(GfMatrix::from_raw(self.field.clone(), self.rows + 1, self.cols, data))
    }

    pub fn delete_row(&self, index: usize) -> Result<GfMatrix> {
        if index >= self.rows {
            return Err(Error::IndexOutOfRange { index, len: self.rows });
        }
        let mut data = self.data.clone();
        data.drain(index * self.cols..(index + 1) * self.cols);
        Ok(GfMatrix::from_raw(self.field.clone(), self.rows - 1, self.cols, data))
    }

    pub fn delete_column(&self, index: usize) -> Result<GfMatrix> {
        if index >= self.cols {
            return Err(Error::IndexOutOfRange { index, len: self.cols });
        }
        let data = (0..self.rows)
            .flat_map(|i| {
                self.row_raw(i)
                    .iter()
                    .enumerate()
                    .filter(move |(j, _)| *j != index)
                    .map(|(_, &v)| v)
            })
            .collect();
        Ok(GfMatrix::from_raw(self.field.clone(), self.rows, self.cols - 1, data))
    }

    /// Keeps the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<GfMatrix> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.rows,
                });
            }
            data.extend_from_slice(self.row_raw(i));
        }
        Ok(GfMatrix::from_raw(self.field.clone(), rows.len(), self.cols, data))
    }
}

/// Gauss-Jordan elimination on a row-major buffer; returns pivot columns.
pub(crate) fn rref_in_place(f: &FieldSpec, data: &mut [u8], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv_u8(data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = f.mul_u8(inv, data[r * cols + j]);
        }
        for i in 0..rows {
            let factor = data[i * cols + c];
            if i == r || factor == 0 {
                continue;
            }
            let neg = f.neg_u8(factor);
            for j in c..cols {
                let v = f.mul_u8(neg, data[r * cols + j]);
                data[i * cols + j] = f.add_u8(data[i * cols + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
