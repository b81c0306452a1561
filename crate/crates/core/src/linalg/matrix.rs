use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Column-major sparse integer matrix. Each column holds `(row, value)`
/// entries sorted by row with no explicit zeros, so structural equality is
/// numeric equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, BigInt::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            *acc[c].entry(r).or_default() += v;
        }
        Self::from_column_maps(rows, acc)
    }

    fn from_column_maps(rows: usize, maps: Vec<BTreeMap<usize, BigInt>>) -> Self {
        let cols = maps.len();
        let columns = maps
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self {
            rows,
            cols,
            columns,
        }
    }

    /// Builds from explicit column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        Self {
            rows,
            cols: columns.len(),
            columns: columns
                .iter()
                .map(|col| {
                    debug_assert_eq!(col.len(), rows);
                    col.iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(r, v)| (r, v.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_default()
    }

    /// Dense copy of column `c`.
    pub fn column_dense(&self, c: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (r, v) in &self.columns[c] {
            out[*r] = v.clone();
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let maps = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, w) in col {
                    for (r, v) in &self.columns[*k] {
                        *acc.entry(*r).or_default() += v * w;
                    }
                }
                acc
            })
            .collect();
        Self::from_column_maps(self.rows, maps)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let maps = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, BigInt> = a.iter().cloned().collect();
                for (r, v) in b {
                    *acc.entry(*r).or_default() += v;
                }
                acc
            })
            .collect();
        Self::from_column_maps(self.rows, maps)
    }

    pub fn neg(&self) -> SparseMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(r, v)| (*r, -v)).collect())
                .collect(),
        }
    }

    /// `self * x` for a dense vector `x`.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[c] {
                out[*r] += v * xc;
            }
        }
        out
    }

    /// Nonzero entries in row-major order.
    pub fn triples_row_major(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out: Vec<(usize, usize, BigInt)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v.clone())))
            .collect();
        out.sort_by_key(|&(r, c, _)| (r, c));
        out
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                d[(*r, c)] = v.clone();
            }
        }
        d
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.columns
            .iter()
            .flatten()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_default()
    }
}

/// Row-major dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from nested rows of machine integers; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[source * self.cols + j];
            if !v.is_zero() {
                let add = v * factor;
                self.data[target * self.cols + j] += add;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + source];
            if !v.is_zero() {
                let add = v * factor;
                self.data[i * self.cols + target] += add;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = -std::mem::take(v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}
