//! Smith normal form over the integers.
//!
//! Pivot rule: the nonzero entry of smallest absolute value in the active
//! submatrix, ties broken by row-major position. Arithmetic is exact
//! (`BigInt`), so intermediate growth cannot overflow.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{DenseMatrix, SparseMatrix};

/// `left * M * right = diag(diagonal, 0, ...)`, with both transforms
/// unimodular and their inverses kept alongside.
#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Nonzero invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: DenseMatrix,
    pub left_inverse: DenseMatrix,
    pub right: DenseMatrix,
    pub right_inverse: DenseMatrix,
}

struct Transforms {
    left: DenseMatrix,
    left_inverse: DenseMatrix,
    right: DenseMatrix,
    right_inverse: DenseMatrix,
}

impl Transforms {
    fn new(m: usize, n: usize) -> Self {
        Self {
            left: DenseMatrix::identity(m),
            left_inverse: DenseMatrix::identity(m),
            right: DenseMatrix::identity(n),
            right_inverse: DenseMatrix::identity(n),
        }
    }
}

/// Runs the reduction in place; `a` ends up diagonal.
struct Reducer<'a> {
    a: &'a mut DenseMatrix,
    tr: Option<Transforms>,
}

impl Reducer<'_> {
    /// `row[target] += factor * row[source]`
    fn row_add(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_row_multiple(target, source, factor);
        if let Some(tr) = &mut self.tr {
            tr.left.add_row_multiple(target, source, factor);
            tr.left_inverse.add_col_multiple(source, target, &-factor);
        }
    }

    /// `col[target] += factor * col[source]`
    fn col_add(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_col_multiple(target, source, factor);
        if let Some(tr) = &mut self.tr {
            tr.right.add_col_multiple(target, source, factor);
            tr.right_inverse.add_row_multiple(source, target, &-factor);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(tr) = &mut self.tr {
            tr.left.swap_rows(i, j);
            tr.left_inverse.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(tr) = &mut self.tr {
            tr.right.swap_cols(i, j);
            tr.right_inverse.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(tr) = &mut self.tr {
            tr.left.negate_row(i);
            tr.left_inverse.negate_col(i);
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.as_ref().map_or(true, |(_, _, b)| abs < *b) {
                    best = Some((i, j, abs));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn place_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < m.min(n) {
            let Some(pivot) = self.find_pivot(t) else {
                break;
            };
            self.place_pivot(t, pivot);
            loop {
                let mut leftover = false;
                for i in t + 1..m {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = &self.a[(i, t)] / &self.a[(t, t)];
                    self.row_add(i, t, &-q);
                    leftover |= !self.a[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = &self.a[(t, j)] / &self.a[(t, t)];
                    self.col_add(j, t, &-q);
                    leftover |= !self.a[(t, j)].is_zero();
                }
                if leftover {
                    // Some remainder is strictly smaller than the pivot.
                    let pivot = self.find_pivot(t).expect("nonzero remainder exists");
                    self.place_pivot(t, pivot);
                    continue;
                }
                let p = self.a[(t, t)].clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.row_add(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            diagonal.push(self.a[(t, t)].clone());
            t += 1;
        }
        diagonal
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(matrix: &DenseMatrix) -> SnfResult {
    let mut a = matrix.clone();
    let mut reducer = Reducer {
        a: &mut a,
        tr: Some(Transforms::new(matrix.rows(), matrix.cols())),
    };
    let diagonal = reducer.run();
    let tr = reducer.tr.take().expect("transforms tracked");
    SnfResult {
        rank: diagonal.len(),
        diagonal,
        left: tr.left,
        left_inverse: tr.left_inverse,
        right: tr.right,
        right_inverse: tr.right_inverse,
    }
}

/// Invariant factors of a dense matrix, without transforms.
pub fn dense_invariant_factors(matrix: &DenseMatrix) -> Vec<BigInt> {
    let mut a = matrix.clone();
    Reducer { a: &mut a, tr: None }.run()
}

/// Invariant factors of a sparse matrix.
///
/// Unit pivots are eliminated sparsely first (each contributes a factor 1
/// and leaves the Schur complement, which has the same remaining invariant
/// factors); whatever is left goes through the dense reduction. Invariant
/// factors are unique, so the result equals that of [`smith_normal_form`].
pub fn invariant_factors(matrix: &SparseMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); matrix.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); matrix.cols()];
    for c in 0..matrix.cols() {
        for (r, v) in matrix.column(c) {
            rows[*r].insert(c, v.clone());
            cols[c].insert(*r);
        }
    }
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for c in 0..cols.len() {
            let pivot_row = cols[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].abs().is_one())
                .min_by_key(|&r| (rows[r].len(), r));
            let Some(r) = pivot_row else {
                continue;
            };
            let pivot = std::mem::take(&mut rows[r]);
            let sign = pivot[&c].clone();
            let others: Vec<usize> = cols[c].iter().copied().filter(|&k| k != r).collect();
            for k in others {
                let factor = &rows[k][&c] * &sign;
                for (cc, v) in &pivot {
                    let entry = rows[k].entry(*cc).or_default();
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        rows[k].remove(cc);
                        cols[*cc].remove(&k);
                    } else {
                        cols[*cc].insert(k);
                    }
                }
            }
            for cc in pivot.keys() {
                cols[*cc].remove(&r);
            }
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> =
            live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut rest = DenseMatrix::zeros(live_rows.len(), live_cols.len());
        for (i, &r) in live_rows.iter().enumerate() {
            for (c, v) in &rows[r] {
                rest[(i, col_pos[c])] = v.clone();
            }
        }
        factors.extend(dense_invariant_factors(&rest));
    }
    factors
}

/// Rank over the rationals (number of nonzero invariant factors).
pub fn rank(matrix: &SparseMatrix) -> usize {
    invariant_factors(matrix).len()
}
