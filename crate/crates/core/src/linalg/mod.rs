//! Exact integer linear algebra.

mod matrix;
mod snf;

pub use matrix::{DenseMatrix, SparseMatrix};
pub use snf::{dense_invariant_factors, invariant_factors, rank, smith_normal_form, SnfResult};

use num_bigint::BigInt;
use num_traits::Zero;

/// Solves `matrix * x = rhs` over the integers when `matrix` has full column
/// rank. Returns `None` if there is no integral solution.
pub fn solve_full_column_rank(matrix: &DenseMatrix, rhs: &[BigInt]) -> Result<Option<Vec<BigInt>>, usize> {
    let snf = smith_normal_form(matrix);
    if snf.rank < matrix.cols() {
        return Err(snf.rank);
    }
    // left * M * right = D, so D * (right^-1 x) = left * rhs.
    let transformed: Vec<BigInt> = (0..matrix.rows())
        .map(|i| {
            snf.left
                .row(i)
                .iter()
                .zip(rhs)
                .map(|(a, b)| a * b)
                .sum::<BigInt>()
        })
        .collect();
    let mut y = Vec::with_capacity(matrix.cols());
    for (i, t) in transformed.iter().enumerate() {
        if i < snf.rank {
            let d = &snf.diagonal[i];
            if !(t % d).is_zero() {
                return Ok(None);
            }
            y.push(t / d);
        } else if !t.is_zero() {
            return Ok(None);
        }
    }
    let x = (0..matrix.cols())
        .map(|i| {
            snf.right
                .row(i)
                .iter()
                .zip(&y)
                .map(|(a, b)| a * b)
                .sum::<BigInt>()
        })
        .collect();
    Ok(Some(x))
}
