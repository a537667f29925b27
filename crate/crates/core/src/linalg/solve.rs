use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LinalgError, RatMatrix};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut r = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r.cols() {
        if row == r.rows() {
            break;
        }
        let Some(p) = (row..r.rows()).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(row, p);
        let inv = r.get(row, col).recip();
        if !inv.is_one() {
            for c in col..r.cols() {
                let v = r.get(row, c).clone() * inv.clone();
                r.set(row, c, v);
            }
        }
        for i in 0..r.rows() {
            if i != row && !r.get(i, col).is_zero() {
                let f = -r.get(i, col).clone();
                r.add_row_multiple(i, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (r, pivots)
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).1.len()
}

/// Basis of the null space `{x : A·x = 0}`, one vector per free column.
pub fn kernel(a: &RatMatrix) -> Vec<Vec<BigRational>> {
    let (r, pivots) = rref(a);
    let n = a.cols();
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec_zero(n);
            v[free] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free).clone();
            }
            v
        })
        .collect()
}

/// Some solution of `A·x = b`, or `None` if the system is inconsistent.
pub fn solve_rational(
    a: &RatMatrix,
    b: &[BigRational],
) -> Result<Option<Vec<BigRational>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch);
    }
    let mut aug = RatMatrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols(), b[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec_zero(a.cols());
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, a.cols()).clone();
    }
    Ok(Some(x))
}

fn vec_zero(n: usize) -> Vec<BigRational> {
    (0..n).map(|_| BigRational::zero()).collect()
}
