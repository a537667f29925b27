use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·A·V = S` with unimodular witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `S`, each dividing the next.
    pub divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Computes the Smith normal form. The zero matrix yields an empty divisor list.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pr, pc)) = smallest_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        let pivot = s.get(t, t).clone();
        let mut dirty = false;
        for i in t + 1..m {
            if s.get(i, t).is_zero() {
                continue;
            }
            let (q, r) = s.get(i, t).div_mod_floor(&pivot);
            let f = -q;
            s.add_row_multiple(i, t, &f);
            u.add_row_multiple(i, t, &f);
            dirty |= !r.is_zero();
        }
        for j in t + 1..n {
            if s.get(t, j).is_zero() {
                continue;
            }
            let (q, r) = s.get(t, j).div_mod_floor(&pivot);
            let f = -q;
            s.add_col_multiple(j, t, &f);
            v.add_col_multiple(j, t, &f);
            dirty |= !r.is_zero();
        }
        if dirty {
            continue;
        }

        if let Some(i) = non_divisible_row(&s, t, &pivot) {
            let one = BigInt::from(1);
            s.add_row_multiple(t, i, &one);
            u.add_row_multiple(t, i, &one);
            continue;
        }

        if pivot.is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let divisors = (0..t).map(|i| s.get(i, i).clone()).collect();
    SnfResult { u, s, v, divisors }
}

/// Position of the smallest nonzero |entry| in the trailing block, first in row-major order.
fn smallest_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn non_divisible_row(s: &IntMatrix, t: usize, pivot: &BigInt) -> Option<usize> {
    (t + 1..s.rows()).find(|&i| (t + 1..s.cols()).any(|j| !s.get(i, j).is_multiple_of(pivot)))
}
