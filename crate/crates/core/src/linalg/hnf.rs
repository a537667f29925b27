use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{IntMatrix, LinalgError, Matrix, RatMatrix};

/// Hermite normal form `A·T = H` under right unimodular transforms.
///
/// `H` is upper triangular with positive diagonal and entries to the right
/// of each pivot reduced into `[0, h_ii)`.
#[derive(Clone, PartialEq, Eq)]
pub struct HnfResult<T> {
    pub h: Matrix<T>,
    pub t: IntMatrix,
}

impl<T: core::fmt::Display> core::fmt::Debug for HnfResult<T> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("HnfResult").field("h", &self.h).field("t", &self.t).finish()
    }
}

/// Hermite normal form of a rational matrix of full row rank.
pub fn hnf(a: &RatMatrix) -> Result<HnfResult<BigRational>, LinalgError> {
    let scale = a.denominator_lcm();
    let scaled = a.scale(&BigRational::from_integer(scale.clone()));
    let ai = scaled.to_integer().expect("scaled by common denominator");
    let r = hnf_int(&ai)?;
    let inv = BigRational::new(BigInt::from(1), scale);
    Ok(HnfResult {
        h: r.h.to_rational().scale(&inv),
        t: r.t,
    })
}

/// Hermite normal form of an integer matrix of full row rank.
pub fn hnf_int(a: &IntMatrix) -> Result<HnfResult<BigInt>, LinalgError> {
    let (m, n) = (a.rows(), a.cols());
    if m > n {
        return Err(LinalgError::RankDeficient);
    }
    let mut h = a.clone();
    let mut t = IntMatrix::identity(n);
    for i in (0..m).rev() {
        let active: Vec<usize> = (0..=i).chain(m..n).collect();
        loop {
            let nonzero: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&c| !h.get(i, c).is_zero())
                .collect();
            let Some(&p) = nonzero.iter().min_by_key(|&&c| h.get(i, c).abs()) else {
                return Err(LinalgError::RankDeficient);
            };
            if nonzero.len() == 1 {
                h.swap_cols(p, i);
                t.swap_cols(p, i);
                break;
            }
            let pivot = h.get(i, p).clone();
            for &c in &nonzero {
                if c == p {
                    continue;
                }
                let f = -h.get(i, c).div_floor(&pivot);
                h.add_col_multiple(c, p, &f);
                t.add_col_multiple(c, p, &f);
            }
        }
        if h.get(i, i).is_negative() {
            h.negate_col(i);
            t.negate_col(i);
        }
    }
    for j in 1..m {
        for i in (0..j).rev() {
            let f = -h.get(i, j).div_floor(h.get(i, i));
            h.add_col_multiple(j, i, &f);
            t.add_col_multiple(j, i, &f);
        }
    }
    Ok(HnfResult { h, t })
}
