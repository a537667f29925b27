//! Exact integer and rational linear algebra.

mod hnf;
mod matrix;
mod snf;
mod solve;

pub use hnf::{hnf, hnf_int, HnfResult};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use snf::{snf, SnfResult};
pub use solve::{kernel, rank, rref, solve_rational};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix rank is smaller than its row count")]
    RankDeficient,
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
