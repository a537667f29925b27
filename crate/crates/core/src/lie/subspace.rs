use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::{kernel, rank, RatMatrix, Rational};

/// A linear subspace of `Q^n`, stored as an independent list of column vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    /// Span of `vectors`; dependent vectors are dropped, keeping the first occurrences.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
            if !s.contains(&v) {
                s.basis.push(v);
            }
        }
        s
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_cols(self.ambient, &self.basis).expect("basis vectors share a length")
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut cols = self.basis.clone();
        cols.push(v.to_vec());
        let m = RatMatrix::from_cols(self.ambient, &cols).expect("lengths checked");
        rank(&m) == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = A·a = B·b  <=>  [A | -B]·(a, b) = 0
        let (p, q) = (self.dim(), other.dim());
        if p == 0 || q == 0 {
            return Self::zero(self.ambient);
        }
        let mut m = RatMatrix::zeros(self.ambient, p + q);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, p + j, -x.clone());
            }
        }
        let a = self.matrix();
        Self::span(
            self.ambient,
            kernel(&m)
                .into_iter()
                .map(|k| a.mul_vec(&k[..p]).expect("dimensions agree")),
        )
    }

    /// Rows `Q` with `Q·v = 0` exactly when `v` lies in the subspace.
    pub fn annihilator(&self) -> RatMatrix {
        let rows = if self.basis.is_empty() {
            RatMatrix::zeros(0, self.ambient)
        } else {
            self.matrix().transpose()
        };
        let k = kernel(&rows);
        if k.is_empty() {
            RatMatrix::zeros(0, self.ambient)
        } else {
            RatMatrix::from_rows(k).expect("kernel vectors share a length")
        }
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        crate::linalg::solve_rational(&self.matrix(), v).expect("dimensions agree")
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other)
    }
}

impl Eq for Subspace {}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..n).map(|_| Rational::zero()).collect();
    v[i] = Rational::from_integer(1.into());
    v
}
