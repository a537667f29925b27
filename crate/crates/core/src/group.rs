//! Group law on `G = exp 𝔤` by the Baker–Campbell–Hausdorff formula, and Malcev coordinates.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::lie::{LieAlgebra, LieElement};
use crate::linalg::{RatMatrix, Rational};
use crate::{Error, Result};

/// `log(exp x · exp y)`, exact for step at most 4.
pub(crate) fn bch(g: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let xy = g.bracket(x, y);
    let mut out: Vec<Rational> = x.iter().zip(y).map(|(a, b)| a.clone() + b).collect();
    if xy.iter().all(Zero::is_zero) {
        return out;
    }
    let x_xy = g.bracket(x, &xy);
    let y_xy = g.bracket(y, &xy);
    let y_x_xy = g.bracket(y, &x_xy);
    let (half, twelfth, twentyfourth) = (frac(1, 2), frac(1, 12), frac(1, 24));
    for k in 0..out.len() {
        let t = xy[k].clone() * &half + (x_xy[k].clone() - &y_xy[k]) * &twelfth
            - y_x_xy[k].clone() * &twentyfourth;
        out[k] += t;
    }
    out
}

/// `e^{ad x} y`.
pub(crate) fn exp_ad_apply(g: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let mut out = y.to_vec();
    let mut term = y.to_vec();
    for k in 1i64.. {
        term = g.bracket(x, &term);
        if term.iter().all(Zero::is_zero) {
            break;
        }
        let c = frac(1, k);
        for (o, t) in out.iter_mut().zip(term.iter_mut()) {
            *t *= &c;
            *o += &*t;
        }
    }
    out
}

pub(crate) fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Matrix of `e^{ad x} = Σ ad(x)^k / k!`.
pub fn exp_ad(x: &LieElement) -> RatMatrix {
    let g = x.algebra();
    let cols: Vec<Vec<Rational>> = (0..g.dim())
        .map(|j| exp_ad_apply(g, x.coords(), &g.basis_vector(j)))
        .collect();
    RatMatrix::from_cols(g.dim(), &cols).expect("square")
}

/// `exp(X)` stored by its logarithm in the structure basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    algebra: Arc<LieAlgebra>,
    log: Vec<Rational>,
}

impl GroupElement {
    pub fn new(algebra: Arc<LieAlgebra>, log: Vec<Rational>) -> Result<Self> {
        if log.len() != algebra.dim() {
            return Err(crate::linalg::LinalgError::DimensionMismatch.into());
        }
        if algebra.step() > 4 {
            return Err(Error::StepTooHigh);
        }
        Ok(Self { algebra, log })
    }

    pub fn exp(x: &LieElement) -> Result<Self> {
        Self::new(x.algebra().clone(), x.coords().to_vec())
    }

    pub fn identity(algebra: Arc<LieAlgebra>) -> Result<Self> {
        let n = algebra.dim();
        Self::new(algebra, (0..n).map(|_| Rational::zero()).collect())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn log(&self) -> &[Rational] {
        &self.log
    }

    pub fn log_element(&self) -> LieElement {
        LieElement::new(self.algebra.clone(), self.log.clone()).expect("length checked")
    }

    pub fn is_identity(&self) -> bool {
        self.log.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.algebra.name() == other.algebra.name() {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn with_log(&self, log: Vec<Rational>) -> Self {
        Self {
            algebra: self.algebra.clone(),
            log,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_log(bch(&self.algebra, &self.log, &other.log)))
    }

    pub fn inv(&self) -> Self {
        self.with_log(self.log.iter().map(|x| -x.clone()).collect())
    }

    /// `self · other · self⁻¹`.
    pub fn conj(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_log(exp_ad_apply(&self.algebra, &self.log, &other.log)))
    }

    /// `self^k`, an integer or rational power along the one-parameter subgroup.
    pub fn pow(&self, k: &Rational) -> Self {
        self.with_log(self.log.iter().map(|x| x.clone() * k).collect())
    }

    /// Applies a Lie algebra automorphism to the logarithm.
    pub fn map(&self, phi: &RatMatrix) -> Result<Self> {
        Ok(self.with_log(phi.mul_vec(&self.log)?))
    }
}

/// An ordered basis `ε_1..ε_n` whose prefix spans are subalgebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalcevBasis {
    algebra: Arc<LieAlgebra>,
    basis: Vec<Vec<Rational>>,
    inverse: RatMatrix,
}

impl MalcevBasis {
    pub fn new(algebra: Arc<LieAlgebra>, basis: Vec<Vec<Rational>>) -> Result<Self> {
        let n = algebra.dim();
        if basis.len() != n {
            return Err(Error::NotMalcevBasis);
        }
        let m = RatMatrix::from_cols(n, &basis)?;
        let inverse = m.inverse().ok_or(Error::NotMalcevBasis)?;
        for i in 0..n {
            for j in 0..i {
                let c = inverse
                    .mul_vec(&algebra.bracket(&basis[i], &basis[j]))
                    .expect("square");
                if c[i + 1..].iter().any(|x| !x.is_zero()) {
                    return Err(Error::NotMalcevBasis);
                }
            }
        }
        Ok(Self {
            algebra,
            basis,
            inverse,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Columns are the basis vectors.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_cols(self.algebra.dim(), &self.basis).expect("square")
    }

    /// Coordinates of a Lie algebra vector in this basis (first kind).
    pub fn linear_coords(&self, x: &[Rational]) -> Vec<Rational> {
        self.inverse.mul_vec(x).expect("square")
    }

    /// `t` with `exp(x) = exp(t_1 ε_1)···exp(t_n ε_n)`, peeled from the top index.
    pub(crate) fn coords_of_log(&self, x: &[Rational]) -> Vec<Rational> {
        let n = self.basis.len();
        let mut t: Vec<Rational> = (0..n).map(|_| Rational::zero()).collect();
        let mut cur = x.to_vec();
        for k in (0..n).rev() {
            if cur.iter().all(Zero::is_zero) {
                break;
            }
            let c = self.linear_coords(&cur);
            let tk = c[k].clone();
            if !tk.is_zero() {
                let step: Vec<Rational> = self.basis[k].iter().map(|e| -(e.clone() * &tk)).collect();
                cur = bch(&self.algebra, &cur, &step);
            }
            t[k] = tk;
        }
        t
    }

    pub(crate) fn log_of_coords(&self, t: &[Rational]) -> Vec<Rational> {
        let n = self.algebra.dim();
        let mut acc: Vec<Rational> = (0..n).map(|_| Rational::zero()).collect();
        for (tk, e) in t.iter().zip(&self.basis) {
            if tk.is_zero() {
                continue;
            }
            let step: Vec<Rational> = e.iter().map(|x| x.clone() * tk).collect();
            acc = bch(&self.algebra, &acc, &step);
        }
        acc
    }

    pub fn malcev_coords(&self, g: &GroupElement) -> Result<Vec<Rational>> {
        if g.algebra().name() != self.algebra.name() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.coords_of_log(g.log()))
    }

    pub fn from_malcev(&self, t: &[Rational]) -> Result<GroupElement> {
        if t.len() != self.basis.len() {
            return Err(crate::linalg::LinalgError::DimensionMismatch.into());
        }
        GroupElement::new(self.algebra.clone(), self.log_of_coords(t))
    }
}

/// Whether every entry is an integer.
pub(crate) fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_integer)
}
