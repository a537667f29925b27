use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Automorphism;
use crate::lattice::UniformSubgroup;
use crate::lie::catalog;
use crate::linalg::{RatMatrix, Rational};
use crate::{Error, Result};

/// Parameters of a uniform subgroup of `G_4 × ℝ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G4xRParams {
    pub p1: BigInt,
    pub p2: BigInt,
    pub p3: BigInt,
}

impl G4xRParams {
    pub fn new(p1: impl Into<BigInt>, p2: impl Into<BigInt>, p3: impl Into<BigInt>) -> Self {
        Self {
            p1: p1.into(),
            p2: p2.into(),
            p3: p3.into(),
        }
    }
}

/// `p_1, p_2 > 0`, `p_1 p_2 + p_3` even and `0 ≤ p_3 < 2 p_1`.
pub fn g4xr_validate(p: &G4xRParams) -> bool {
    p.p1.is_positive()
        && p.p2.is_positive()
        && (&p.p1 * &p.p2 + &p.p3).is_even()
        && !p.p3.is_negative()
        && p.p3 < &p.p1 * 2
}

/// `exp(ℤe) exp(ℤX_1) exp(ℤ p_1 X_2) exp(ℤ(p_1 p_2 X_3 − (p_3/2) X_2)) exp(ℤX_4)`.
pub fn g4xr_construct(p: &G4xRParams) -> Result<UniformSubgroup> {
    if !g4xr_validate(p) {
        return Err(Error::InvalidParams(format!("({}, {}, {}) violates the G4xR constraints", p.p1, p.p2, p.p3)));
    }
    let g = catalog("g4xR")?;
    let r = |x: &BigInt| Rational::from_integer(x.clone());
    let mut x2 = g.basis_vector(1);
    x2[1] = r(&p.p1);
    let mut x3 = g.basis_vector(2);
    x3[2] = r(&(&p.p1 * &p.p2));
    x3[1] = -Rational::new(p.p3.clone(), 2.into());
    let basis = [g.basis_vector(4), g.basis_vector(0), x2, x3, g.basis_vector(3)];
    UniformSubgroup::new(g, basis.to_vec())
}

/// `Φ(Γ) = H × ℤ^r` with `H` uniform in the non-Abelian factor.
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub h: UniformSubgroup,
    pub r: usize,
    pub witness: Automorphism,
}

/// Splits off the Abelian factor of a lattice in `N ⊕ ℝ^r`.
pub fn split_abelian_factor(gamma: &UniformSubgroup) -> Result<SplitResult> {
    let g = gamma.algebra().clone();
    if !gamma.is_verified() {
        return Err(Error::NotVerified);
    }
    let m = g.abelian_factor_dim();
    if m == 0 {
        return Err(Error::NoAbelianFactor);
    }
    let (name, r) = g.decomposition().ok_or_else(|| Error::Unsupported(g.name().into()))?;
    if r != m {
        return Err(Error::Unsupported(g.name().into()));
    }
    let nalg = catalog(name)?;
    let (dim, n) = (g.dim(), nalg.dim());
    let (z, d) = (g.center(), g.derived());
    let zd = z.intersect(&d);
    let p = zd.dim();
    let refined = gamma.basis_through_ideals(&[zd, z.clone(), d.sum(&z)])?;
    if z.dim() != p + r {
        return Err(Error::Unsupported(g.name().into()));
    }
    let e = refined.vectors();
    let split = |v: &[Rational]| -> (Vec<Rational>, Vec<Rational>) {
        let a = (0..dim).map(|k| if k >= n { v[k].clone() } else { Rational::zero() }).collect();
        let b = (0..dim).map(|k| if k < n { v[k].clone() } else { Rational::zero() }).collect();
        (a, b)
    };
    let images: Vec<Vec<Rational>> = e
        .iter()
        .enumerate()
        .map(|(i, v)| match i {
            i if i < p => v.clone(),
            i if i < p + r => split(v).0,
            _ => split(v).1,
        })
        .collect();
    let src = RatMatrix::from_cols(dim, e)?;
    let dst = RatMatrix::from_cols(dim, &images)?;
    let phi = &dst * &src.inverse().ok_or(Error::NotVerified)?;
    let phi = Automorphism::new(g.clone(), phi).map_err(|_| Error::NotVerified)?;

    let k: Vec<Vec<Rational>> = images[p..p + r].iter().map(|v| v[n..].to_vec()).collect();
    let kinv = RatMatrix::from_cols(r, &k)?.inverse().ok_or(Error::NotVerified)?;
    let psi = RatMatrix::identity(n).block_diag(&kinv);
    let witness = Automorphism::new(g.clone(), psi)?.compose(&phi);

    let h_basis: Vec<Vec<Rational>> = images[..p]
        .iter()
        .chain(&images[p + r..])
        .map(|v| v[..n].to_vec())
        .collect();
    let h = UniformSubgroup::new(nalg, h_basis.clone())?;
    let mut product: Vec<Vec<Rational>> = h_basis
        .into_iter()
        .map(|mut v| {
            v.resize(dim, Rational::zero());
            v
        })
        .collect();
    product.extend((n..dim).map(|i| g.basis_vector(i)));
    let product = UniformSubgroup::new(g, product)?;
    if !witness.apply_lattice(gamma)?.same_group(&product) {
        return Err(Error::NotVerified);
    }
    Ok(SplitResult {
        h: h.into_verified()?,
        r,
        witness,
    })
}
