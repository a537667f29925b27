use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{extend_from_generators, require_algebra, span_of, Automorphism};
use crate::lattice::UniformSubgroup;
use crate::lie::catalog;
use crate::linalg::{hnf, snf, IntMatrix, RatMatrix, Rational};
use crate::{Error, Result};

/// Parameters of `Γ(p, q, α)`: `p, q > 0` and `0 ≤ α < q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G52Params {
    pub p: BigInt,
    pub q: BigInt,
    pub alpha: BigInt,
}

impl G52Params {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, alpha: impl Into<BigInt>) -> Result<Self> {
        let (p, q, alpha) = (p.into(), q.into(), alpha.into());
        if !p.is_positive() || !q.is_positive() || alpha.is_negative() || alpha >= q {
            return Err(Error::InvalidParams("expected p, q > 0 and 0 <= alpha < q".into()));
        }
        Ok(Self { p, q, alpha })
    }

    fn matrix(&self) -> IntMatrix {
        IntMatrix::new(2, 2, vec![self.p.clone(), self.alpha.clone(), BigInt::zero(), self.q.clone()])
            .expect("2x2")
    }
}

/// `r = (r_1, r_2)` with `r_1 | r_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct G52Canonical {
    pub r1: BigInt,
    pub r2: BigInt,
}

impl G52Canonical {
    pub fn new(r1: impl Into<BigInt>, r2: impl Into<BigInt>) -> Result<Self> {
        let (r1, r2) = (r1.into(), r2.into());
        if !r1.is_positive() || !r2.is_positive() || !r2.is_multiple_of(&r1) {
            return Err(Error::NotMember);
        }
        Ok(Self { r1, r2 })
    }

    pub fn params(&self) -> G52Params {
        G52Params {
            p: self.r1.clone(),
            q: self.r2.clone(),
            alpha: BigInt::zero(),
        }
    }
}

/// `Γ(p,q,α) = exp(ℤ X_1/p) exp(ℤ(X_2/q − α X_1/(pq))) exp(ℤX_3) exp(ℤX_4) exp(ℤX_5)`.
pub fn g52_lattice(params: &G52Params) -> Result<UniformSubgroup> {
    let g = catalog("g5_2")?;
    let (p, q) = (Rational::from_integer(params.p.clone()), Rational::from_integer(params.q.clone()));
    let a = Rational::from_integer(params.alpha.clone());
    let z = Rational::zero;
    let mut basis: Vec<Vec<Rational>> = (0..5).map(|i| g.basis_vector(i)).collect();
    basis[0] = vec![p.recip(), z(), z(), z(), z()];
    basis[1] = vec![-(a / (p * &q)), q.recip(), z(), z(), z()];
    UniformSubgroup::new(g, basis)
}

/// Finds `(p, q, α)` and `Φ` with `Φ(Γ) = Γ(p, q, α)`.
pub fn reduce_g52(gamma: &UniformSubgroup) -> Result<(G52Params, Automorphism)> {
    require_algebra(gamma, "g5_2")?;
    let g = gamma.algebra().clone();
    let derived = g.derived();
    let one = Rational::one();
    let l: Vec<Rational> = (0..5).map(|i| if i == 0 { one.clone() } else { Rational::zero() }).collect();
    let c = g.centralizer(&g.radical_of_form(&l));
    debug_assert_eq!(derived, span_of(&g, &[0, 1]));
    debug_assert_eq!(c, span_of(&g, &[0, 1, 2, 3]));

    let refined = gamma.basis_through_ideals(&[derived, c])?;
    let y = refined.vectors();
    let psi = extend_from_generators(
        &g,
        &[y[2].clone(), y[3].clone(), y[4].clone()],
        &[g.basis_vector(2), g.basis_vector(3), g.basis_vector(4)],
    )
    .ok_or(Error::NotVerified)?;

    let low = RatMatrix::from_cols(2, &[psi.apply(&y[0])[..2].to_vec(), psi.apply(&y[1])[..2].to_vec()])?;
    let h = hnf(&low)?.h;
    let p = h.get(0, 0).recip();
    let q = h.get(1, 1).recip();
    let m = -(h.get(0, 1).clone() * &p * &q);
    if !p.is_integer() || !q.is_integer() || !m.is_integer() {
        return Err(Error::NotVerified);
    }
    let q = q.to_integer();
    let params = G52Params {
        p: p.to_integer(),
        alpha: m.to_integer().mod_floor(&q),
        q,
    };
    if !psi.maps_onto(gamma, &g52_lattice(&params)?) {
        return Err(Error::NotVerified);
    }
    Ok((params, psi))
}

/// Whether `[[p, α], [0, q]]` and `[[p', α'], [0, q']]` have the same elementary divisors.
pub fn g52_equiv(a: &G52Params, b: &G52Params) -> bool {
    snf(&a.matrix()).divisors == snf(&b.matrix()).divisors
}

/// The canonical `r` with a witness `Φ(Γ) = Γ_r`.
pub fn canon_g52(gamma: &UniformSubgroup) -> Result<(G52Canonical, Automorphism)> {
    let (params, psi) = reduce_g52(gamma)?;
    let s = snf(&params.matrix());
    let [r1, r2] = [s.divisors[0].clone(), s.divisors[1].clone()];
    // φ = diag(V⁻¹, V⁻¹, 1) carries M⁻¹ℤ² to S⁻¹ℤ² in both the (X1, X2) and (X3, X4) planes.
    let vinv = s.v.to_rational().inverse().expect("unimodular");
    let mut phi = RatMatrix::identity(5);
    for (off, i, j) in [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (2, 0, 0), (2, 0, 1), (2, 1, 0), (2, 1, 1)] {
        phi.set(off + i, off + j, vinv.get(i, j).clone());
    }
    let phi = Automorphism::new(gamma.algebra().clone(), phi)?.compose(&psi);
    let canon = G52Canonical::new(r1, r2)?;
    if !phi.maps_onto(gamma, &g52_lattice(&canon.params())?) {
        return Err(Error::NotVerified);
    }
    Ok((canon, phi))
}
