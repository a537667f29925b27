use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{extend_from_generators, require_algebra, span_of, Automorphism};
use crate::lattice::UniformSubgroup;
use crate::lie::catalog;
use crate::linalg::{hnf_int, IntMatrix, RatMatrix, Rational};
use crate::{Error, Result};

/// `⟦D, m⟧ = diag(D, m)` with `D` upper triangular, `α_{i4} = 0` for `i < 4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct G56Canonical {
    pub d: IntMatrix,
    pub m: BigInt,
}

impl G56Canonical {
    pub fn new(d: IntMatrix, m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        let shaped = d.rows() == 4
            && d.cols() == 4
            && (0..4).all(|i| (0..i).all(|j| d.get(i, j).is_zero()))
            && (0..3).all(|i| d.get(i, 3).is_zero())
            && (0..4).all(|i| !d.get(i, i).is_zero());
        if !shaped || !m.is_positive() {
            return Err(Error::BadShape);
        }
        Ok(Self { d, m })
    }

    /// The 5×5 block matrix `⟦D, m⟧`.
    pub fn block(&self) -> IntMatrix {
        self.d.block_diag(&IntMatrix::new(1, 1, vec![self.m.clone()]).expect("1x1"))
    }

    /// The matrix whose columns are the logarithms of `Γ ∩ exp 𝔞₄` read through `D`.
    fn obstruction(&self) -> RatMatrix {
        let a = |i: usize, j: usize| Rational::from_integer(self.d.get(i, j).clone());
        let m = Rational::from_integer(self.m.clone());
        let (a22, a23, a33, a44) = (a(1, 1), a(1, 2), a(2, 2), a(3, 3));
        let z = Rational::zero;
        let half = |x: Rational| x / Rational::from_integer(2.into());
        let m2 = m.clone() * &m;
        let c1 = [
            a44.clone() * &m2 * &m / Rational::from_integer(6.into()) + half(a44.clone() * &a44 * &m),
            half(a44.clone() * &m2),
            a44.clone() * &m,
            z(),
        ];
        let c2 = [m.clone() * &a23 + half(m2 * &a33), m.clone() * &a33, z(), z()];
        let c3 = [m * a22, z(), z(), z()];
        let c4 = [a44 * a33, z(), z(), z()];
        let cols = [c1, c2, c3, c4];
        let data = (0..4).flat_map(|i| cols.iter().map(move |c| c[i].clone())).collect();
        RatMatrix::new(4, 4, data).expect("4x4")
    }
}

/// Whether `D⁻¹ M(D, m)` is integral, i.e. `Γ_⟦D,m⟧` is a subgroup.
pub fn s6_member(c: &G56Canonical) -> bool {
    c.d.to_rational()
        .inverse()
        .is_some_and(|inv| (&inv * &c.obstruction()).is_integral())
}

/// `Γ_⟦D,m⟧`: the columns of `D`, then `m X_5`.
pub fn g56_lattice(c: &G56Canonical) -> Result<UniformSubgroup> {
    let g = catalog("g5_6")?;
    let mut basis: Vec<Vec<Rational>> = (0..4)
        .map(|j| {
            let mut v: Vec<Rational> = c.d.col(j).into_iter().map(Rational::from_integer).collect();
            v.push(Rational::zero());
            v
        })
        .collect();
    let mut x5 = g.basis_vector(4);
    x5[4] = Rational::from_integer(c.m.clone());
    basis.push(x5);
    UniformSubgroup::new(g, basis)
}

/// A member `⟦D, m⟧` with `D` in Hermite normal form, and `Φ` with `Φ(Γ) = Γ_⟦D,m⟧`.
pub fn canon_g56(gamma: &UniformSubgroup) -> Result<(G56Canonical, Automorphism)> {
    require_algebra(gamma, "g5_6")?;
    let g = gamma.algebra().clone();
    let chain: Vec<_> = (1..=4).map(|k| span_of(&g, &(0..k).collect::<Vec<_>>())).collect();
    debug_assert!(chain[0] == g.center() && chain[2] == g.derived());
    let refined = gamma.basis_through_ideals(&chain)?;
    let y = refined.vectors();
    let (a44, a55) = (y[3][3].clone(), y[4][4].clone());
    let c = a55.clone() * &a55 / &a44;
    let y4: Vec<Rational> = y[3].iter().map(|v| v * &c).collect();
    let phi0 = extend_from_generators(&g, &[g.basis_vector(3), g.basis_vector(4)], &[y4, y[4].clone()])
        .ok_or(Error::NotVerified)?;
    let inv = phi0.inverse();
    let b: Vec<Vec<Rational>> = y[..4].iter().map(|v| inv.apply(v)).collect();

    let mut mu = BigInt::one();
    for v in &b {
        for (i, x) in v.iter().enumerate().take(4) {
            mu = mu.lcm(&root_ceiling_divisor(x.denom(), 5 - i as u32));
        }
    }
    let mu_r = Rational::from_integer(mu.clone());
    let scale: Vec<Rational> = (0..5).map(|i| pow(&mu_r, 5 - i)).collect();
    let pi = RatMatrix::diagonal(&scale);
    let cols: Vec<Vec<BigInt>> = b[..3]
        .iter()
        .map(|v| (0..3).map(|i| (v[i].clone() * &scale[i]).to_integer()).collect())
        .collect();
    let h = hnf_int(&IntMatrix::from_cols(3, &cols)?)?.h;
    let a44 = (b[3][3].clone() * &scale[3]).to_integer();
    let mut d = IntMatrix::zeros(4, 4);
    for i in 0..3 {
        for j in 0..3 {
            d.set(i, j, h.get(i, j).clone());
        }
    }
    d.set(3, 3, a44);
    let canon = G56Canonical::new(d, mu)?;
    let witness = Automorphism::new(g, pi)?.compose(&inv);
    if !witness.maps_onto(gamma, &g56_lattice(&canon)?) {
        return Err(Error::NotVerified);
    }
    Ok((canon, witness))
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// Least `t > 0` with `d | t^k`.
fn root_ceiling_divisor(d: &BigInt, k: u32) -> BigInt {
    let mut d = d.abs();
    let mut t = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= d {
        let mut e = 0u32;
        while d.is_multiple_of(&p) {
            d /= &p;
            e += 1;
        }
        t *= p.pow(e.div_ceil(k));
        p += 1;
    }
    t * d
}

/// `⟦D,m⟧⟦D′,m′⟧⁻¹ = diag(a⁵, a⁴, a³, a², a)` for some rational `a`.
pub fn g56_equivalent(a: &G56Canonical, b: &G56Canonical) -> Result<bool> {
    if !s6_member(a) || !s6_member(b) {
        return Err(Error::NotMember);
    }
    let inv = b.block().to_rational().inverse().ok_or(Error::BadShape)?;
    let r = &a.block().to_rational() * &inv;
    let s = r.get(4, 4).clone();
    let target: Vec<Rational> = (0..5).map(|i| pow(&s, 5 - i)).collect();
    Ok(r == RatMatrix::diagonal(&target))
}
