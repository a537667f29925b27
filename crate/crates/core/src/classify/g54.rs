use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::search::{isomorphism_search, SearchOutcome};
use super::{extend_from_generators, require_algebra, span_of, Automorphism};
use crate::group::bch;
use crate::lattice::UniformSubgroup;
use crate::lie::{catalog, LieAlgebra};
use crate::linalg::{hnf_int, IntMatrix, RatMatrix, Rational};
use crate::{Error, Result};

/// `⟦D, m⟧ = diag(D, m)` with `D` an invertible 3×3 integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct G54Canonical {
    pub d: IntMatrix,
    pub m: BigInt,
}

impl G54Canonical {
    pub fn new(d: IntMatrix, m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if d.rows() != 3 || d.cols() != 3 || d.determinant().map_or(true, |x| x.is_zero()) || !m.is_positive() {
            return Err(Error::BadShape);
        }
        Ok(Self { d, m })
    }

    /// The 4×4 block matrix `⟦D, m⟧`.
    pub fn block(&self) -> IntMatrix {
        self.d.block_diag(&IntMatrix::new(1, 1, vec![self.m.clone()]).expect("1x1"))
    }
}

fn half(n: i64) -> Rational {
    Rational::new(n.into(), 2.into())
}

/// `A(u) = [[1, 0, u/2, u/2], [0, 1, 1, 1/2], [0, 0, 1, 1], [0, 0, 0, 1]]`.
pub fn a_matrix(u: &BigInt) -> RatMatrix {
    let u2 = Rational::new(u.clone(), 2.into());
    let (o, z) = (Rational::one(), Rational::zero());
    RatMatrix::new(
        4,
        4,
        vec![
            o.clone(), z.clone(), u2.clone(), u2,
            z.clone(), o.clone(), o.clone(), half(1),
            z.clone(), z.clone(), o.clone(), o.clone(),
            z.clone(), z.clone(), z, o,
        ],
    )
    .expect("4x4")
}

/// `B = [[1, 0, 1], [0, 1, 0], [0, 0, 1]]`.
pub fn b_matrix() -> RatMatrix {
    RatMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]])
}

fn conjugate_in_sl(k: &RatMatrix, x: &RatMatrix) -> bool {
    let Some(kinv) = k.inverse() else {
        return false;
    };
    let c = &(&kinv * x) * k;
    c.is_integral() && c.determinant().is_ok_and(|d| d.is_one())
}

/// Both membership conditions: `⟦D,m⟧⁻¹ A(m) ⟦D,m⟧ ∈ SL(4,ℤ)` and `D⁻¹ B D ∈ SL(3,ℤ)`.
pub fn s4_member(c: &G54Canonical) -> bool {
    conjugate_in_sl(&c.d.to_rational(), &b_matrix())
        && conjugate_in_sl(&c.block().to_rational(), &a_matrix(&c.m))
}

/// `⟦HNF(D), m⟧`, again a member.
pub fn s4_hermite_close(c: &G54Canonical) -> Result<G54Canonical> {
    if !s4_member(c) {
        return Err(Error::NotMember);
    }
    let h = hnf_int(&c.d)?.h;
    G54Canonical::new(h, c.m.clone())
}

/// `Γ_⟦D,m⟧`: the columns of `D`, then `m X_4`, then `X_5`.
pub fn g54_lattice(c: &G54Canonical) -> Result<UniformSubgroup> {
    let g = catalog("g5_4")?;
    let mut basis: Vec<Vec<Rational>> = (0..3)
        .map(|j| {
            let mut v: Vec<Rational> = c.d.col(j).into_iter().map(Rational::from_integer).collect();
            v.extend([Rational::zero(), Rational::zero()]);
            v
        })
        .collect();
    let mut x4 = g.basis_vector(3);
    x4[3] = Rational::from_integer(c.m.clone());
    basis.push(x4);
    basis.push(g.basis_vector(4));
    UniformSubgroup::new(g, basis)
}

/// Canonical `⟦D, m⟧` with `D` in Hermite normal form, and `Φ` with `Φ(Γ) = Γ_⟦D,m⟧`.
///
/// The top generators `Y_4, Y_5` of a basis through `𝔷 ⊂ 𝒟` are replaced by
/// `Y_4^a Y_5^b, Y_4^c Y_5^d` for small unimodular `[[a, b], [c, d]]`, identity
/// first; the first result satisfying [`s4_member`] is returned, else the
/// identity result.
pub fn canon_g54(gamma: &UniformSubgroup) -> Result<(G54Canonical, Automorphism)> {
    require_algebra(gamma, "g5_4")?;
    let g = gamma.algebra().clone();
    let (z, d) = (g.center(), g.derived());
    debug_assert_eq!(z, span_of(&g, &[0, 1]));
    debug_assert_eq!(d, span_of(&g, &[0, 1, 2]));
    let refined = gamma.basis_through_ideals(&[z, d])?;
    let y = refined.vectors();
    let mut fallback = None;
    for t in top_changes() {
        let scaled = |v: &[Rational], k: i64| -> Vec<Rational> { v.iter().map(|x| x * Rational::from_integer(k.into())).collect() };
        let mut basis = y[..3].to_vec();
        basis.push(bch(&g, &scaled(&y[3], t[0]), &scaled(&y[4], t[1])));
        basis.push(bch(&g, &scaled(&y[3], t[2]), &scaled(&y[4], t[3])));
        let (canon, witness) = reduce_from_basis(&g, &basis)?;
        if s4_member(&canon) {
            fallback = Some((canon, witness));
            break;
        }
        fallback.get_or_insert((canon, witness));
    }
    let (canon, witness) = fallback.expect("identity is tried");
    if !witness.maps_onto(gamma, &g54_lattice(&canon)?) {
        return Err(Error::NotVerified);
    }
    Ok((canon, witness))
}

/// `[[a, b], [c, d]]` with entries in `[-2, 2]` and `ad − bc = ±1`, identity first.
fn top_changes() -> Vec<[i64; 4]> {
    let mut all: Vec<[i64; 4]> = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    if (a * d - b * c).abs() == 1 {
                        all.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    all.sort_by_key(|t| (*t != [1, 0, 0, 1], t.iter().map(|x| x.abs()).sum::<i64>(), t.map(|x| -x)));
    all
}

/// The reduction for a basis `y` of `Γ` through `𝔷 ⊂ 𝒟`.
///
/// `m` is the least positive integer with `π Φ₀⁻¹(Γ ∩ exp 𝒟)` integral, where
/// `Φ₀` sends `X_4, X_5` to `y_4, y_5` and `π = diag(m², m, m, m, 1)`.
fn reduce_from_basis(g: &Arc<LieAlgebra>, y: &[Vec<Rational>]) -> Result<(G54Canonical, Automorphism)> {
    let phi0 = extend_from_generators(g, &[g.basis_vector(3), g.basis_vector(4)], &[y[3].clone(), y[4].clone()])
        .ok_or(Error::NotVerified)?;
    let inv = phi0.inverse();
    let b: Vec<Vec<Rational>> = y[..3].iter().map(|v| inv.apply(v)).collect();

    let mut mu = BigInt::one();
    for v in &b {
        mu = mu.lcm(v[1].denom()).lcm(v[2].denom()).lcm(&sqrt_ceiling_divisor(v[0].denom()));
    }
    let mu_r = Rational::from_integer(mu.clone());
    let scale = [mu_r.clone() * &mu_r, mu_r.clone(), mu_r.clone(), mu_r, Rational::one()];
    let pi = RatMatrix::diagonal(&scale);
    let cols: Vec<Vec<BigInt>> = b
        .iter()
        .map(|v| (0..3).map(|i| (v[i].clone() * &scale[i]).to_integer()).collect())
        .collect();
    let dm = hnf_int(&IntMatrix::from_cols(3, &cols)?)?.h;
    let canon = G54Canonical::new(dm, mu)?;
    let witness = Automorphism::new(g.clone(), pi)?.compose(&inv);
    Ok((canon, witness))
}

/// Least `t > 0` with `d | t²`.
pub(crate) fn sqrt_ceiling_divisor(d: &BigInt) -> BigInt {
    let mut d = d.abs();
    let mut t = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= d {
        let mut e = 0u32;
        while d.is_multiple_of(&p) {
            d /= &p;
            e += 1;
        }
        t *= p.pow(e.div_ceil(2));
        p += 1;
    }
    t * d
}

/// Bounded search for `Φ` with `Φ(Γ) = Γ'` in `G_{5,4}`.
pub fn g54_isomorphic_search(a: &UniformSubgroup, b: &UniformSubgroup, bound: u32) -> Result<SearchOutcome> {
    require_algebra(a, "g5_4")?;
    require_algebra(b, "g5_4")?;
    isomorphism_search(a, b, bound)
}
