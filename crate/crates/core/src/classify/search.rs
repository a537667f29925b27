use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{extend_from_generators, Automorphism};
use crate::group::bch;
use crate::lattice::{Flag, Table, UniformSubgroup};
use crate::lie::Subspace;
use crate::linalg::{snf, IntMatrix, RatMatrix, Rational};
use crate::{Error, Result};

/// Result of a bounded isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// An automorphism mapping the first lattice onto the second.
    Found(Automorphism),
    /// An isomorphism invariant differs.
    NotIsomorphic,
    /// Nothing found within the bound; not a proof of non-isomorphism.
    NotFoundWithinBound,
}

/// `Γ^{ab} ≅ ℤ^rank ⊕ ⊕ ℤ/t_i` with each `t_i > 1` dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Invariants of `Γ/[Γ, Γ]`; requires an abelian derived algebra.
pub fn abelianization_torsion(gamma: &UniformSubgroup) -> Result<AbelianInvariants> {
    if !gamma.is_verified() {
        return Err(Error::NotVerified);
    }
    let g = gamma.algebra();
    let n = g.dim();
    let d = g.derived();
    if !g.bracket_space(&d, &d).is_zero() {
        return Err(Error::Unsupported(g.name().into()));
    }
    if d.is_zero() {
        return Ok(AbelianInvariants { rank: n, torsion: Vec::new() });
    }
    let gens = gamma.vectors();
    let neg = |x: &[Rational]| -> Vec<Rational> { x.iter().map(|v| -v.clone()).collect() };
    let flag = Flag::through(g, core::slice::from_ref(&d), true)?;
    let mut table = Table::new(g, &flag);
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[..i] {
            table.sift(&bch(g, &bch(g, a, b), &bch(g, &neg(a), &neg(b))));
        }
    }
    table.close(gens);
    let commutators = table.entries();

    let lattice = gamma.intersect_with_rational_subgroup(&d)?;
    let basis = RatMatrix::from_cols(n, &lattice)?;
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for c in &commutators {
        let x = crate::linalg::solve_rational(&basis, c)?.ok_or(Error::NotRational)?;
        if !x.iter().all(Rational::is_integer) {
            return Err(Error::NotVerified);
        }
        cols.push(x.iter().map(Rational::to_integer).collect());
    }
    let k = d.dim();
    let m = if cols.is_empty() {
        IntMatrix::zeros(k, 1)
    } else {
        IntMatrix::from_cols(k, &cols)?
    };
    let divisors = snf(&m).divisors;
    Ok(AbelianInvariants {
        rank: n - k + (k - divisors.len()),
        torsion: divisors.into_iter().filter(|t| !t.is_one()).collect(),
    })
}

/// Searches for `Φ` with `Φ(Γ) = Γ'`.
///
/// Both bases are refined through `𝔷 ∩ 𝒟 ⊂ 𝒟`. The images of the generators
/// outside `𝒟` are enumerated as elements of `Γ'` whose Malcev coordinates
/// lie in `[-bound, bound]`, with a unimodular top block and zero coordinates
/// on `𝔷 ∩ 𝒟` (any isomorphism can be corrected by a central automorphism to
/// satisfy this). Each candidate is extended to an automorphism and checked
/// by two-way generator membership. Differing abelianization invariants give
/// a definite negative answer.
pub fn isomorphism_search(a: &UniformSubgroup, b: &UniformSubgroup, bound: u32) -> Result<SearchOutcome> {
    if !a.is_verified() || !b.is_verified() {
        return Err(Error::NotVerified);
    }
    if a.algebra().name() != b.algebra().name() {
        return Err(Error::AlgebraMismatch);
    }
    let g = a.algebra().clone();
    let n = g.dim();
    let d = g.derived();
    if d.is_zero() {
        let m = &b.basis().matrix() * &a.basis().matrix().inverse().expect("basis");
        return Ok(SearchOutcome::Found(Automorphism::new(g, m)?));
    }
    if let (Ok(x), Ok(y)) = (abelianization_torsion(a), abelianization_torsion(b)) {
        if x != y {
            return Ok(SearchOutcome::NotIsomorphic);
        }
    }
    let zd = g.center().intersect(&d);
    let chain: Vec<Subspace> = if zd.is_zero() || zd.dim() == d.dim() {
        alloc::vec![d.clone()]
    } else {
        alloc::vec![zd.clone(), d.clone()]
    };
    let ra = a.basis_through_ideals(&chain)?;
    let rb = b.basis_through_ideals(&chain)?;
    let (p, q) = (zd.dim(), d.dim());
    let k = n - q;
    let tops: Vec<Vec<Rational>> = ra.vectors()[q..].to_vec();
    let bound = i64::from(bound);
    let range: Vec<i64> = (-bound..=bound).collect();

    let image = |top: &[i64], low: &[i64]| -> Vec<Rational> {
        let mut t: Vec<Rational> = (0..n).map(|_| Rational::from_integer(0.into())).collect();
        for (i, v) in low.iter().enumerate() {
            t[p + i] = Rational::from_integer((*v).into());
        }
        for (i, v) in top.iter().enumerate() {
            t[q + i] = Rational::from_integer((*v).into());
        }
        rb.basis().from_malcev(&t).expect("length").log().to_vec()
    };

    for entries in tuples(&range, k * k) {
        let amat = IntMatrix::new(k, k, entries.iter().map(|&x| BigInt::from(x)).collect())?;
        if !amat.determinant()?.abs().is_one() {
            continue;
        }
        let cols: Vec<Vec<i64>> = (0..k).map(|c| (0..k).map(|r| entries[r * k + c]).collect()).collect();
        let zeros = alloc::vec![0i64; q - p];
        let probe: Vec<Vec<Rational>> = cols.iter().map(|c| image(c, &zeros)).collect();
        if extend_from_generators(&g, &tops, &probe).is_none() {
            continue;
        }
        for low in tuples(&range, k * (q - p)) {
            let imgs: Vec<Vec<Rational>> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| image(c, &low[i * (q - p)..(i + 1) * (q - p)]))
                .collect();
            if let Some(phi) = extend_from_generators(&g, &tops, &imgs) {
                if phi.maps_onto(a, b) {
                    return Ok(SearchOutcome::Found(phi));
                }
            }
        }
    }
    Ok(SearchOutcome::NotFoundWithinBound)
}

/// All `len`-tuples over `values`, in lexicographic order.
fn tuples(values: &[i64], len: usize) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total = values.len().checked_pow(len as u32).expect("search space fits in usize");
    (0..total).map(move |mut idx| {
        let mut out = alloc::vec![0i64; len];
        for slot in out.iter_mut().rev() {
            *slot = values[idx % values.len()];
            idx /= values.len();
        }
        out
    })
}
