//! Canonical forms, parameter sets and isomorphism decisions for the catalog lattices.

mod abelian;
mod g52;
mod g54;
mod g56;
mod search;

pub use abelian::{g4xr_construct, g4xr_validate, split_abelian_factor, G4xRParams, SplitResult};
pub use g52::{canon_g52, g52_equiv, g52_lattice, reduce_g52, G52Canonical, G52Params};
pub use g54::{
    a_matrix, b_matrix, canon_g54, g54_isomorphic_search, g54_lattice, s4_hermite_close,
    s4_member, G54Canonical,
};
pub use g56::{canon_g56, g56_equivalent, g56_lattice, s6_member, G56Canonical};
pub use search::{abelianization_torsion, isomorphism_search, AbelianInvariants, SearchOutcome};

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::lattice::UniformSubgroup;
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{RatMatrix, Rational};
use crate::{Error, Result};

/// A Lie algebra automorphism, acting on structure coordinates by matrix multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    algebra: Arc<LieAlgebra>,
    matrix: RatMatrix,
}

impl Automorphism {
    /// Checks invertibility and bracket preservation.
    pub fn new(algebra: Arc<LieAlgebra>, matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != algebra.dim() || matrix.cols() != algebra.dim() {
            return Err(crate::linalg::LinalgError::DimensionMismatch.into());
        }
        if !algebra.is_automorphism(&matrix) {
            return Err(Error::InvalidParams("matrix is not an automorphism".into()));
        }
        Ok(Self { algebra, matrix })
    }

    pub fn identity(algebra: Arc<LieAlgebra>) -> Self {
        let n = algebra.dim();
        Self {
            algebra,
            matrix: RatMatrix::identity(n),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            matrix: self.matrix.inverse().expect("automorphisms are invertible"),
        }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x).expect("dimension checked")
    }

    pub fn apply_lattice(&self, gamma: &UniformSubgroup) -> Result<UniformSubgroup> {
        gamma.map(&self.matrix)
    }

    /// Whether `Φ(Γ) = Γ'`, by mapping generators both ways through membership.
    pub fn maps_onto(&self, gamma: &UniformSubgroup, target: &UniformSubgroup) -> bool {
        self.apply_lattice(gamma).is_ok_and(|img| img.same_group(target))
    }
}

pub fn is_automorphism(algebra: &LieAlgebra, matrix: &RatMatrix) -> Result<bool> {
    if matrix.rows() != algebra.dim() || matrix.cols() != algebra.dim() {
        return Err(crate::linalg::LinalgError::DimensionMismatch.into());
    }
    Ok(algebra.is_automorphism(matrix))
}

/// The automorphism sending each `gens[i]` to `images[i]`, if one exists.
///
/// Iterated brackets of the generators are matched with the same brackets of
/// the images; the result is accepted only if the generators span the algebra
/// and the induced linear map is an automorphism.
pub fn extend_from_generators(
    algebra: &Arc<LieAlgebra>,
    gens: &[Vec<Rational>],
    images: &[Vec<Rational>],
) -> Option<Automorphism> {
    let n = algebra.dim();
    let mut span = Subspace::zero(n);
    let mut words: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    for (g, h) in gens.iter().zip(images) {
        if !span.contains(g) {
            span = span.sum(&Subspace::span(n, [g.clone()]));
            words.push((g.clone(), h.clone()));
        }
    }
    let mut next = 0;
    while next < words.len() && span.dim() < n {
        let (w, wi) = words[next].clone();
        for (g, h) in gens.iter().zip(images) {
            let b = algebra.bracket(g, &w);
            if !span.contains(&b) {
                span = span.sum(&Subspace::span(n, [b.clone()]));
                words.push((b, algebra.bracket(h, &wi)));
            }
        }
        next += 1;
    }
    if span.dim() < n {
        return None;
    }
    let src: Vec<Vec<Rational>> = words.iter().map(|(w, _)| w.clone()).collect();
    let dst: Vec<Vec<Rational>> = words.iter().map(|(_, w)| w.clone()).collect();
    let b = RatMatrix::from_cols(n, &src).ok()?;
    let w = RatMatrix::from_cols(n, &dst).ok()?;
    let phi = &w * &b.inverse()?;
    let ok = algebra.is_automorphism(&phi)
        && gens
            .iter()
            .zip(images)
            .all(|(g, h)| phi.mul_vec(g).ok().as_ref() == Some(h));
    ok.then(|| Automorphism {
        algebra: algebra.clone(),
        matrix: phi,
    })
}

/// Canonical data for the families classified here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalForm {
    G52(G52Canonical),
    G54(G54Canonical),
    G56(G56Canonical),
    G4xR(G4xRParams),
}

fn require_algebra(gamma: &UniformSubgroup, name: &str) -> Result<()> {
    if gamma.algebra().name() != name {
        return Err(Error::Unsupported(gamma.algebra().name().into()));
    }
    if !gamma.is_verified() {
        return Err(Error::NotVerified);
    }
    Ok(())
}

fn span_of(algebra: &LieAlgebra, idx: &[usize]) -> Subspace {
    Subspace::span(algebra.dim(), idx.iter().map(|&i| algebra.basis_vector(i)))
}
