//! Uniform subgroups `Γ = exp(ℤε_1)···exp(ℤε_n)` given by a Malcev basis.

mod table;

pub(crate) use table::{Flag, Table};

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{bch, exp_ad_apply, is_integral, GroupElement, MalcevBasis};
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{RatMatrix, Rational};
use crate::{Error, Result};

/// Seed of the randomized product audit in [`UniformSubgroup::verify_closure`].
pub const AUDIT_SEED: u64 = 0x5eed_1a77;

const AUDIT_SAMPLES: usize = 100;
const AUDIT_RANGE: i64 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformSubgroup {
    basis: MalcevBasis,
    verified: bool,
}

impl UniformSubgroup {
    /// A candidate lattice; `basis` must be a weak Malcev basis of the algebra.
    pub fn new(algebra: Arc<LieAlgebra>, basis: Vec<Vec<Rational>>) -> Result<Self> {
        Ok(Self {
            basis: MalcevBasis::new(algebra, basis)?,
            verified: false,
        })
    }

    /// The lattice spanned by the structure basis `X_1..X_n`.
    pub fn standard(algebra: Arc<LieAlgebra>) -> Result<Self> {
        let basis = (0..algebra.dim()).map(|i| algebra.basis_vector(i)).collect();
        Self::new(algebra, basis)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        self.basis.algebra()
    }

    pub fn basis(&self) -> &MalcevBasis {
        &self.basis
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        self.basis.vectors()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        Ok(is_integral(&self.basis.malcev_coords(g)?))
    }

    pub(crate) fn contains_log(&self, x: &[Rational]) -> bool {
        is_integral(&self.basis.coords_of_log(x))
    }

    /// Decides whether the product set is a group.
    ///
    /// The decision is exact: the generators `exp ε_k` are collected into an
    /// induced polycyclic sequence along the flag of prefix spans, and the
    /// product set is closed iff every level of the generated group is `ℤ`.
    /// The pairwise generator checks and a seeded audit of random products
    /// run alongside as independent certificates.
    pub fn verify_closure(&self) -> bool {
        self.verify_closure_with_seed(AUDIT_SEED)
    }

    pub fn verify_closure_with_seed(&self, seed: u64) -> bool {
        self.generated_levels_are_integral() && self.pairwise_closed() && self.audit(seed)
    }

    /// Returns the lattice marked as verified, or `NotVerified` if it is not a group.
    pub fn into_verified(self) -> Result<Self> {
        self.into_verified_with_seed(AUDIT_SEED)
    }

    pub fn into_verified_with_seed(mut self, seed: u64) -> Result<Self> {
        if self.verify_closure_with_seed(seed) {
            self.verified = true;
            Ok(self)
        } else {
            Err(Error::NotVerified)
        }
    }

    fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::NotVerified)
        }
    }

    fn generated_levels_are_integral(&self) -> bool {
        let g = self.algebra();
        let flag = Flag::from_basis(self.basis.matrix().inverse().expect("basis invertible"));
        let mut table = Table::new(g, &flag);
        for e in self.vectors() {
            table.sift(e);
        }
        table.close(&[]);
        table.leads().iter().all(|l| l.as_ref().is_some_and(One::is_one))
    }

    fn pairwise_closed(&self) -> bool {
        let g = self.algebra();
        let es = self.vectors();
        let neg = |x: &[Rational]| -> Vec<Rational> { x.iter().map(|v| -v.clone()).collect() };
        (0..es.len()).all(|i| {
            (i + 1..es.len()).all(|j| {
                self.contains_log(&exp_ad_apply(g, &es[j], &es[i]))
                    && self.contains_log(&exp_ad_apply(g, &es[j], &neg(&es[i])))
                    && self.contains_log(&bch(g, &es[i], &es[j]))
            })
        })
    }

    fn audit(&self, seed: u64) -> bool {
        let n = self.algebra().dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
            let t: Vec<Rational> = (0..n)
                .map(|_| Rational::from_integer(rng.gen_range(-AUDIT_RANGE..=AUDIT_RANGE).into()))
                .collect();
            self.basis.log_of_coords(&t)
        };
        (0..AUDIT_SAMPLES).all(|_| {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            let inv: Vec<Rational> = a.iter().map(|v| -v.clone()).collect();
            self.contains_log(&bch(self.algebra(), &a, &b)) && self.contains_log(&inv)
        })
    }

    /// A basis `δ_1..δ_k` with `Γ ∩ exp 𝔥 = exp(ℤδ_1)···exp(ℤδ_k)`.
    pub fn intersect_with_rational_subgroup(&self, h: &Subspace) -> Result<Vec<Vec<Rational>>> {
        self.require_verified()?;
        let g = self.algebra();
        if !g.is_subalgebra(h) {
            return Err(Error::NotSubalgebra);
        }
        let strong = g.is_ideal(h);
        let flag = Flag::through(g, core::slice::from_ref(h), strong)?;
        let table = self.collect(&flag, &[]);
        table.entries_below(h.dim()).ok_or(Error::NotRational)
    }

    /// Sifts the generators through `flag` and closes the table.
    pub(crate) fn collect<'a>(&'a self, flag: &'a Flag, conjugators: &[Vec<Rational>]) -> Table<'a> {
        let mut table = Table::new(self.algebra(), flag);
        for e in self.vectors() {
            table.sift(e);
        }
        table.close(conjugators);
        table.normalize();
        table
    }

    /// The same group with a basis passing through each ideal of `chain`.
    pub fn basis_through_ideals(&self, chain: &[Subspace]) -> Result<Self> {
        self.require_verified()?;
        let flag = Flag::through(self.algebra(), chain, true)?;
        let table = self.collect(&flag, &[]);
        if !table.is_full() {
            return Err(Error::NotRational);
        }
        let out = Self::new(self.algebra().clone(), table.entries())?;
        out.into_verified()
    }

    /// Whether `𝔥` has a basis with rational coordinates in the basis of `log Γ`.
    ///
    /// Every subspace representable here has rational coordinates, so this
    /// reduces to solvability of the coordinate system.
    pub fn is_rational_subspace(&self, h: &Subspace) -> Result<bool> {
        self.require_verified()?;
        let m = self.basis.matrix();
        Ok(h
            .basis()
            .iter()
            .all(|v| crate::linalg::solve_rational(&m, v).ok().flatten().is_some()))
    }

    /// Image under an automorphism `Φ` of the Lie algebra.
    pub fn map(&self, phi: &RatMatrix) -> Result<Self> {
        let basis = self
            .vectors()
            .iter()
            .map(|v| phi.mul_vec(v))
            .collect::<core::result::Result<Vec<_>, _>>()?;
        Ok(Self {
            basis: MalcevBasis::new(self.algebra().clone(), basis)?,
            verified: self.verified,
        })
    }

    /// Whether each generator of either group lies in the other.
    pub fn same_group(&self, other: &Self) -> bool {
        self.algebra().name() == other.algebra().name()
            && self.vectors().iter().all(|e| other.contains_log(e))
            && other.vectors().iter().all(|e| self.contains_log(e))
    }
}
