//! Nilpotent Lie algebras given by structure constants.

mod catalog;
mod subspace;

pub use catalog::{catalog, catalog_entries, NAMES};
pub use subspace::Subspace;
pub(crate) use subspace::unit;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::{kernel, RatMatrix, Rational};
use crate::{Error, Result};

/// A real nilpotent Lie algebra with rational structure constants
/// `[X_i, X_j] = Σ_k c_ijk X_k` in a fixed basis `X_1..X_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    constants: Vec<Rational>,
    step: usize,
    decomposition: Option<(String, usize)>,
}

impl LieAlgebra {
    /// Validates antisymmetry, the Jacobi identity and nilpotency.
    ///
    /// `constants[(i * dim + j) * dim + k]` is the coefficient of `X_k` in `[X_i, X_j]`.
    pub fn new(name: impl Into<String>, dim: usize, constants: Vec<Rational>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::InvalidStructure("the expected constant count"));
        }
        let mut g = Self {
            name: name.into(),
            dim,
            constants,
            step: 0,
            decomposition: None,
        };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if *g.c(i, j, k) != -g.c(j, i, k).clone() {
                        return Err(Error::InvalidStructure("antisymmetry"));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let (ei, ej, ek) = (unit(dim, i), unit(dim, j), unit(dim, k));
                    let a = g.bracket(&g.bracket(&ei, &ej), &ek);
                    let b = g.bracket(&g.bracket(&ej, &ek), &ei);
                    let c = g.bracket(&g.bracket(&ek, &ei), &ej);
                    if (0..dim).any(|t| !(a[t].clone() + &b[t] + &c[t]).is_zero()) {
                        return Err(Error::InvalidStructure("the Jacobi identity"));
                    }
                }
            }
        }
        let series = g.lower_central_series();
        if !series.last().map_or(true, Subspace::is_zero) {
            return Err(Error::InvalidStructure("nilpotency"));
        }
        g.step = series.len().saturating_sub(1).max(1);
        Ok(g)
    }

    /// Builds an algebra from brackets `[X_i, X_j] = coeff · X_k`, indices 1-based.
    pub fn from_brackets(
        name: impl Into<String>,
        dim: usize,
        brackets: &[(usize, usize, usize, i64)],
    ) -> Result<Self> {
        let mut c: Vec<Rational> = (0..dim * dim * dim).map(|_| Rational::zero()).collect();
        for &(i, j, k, coeff) in brackets {
            if i == 0 || j == 0 || k == 0 || i > dim || j > dim || k > dim {
                return Err(Error::InvalidStructure("index bounds"));
            }
            let (i, j, k) = (i - 1, j - 1, k - 1);
            c[(i * dim + j) * dim + k] += Rational::from_integer(coeff.into());
            c[(j * dim + i) * dim + k] -= Rational::from_integer(coeff.into());
        }
        Self::new(name, dim, c)
    }

    /// Direct sum with the second summand's basis appended after the first.
    pub fn direct_sum(name: impl Into<String>, a: &LieAlgebra, b: &LieAlgebra) -> Result<Self> {
        let n = a.dim + b.dim;
        let mut c: Vec<Rational> = (0..n * n * n).map(|_| Rational::zero()).collect();
        for (off, g) in [(0, a), (a.dim, b)] {
            for i in 0..g.dim {
                for j in 0..g.dim {
                    for k in 0..g.dim {
                        c[((off + i) * n + off + j) * n + off + k] = g.c(i, j, k).clone();
                    }
                }
            }
        }
        let mut sum = Self::new(name, n, c)?;
        sum.decomposition = match (a.abelian_rank(), b.abelian_rank()) {
            (_, Some(r)) if a.step > 1 => Some((a.nonabelian_name().into(), a.abelian_part() + r)),
            (Some(p), Some(r)) => Some((String::new(), p + r)),
            _ => None,
        };
        Ok(sum)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Least `k` with the `(k+1)`-th lower central term zero.
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// `(N, r)` when the algebra was built as `N ⊕ R^r` with the abelian block last.
    pub fn decomposition(&self) -> Option<(&str, usize)> {
        self.decomposition.as_ref().map(|(n, r)| (n.as_str(), *r))
    }

    fn abelian_rank(&self) -> Option<usize> {
        self.is_abelian().then_some(self.dim)
    }

    fn nonabelian_name(&self) -> &str {
        self.decomposition.as_ref().map_or(&self.name, |(n, _)| n)
    }

    fn abelian_part(&self) -> usize {
        self.decomposition.as_ref().map_or(0, |(_, r)| *r)
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        unit(self.dim, i)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out: Vec<Rational> = (0..n).map(|_| Rational::zero()).collect();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let xy = x[i].clone() * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += xy.clone() * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `Y ↦ [x, Y]`.
    pub fn ad(&self, x: &[Rational]) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| self.bracket(x, &unit(self.dim, j)))
            .collect();
        RatMatrix::from_cols(self.dim, &cols).expect("bracket preserves dimension")
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Rational>) -> Result<LieElement> {
        LieElement::new(self.clone(), coords)
    }

    /// `𝒞^1 = 𝔤, 𝒞^{p+1} = [𝔤, 𝒞^p]`, ending with the zero subspace.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut series = alloc::vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_space(&Subspace::full(self.dim), last);
            if next.dim() == last.dim() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Span of all `[x, y]` with `x ∈ a`, `y ∈ b`.
    pub fn bracket_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim, vs)
    }

    pub fn derived(&self) -> Subspace {
        self.bracket_space(&Subspace::full(self.dim), &Subspace::full(self.dim))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim))
    }

    /// `{x : [x, h] = 0}`, the common kernel of the functionals `x ↦ ⟨e_i*, [x, h_j]⟩`.
    pub fn centralizer(&self, h: &Subspace) -> Subspace {
        let blocks: Vec<RatMatrix> = h.basis().iter().map(|y| self.ad(y)).collect();
        Subspace::span(self.dim, kernel(&stack(self.dim, &blocks)))
    }

    /// Pullbacks of successive centers, from `𝔷(𝔤)` up to `𝔤`.
    pub fn ascending_central_series(&self) -> Vec<Subspace> {
        let mut series = alloc::vec![self.center()];
        while series.last().expect("nonempty").dim() < self.dim {
            let q = series.last().expect("nonempty").annihilator();
            let blocks: Vec<RatMatrix> = (0..self.dim)
                .map(|j| q.checked_mul(&self.ad(&unit(self.dim, j))).expect("square ad"))
                .collect();
            let next = Subspace::span(self.dim, kernel(&stack(self.dim, &blocks)));
            if next.dim() == series.last().expect("nonempty").dim() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Maximal dimension of an abelian direct factor: `dim 𝔷 − dim(𝔷 ∩ 𝒟)`.
    pub fn abelian_factor_dim(&self) -> usize {
        let z = self.center();
        z.dim() - z.intersect(&self.derived()).dim()
    }

    /// Radical `{x : l([x, y]) = 0 for all y}` of the form `B_l`.
    pub fn radical_of_form(&self, l: &[Rational]) -> Subspace {
        let rows: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| {
                let adj = self.ad(&unit(self.dim, j));
                (0..self.dim)
                    .map(|c| (0..self.dim).fold(Rational::zero(), |s, r| s + l[r].clone() * adj.get(r, c)))
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(rows).expect("rows share a length");
        Subspace::span(self.dim, kernel(&m))
    }

    pub fn is_subalgebra(&self, h: &Subspace) -> bool {
        h.contains_subspace(&self.bracket_space(h, h))
    }

    pub fn is_ideal(&self, h: &Subspace) -> bool {
        h.contains_subspace(&self.bracket_space(&Subspace::full(self.dim), h))
    }

    /// Whether `Φ` is invertible and `Φ[X_i, X_j] = [Φ X_i, Φ X_j]` for all basis pairs.
    pub fn is_automorphism(&self, phi: &RatMatrix) -> bool {
        if phi.rows() != self.dim || phi.cols() != self.dim || phi.inverse().is_none() {
            return false;
        }
        let cols = phi.columns();
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| {
                let lhs = phi
                    .mul_vec(&self.bracket(&unit(self.dim, i), &unit(self.dim, j)))
                    .expect("square");
                lhs == self.bracket(&cols[i], &cols[j])
            })
        })
    }
}

fn stack(cols: usize, blocks: &[RatMatrix]) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = blocks.iter().flat_map(RatMatrix::to_rows).collect();
    if rows.is_empty() {
        RatMatrix::zeros(0, cols)
    } else {
        RatMatrix::from_rows(rows).expect("blocks share a column count")
    }
}

/// An element of a catalog algebra in structure-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    algebra: Arc<LieAlgebra>,
    coords: Vec<Rational>,
}

impl LieElement {
    pub fn new(algebra: Arc<LieAlgebra>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(crate::linalg::LinalgError::DimensionMismatch.into());
        }
        Ok(Self { algebra, coords })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        if self.algebra.name() != other.algebra.name() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self {
            algebra: self.algebra.clone(),
            coords: self.algebra.bracket(&self.coords, &other.coords),
        })
    }
}
