//! Induced polycyclic sequences relative to a flag of subalgebras.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::group::{bch, exp_ad_apply};
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{RatMatrix, Rational};
use crate::{Error, Result};

/// A complete flag `0 = F_0 ⊂ F_1 ⊂ … ⊂ F_n = 𝔤` with each `F_k` a subalgebra.
#[derive(Debug, Clone)]
pub(crate) struct Flag {
    inverse: RatMatrix,
    /// Every `F_k` is an ideal of `𝔤`.
    strong: bool,
}

impl Flag {
    /// A flag passing through every member of `chain`.
    ///
    /// With `strong`, each step `x` satisfies `[x, 𝔤] ⊆ F_{k-1}` and the chain
    /// must consist of ideals; otherwise `[x, F_{k-1}] ⊆ F_{k-1}` and the chain
    /// must consist of subalgebras.
    pub(crate) fn through(g: &LieAlgebra, chain: &[Subspace], strong: bool) -> Result<Self> {
        let n = g.dim();
        let full = Subspace::full(n);
        let mut targets: Vec<&Subspace> = chain.iter().collect();
        if targets.last().map_or(true, |s| s.dim() < n) {
            targets.push(&full);
        }
        let mut current = Subspace::zero(n);
        let mut vectors = Vec::with_capacity(n);
        for target in targets {
            if !target.contains_subspace(&current) {
                return Err(if strong { Error::NotIdealChain } else { Error::NotSubalgebra });
            }
            if strong && !g.is_ideal(target) {
                return Err(Error::NotIdealChain);
            }
            if !strong && !g.is_subalgebra(target) {
                return Err(Error::NotSubalgebra);
            }
            while current.dim() < target.dim() {
                let x = next_step(g, &current, target, strong).ok_or(if strong {
                    Error::NotIdealChain
                } else {
                    Error::NotSubalgebra
                })?;
                current = current.sum(&Subspace::span(n, [x.clone()]));
                vectors.push(x);
            }
        }
        let inverse = RatMatrix::from_cols(n, &vectors)?
            .inverse()
            .expect("flag vectors are independent");
        Ok(Self { inverse, strong })
    }

    /// The flag whose prefixes are spanned by the given basis (assumed weak Malcev).
    pub(crate) fn from_basis(inverse: RatMatrix) -> Self {
        Self {
            inverse,
            strong: false,
        }
    }

    pub(crate) fn coords(&self, x: &[Rational]) -> Vec<Rational> {
        self.inverse.mul_vec(x).expect("square")
    }

    /// Highest level with a nonzero coordinate, and that coordinate.
    pub(crate) fn lead(&self, x: &[Rational]) -> Option<(usize, Rational)> {
        let c = self.coords(x);
        (0..c.len()).rev().find(|&k| !c[k].is_zero()).map(|k| (k, c[k].clone()))
    }
}

/// Picks the first kernel vector of the step condition lying outside `current`.
fn next_step(
    g: &LieAlgebra,
    current: &Subspace,
    target: &Subspace,
    strong: bool,
) -> Option<Vec<Rational>> {
    let n = g.dim();
    let q = current.annihilator();
    let t = target.matrix();
    let probes: Vec<Vec<Rational>> = if strong {
        (0..n).map(|j| g.basis_vector(j)).collect()
    } else {
        current.basis().to_vec()
    };
    // rows: Q · [T a, p] = 0 for every probe p, linear in the coefficients a.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in &probes {
        let cols: Vec<Vec<Rational>> = t
            .columns()
            .iter()
            .map(|c| q.mul_vec(&g.bracket(c, p)).expect("dims"))
            .collect();
        for r in 0..q.rows() {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let candidates = if rows.is_empty() {
        (0..target.dim()).map(|i| crate::lie::unit(target.dim(), i)).collect()
    } else {
        crate::linalg::kernel(&RatMatrix::from_rows(rows).expect("rows share a length"))
    };
    candidates
        .into_iter()
        .map(|a| primitive(t.mul_vec(&a).expect("dims")))
        .find(|x| !current.contains(x))
}

/// Scales to a primitive integer vector whose last nonzero entry is positive.
fn primitive(x: Vec<Rational>) -> Vec<Rational> {
    use num_integer::Integer;
    let den = x.iter().fold(num_bigint::BigInt::from(1), |l, v| l.lcm(v.denom()));
    let ints: Vec<num_bigint::BigInt> = x.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(num_bigint::BigInt::from(0), |g, v| g.gcd(v));
    if ints.iter().rev().find(|v| !v.is_zero()).is_some_and(Signed::is_negative) {
        g = -g;
    }
    if g.is_zero() {
        return x;
    }
    ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect()
}

/// Table of group elements (as logarithms) indexed by flag level.
#[derive(Debug, Clone)]
pub(crate) struct Table<'a> {
    g: &'a LieAlgebra,
    flag: &'a Flag,
    slots: Vec<Option<(Vec<Rational>, Rational)>>,
}

impl<'a> Table<'a> {
    pub(crate) fn new(g: &'a LieAlgebra, flag: &'a Flag) -> Self {
        Self {
            g,
            flag,
            slots: (0..g.dim()).map(|_| None).collect(),
        }
    }

    fn power(x: &[Rational], k: &Rational) -> Vec<Rational> {
        x.iter().map(|v| v.clone() * k).collect()
    }

    /// Reduces `x` through the table; inserts remainders. Returns whether the table changed.
    pub(crate) fn sift(&mut self, x: &[Rational]) -> bool {
        let mut x = x.to_vec();
        let mut changed = false;
        while let Some((k, lead)) = self.flag.lead(&x) {
            match &self.slots[k] {
                None => {
                    let (x, lead) = if lead.is_negative() {
                        (Self::power(&x, &-Rational::from_integer(1.into())), -lead)
                    } else {
                        (x, lead)
                    };
                    self.slots[k] = Some((x, lead));
                    return true;
                }
                Some((t, lt)) => {
                    let q = (lead.clone() / lt).floor();
                    let r = lead - q.clone() * lt;
                    let next = bch(self.g, &x, &Self::power(t, &-q));
                    if r.is_zero() {
                        x = next;
                    } else {
                        let old = self.slots[k].replace((next, r)).expect("slot filled");
                        x = old.0;
                        changed = true;
                    }
                }
            }
        }
        changed
    }

    /// Whether `x` reduces to the identity without changing the table.
    pub(crate) fn reduces(&self, x: &[Rational]) -> bool {
        let mut x = x.to_vec();
        while let Some((k, lead)) = self.flag.lead(&x) {
            let Some((t, lt)) = &self.slots[k] else {
                return false;
            };
            let q = lead / lt;
            if !q.is_integer() {
                return false;
            }
            x = bch(self.g, &x, &Self::power(t, &-q));
        }
        true
    }

    /// Sifts until the entries form an induced polycyclic sequence of the group
    /// they generate, additionally normalized by `conjugators` when given.
    pub(crate) fn close(&mut self, conjugators: &[Vec<Rational>]) {
        loop {
            let entries = self.entries_with_levels();
            let mut changed = false;
            'outer: for (ka, a) in &entries {
                for (kb, b) in &entries {
                    if ka <= kb {
                        continue;
                    }
                    for s in [a.clone(), Self::power(a, &-Rational::from_integer(1.into()))] {
                        let c = exp_ad_apply(self.g, &s, b);
                        if !self.reduces(&c) {
                            self.sift(&c);
                            changed = true;
                            break 'outer;
                        }
                    }
                }
                for s in conjugators {
                    for s in [s.clone(), Self::power(s, &-Rational::from_integer(1.into()))] {
                        let c = exp_ad_apply(self.g, &s, a);
                        if !self.reduces(&c) {
                            self.sift(&c);
                            changed = true;
                            break 'outer;
                        }
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn entries_with_levels(&self) -> Vec<(usize, Vec<Rational>)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(k, s)| s.as_ref().map(|(x, _)| (k, x.clone())))
            .collect()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    /// Leads of the filled slots, `None` for empty ones.
    pub(crate) fn leads(&self) -> Vec<Option<Rational>> {
        self.slots.iter().map(|s| s.as_ref().map(|(_, l)| l.clone())).collect()
    }

    /// Reduces each entry by the deeper ones so its flag coordinates lie in `[0, lead)`.
    /// Only meaningful for strong flags, where deeper entries act centrally on each level.
    pub(crate) fn normalize(&mut self) {
        if !self.flag.strong {
            return;
        }
        for d in 1..self.slots.len() {
            let Some((mut x, lead)) = self.slots[d].clone() else {
                continue;
            };
            for j in (0..d).rev() {
                let Some((t, lt)) = &self.slots[j] else {
                    continue;
                };
                let cj = self.flag.coords(&x)[j].clone();
                let q = (cj / lt).floor();
                if !q.is_zero() {
                    x = bch(self.g, &x, &Self::power(t, &-q));
                }
            }
            self.slots[d] = Some((x, lead));
        }
    }

    /// Logarithms of the filled entries, deepest first.
    pub(crate) fn entries(&self) -> Vec<Vec<Rational>> {
        self.slots.iter().flatten().map(|(x, _)| x.clone()).collect()
    }

    /// Entries strictly below `level`, deepest first; `None` if any slot there is empty.
    pub(crate) fn entries_below(&self, level: usize) -> Option<Vec<Vec<Rational>>> {
        self.slots[..level]
            .iter()
            .map(|s| s.as_ref().map(|(x, _)| x.clone()))
            .collect()
    }
}
