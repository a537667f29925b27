use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::LieAlgebra;
use crate::{Error, Result};

/// Nonzero brackets `[X_i, X_j] = X_k` (1-based) of the named indecomposable algebras.
fn table(name: &str) -> Option<(usize, &'static [(usize, usize, usize, i64)])> {
    Some(match name {
        "g3" => (3, &[(3, 2, 1, 1)]),
        "g4" => (4, &[(4, 3, 2, 1), (4, 2, 1, 1)]),
        "g5_1" => (5, &[(5, 3, 1, 1), (4, 2, 1, 1)]),
        "g5_2" => (5, &[(5, 4, 2, 1), (5, 3, 1, 1)]),
        "g5_3" => (5, &[(5, 4, 2, 1), (5, 2, 1, 1), (4, 3, 1, 1)]),
        "g5_4" => (5, &[(5, 4, 3, 1), (5, 3, 2, 1), (4, 3, 1, 1)]),
        "g5_5" => (5, &[(5, 4, 3, 1), (5, 3, 2, 1), (5, 2, 1, 1)]),
        "g5_6" => (5, &[(5, 4, 3, 1), (5, 3, 2, 1), (5, 2, 1, 1), (4, 3, 1, 1)]),
        _ => return None,
    })
}

/// Names of the catalog entries accepted by [`catalog`], besides `abelian:<n>` and `+` sums.
pub const NAMES: &[&str] = &[
    "g3", "g4", "g5_1", "g5_2", "g5_3", "g5_4", "g5_5", "g5_6", "g3xR2", "g4xR",
];

/// Looks up a catalog algebra by name.
///
/// Accepts `g3`, `g4`, `g5_1`..`g5_6`, `g3xR2`, `g4xR`, `abelian:<n>` and
/// direct sums written `a+b`, whose summands are listed in order.
pub fn catalog(name: &str) -> Result<Arc<LieAlgebra>> {
    build(name.trim()).map(Arc::new)
}

fn build(name: &str) -> Result<LieAlgebra> {
    let unknown = || Error::UnknownAlgebra(name.to_string());
    if let Some((head, tail)) = name.rsplit_once('+') {
        let a = build(head.trim())?;
        let b = build(tail.trim())?;
        return LieAlgebra::direct_sum(name, &a, &b);
    }
    match name {
        "g3xR2" => return LieAlgebra::direct_sum(name, &build("g3")?, &build("abelian:2")?),
        "g4xR" => return LieAlgebra::direct_sum(name, &build("g4")?, &build("abelian:1")?),
        _ => {}
    }
    if let Some(n) = name.strip_prefix("abelian:") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return LieAlgebra::from_brackets(format!("abelian:{n}"), n, &[]);
    }
    let (dim, brackets) = table(name).ok_or_else(unknown)?;
    LieAlgebra::from_brackets(name, dim, brackets)
}

/// The catalog entries exercised by the test suites.
pub fn catalog_entries() -> Vec<Arc<LieAlgebra>> {
    NAMES
        .iter()
        .chain(["abelian:3"].iter())
        .map(|n| catalog(n).expect("catalog entries are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{unit, Subspace};
    use crate::linalg::Rational;
    use alloc::vec;

    fn e(g: &LieAlgebra, i: usize) -> Vec<Rational> {
        unit(g.dim(), i - 1)
    }

    fn span(g: &LieAlgebra, idx: &[usize]) -> Subspace {
        Subspace::span(g.dim(), idx.iter().map(|&i| e(g, i)))
    }

    #[test]
    fn g5_4_brackets() {
        let g = catalog("g5_4").unwrap();
        assert_eq!(g.dim(), 5);
        let mut nonzero = vec![];
        for i in 1..=5 {
            for j in 1..i {
                let b = g.bracket(&e(&g, i), &e(&g, j));
                if b.iter().any(|x| *x != Rational::from_integer(0.into())) {
                    nonzero.push((i, j, b));
                }
            }
        }
        assert_eq!(nonzero, vec![(4, 3, e(&g, 1)), (5, 3, e(&g, 2)), (5, 4, e(&g, 3))]);
    }

    #[test]
    fn steps_are_computed() {
        let steps: Vec<usize> = ["g3", "g4", "g5_1", "g5_2", "g5_3", "g5_4", "g5_5", "g5_6", "g3xR2", "g4xR", "abelian:3"]
            .iter()
            .map(|n| catalog(n).unwrap().step())
            .collect();
        assert_eq!(steps, [2, 3, 2, 2, 3, 3, 4, 4, 2, 3, 1]);
    }

    #[test]
    fn direct_sums() {
        let g = catalog("g4xR").unwrap();
        assert_eq!(g.dim(), 5);
        assert_eq!(g.decomposition(), Some(("g4", 1)));
        assert_eq!(g.center(), span(&g, &[1, 5]));
        assert_eq!(catalog("g3xR2").unwrap().decomposition(), Some(("g3", 2)));
        assert_eq!(catalog("g4+abelian:1").unwrap().c(3, 2, 1), g.c(3, 2, 1));
        assert!(catalog("abelian:3").unwrap().is_abelian());
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(catalog("g6"), Err(Error::UnknownAlgebra(_))));
        assert!(matches!(catalog("abelian:x"), Err(Error::UnknownAlgebra(_))));
        assert!(matches!(catalog("abelian:0"), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn series_and_ideals() {
        let g = catalog("g5_4").unwrap();
        let lcs = g.lower_central_series();
        let dims: Vec<usize> = lcs.iter().map(Subspace::dim).collect();
        assert_eq!(dims, [5, 3, 2, 0]);
        assert_eq!(g.center(), span(&g, &[1, 2]));
        assert_eq!(g.derived(), span(&g, &[1, 2, 3]));

        let g6 = catalog("g5_6").unwrap();
        let dims: Vec<usize> = g6.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, [5, 3, 2, 1, 0]);
        let asc: Vec<usize> = g6.ascending_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(asc, [1, 2, 3, 5]);

        let g2 = catalog("g5_2").unwrap();
        assert_eq!(g2.ascending_central_series()[0], span(&g2, &[1, 2]));
        assert_eq!(g2.derived(), span(&g2, &[1, 2]));
        let a = catalog("abelian:4").unwrap();
        assert_eq!(a.ascending_central_series(), vec![Subspace::full(4)]);
        assert!(a.derived().is_zero());
    }

    #[test]
    fn abelian_factor_dims() {
        assert_eq!(catalog("abelian:3").unwrap().abelian_factor_dim(), 3);
        assert_eq!(catalog("g4xR").unwrap().abelian_factor_dim(), 1);
        assert_eq!(catalog("g3xR2").unwrap().abelian_factor_dim(), 2);
        assert_eq!(catalog("g5_2").unwrap().abelian_factor_dim(), 0);
    }

    #[test]
    fn centralizers_and_radicals() {
        let g = catalog("g5_2").unwrap();
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        let l1 = vec![one.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()];
        assert_eq!(g.radical_of_form(&l1), span(&g, &[1, 2, 4]));
        let l12 = vec![one.clone(), one.clone(), zero.clone(), zero.clone(), zero.clone()];
        let mut x3_minus_x4 = e(&g, 3);
        x3_minus_x4[3] = -one.clone();
        let rad = Subspace::span(5, [e(&g, 1), e(&g, 2), x3_minus_x4]);
        assert_eq!(g.radical_of_form(&l12), rad);
        assert_eq!(g.centralizer(&rad), span(&g, &[1, 2, 3, 4]));
        assert_eq!(g.radical_of_form(&[zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero]), Subspace::full(5));

        let g6 = catalog("g5_6").unwrap();
        assert_eq!(g6.centralizer(&span(&g6, &[1, 2])), span(&g6, &[1, 2, 3, 4]));
        assert_eq!(g6.centralizer(&Subspace::zero(5)), Subspace::full(5));
    }

    #[test]
    fn automorphisms() {
        use crate::linalg::RatMatrix;
        let g6 = catalog("g5_6").unwrap();
        assert!(g6.is_automorphism(&RatMatrix::identity(5)));
        assert!(g6.is_automorphism(&RatMatrix::from_i64_rows(&[
            &[32, 0, 0, 0, 0],
            &[0, 16, 0, 0, 0],
            &[0, 0, 8, 0, 0],
            &[0, 0, 0, 4, 0],
            &[0, 0, 0, 0, 2],
        ])));
        let g2 = catalog("g5_2").unwrap();
        let swap = RatMatrix::from_i64_rows(&[
            &[0, 1, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1],
        ]);
        assert!(g2.is_automorphism(&swap));
        assert!(!g2.is_automorphism(&RatMatrix::diagonal(&[
            Rational::from_integer(1.into()),
            Rational::from_integer(1.into()),
            Rational::from_integer(2.into()),
            Rational::from_integer(1.into()),
            Rational::from_integer(1.into()),
        ])));
    }
}
