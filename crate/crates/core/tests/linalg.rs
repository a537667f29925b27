use nillat_core::linalg::{hnf_int, int, kernel, rank, rat, snf, solve_rational, IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn int_matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(lo..=hi, rows * cols)
        .prop_map(move |v| IntMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn minor(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let k = rows.len();
    let m = IntMatrix::new(
        k,
        k,
        rows.iter().flat_map(|&r| cols.iter().map(move |&c| a.get(r, c).clone())).collect(),
    )
    .unwrap();
    m.determinant().unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Elementary divisors from gcds of k×k minors.
fn determinantal_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=a.rows().min(a.cols()) {
        let g = subsets(a.rows(), k)
            .iter()
            .flat_map(|r| subsets(a.cols(), k).into_iter().map(move |c| (r.clone(), c)))
            .fold(BigInt::zero(), |g, (r, c)| g.gcd(&minor(a, &r, &c)));
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// A product of `ops` elementary column operations with coefficients in [-3, 3].
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..=20).prop_map(move |ops| {
        let mut t = IntMatrix::identity(n);
        for (i, j, c, swap) in ops {
            if swap {
                t.swap_cols(i, j);
            } else if i != j {
                t.add_col_multiple(i, j, &int(c));
            }
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn snf_factorization(a in int_matrix(4, 4, -9, 9)) {
        let s = snf(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.s.clone());
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        for w in s.divisors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        for (k, d) in s.divisors.iter().enumerate() {
            prop_assert!(d.is_positive());
            prop_assert_eq!(s.s.get(k, k), d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_matches_determinantal_divisors(a in int_matrix(3, 3, -3, 3)) {
        prop_assert_eq!(snf(&a).divisors, determinantal_divisors(&a));
    }

    #[test]
    fn snf_rectangular_matches_determinantal_divisors(a in int_matrix(2, 4, -5, 5)) {
        prop_assert_eq!(snf(&a).divisors, determinantal_divisors(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn hnf_is_invariant_under_column_operations(a in int_matrix(4, 4, -9, 9), t in unimodular(4)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        prop_assert!(t.is_unimodular());
        let h = hnf_int(&a).unwrap();
        prop_assert_eq!(&a * &h.t, h.h.clone());
        prop_assert!(h.t.is_unimodular());
        prop_assert_eq!(hnf_int(&(&a * &t)).unwrap().h, h.h);
    }

    #[test]
    fn hnf_shape(a in int_matrix(3, 3, -9, 9)) {
        prop_assume!(!a.determinant().unwrap().is_zero());
        let h = hnf_int(&a).unwrap().h;
        for i in 0..3 {
            prop_assert!(h.get(i, i).is_positive());
            for j in 0..i {
                prop_assert!(h.get(i, j).is_zero());
            }
            for j in i + 1..3 {
                prop_assert!(!h.get(i, j).is_negative() && h.get(i, j) < h.get(i, i));
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(a in int_matrix(3, 5, -4, 4)) {
        let q = a.to_rational();
        let ker = kernel(&q);
        prop_assert_eq!(ker.len() + rank(&q), 5);
        for v in &ker {
            prop_assert!(q.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_recovers_solution(a in int_matrix(3, 3, -5, 5), x in proptest::collection::vec(-5i64..=5, 3)) {
        let q = a.to_rational();
        let x: Vec<_> = x.into_iter().map(|v| rat(v, 1)).collect();
        let b = q.mul_vec(&x).unwrap();
        let y = solve_rational(&q, &b).unwrap().expect("consistent");
        prop_assert_eq!(q.mul_vec(&y).unwrap(), b);
    }
}

#[test]
fn snf_spec_examples() {
    assert_eq!(snf(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 4]])).divisors, vec![int(2), int(4)]);
    assert_eq!(snf(&IntMatrix::from_i64_rows(&[&[2, 1], &[0, 2]])).divisors, vec![int(1), int(4)]);
    assert!(snf(&IntMatrix::zeros(2, 3)).divisors.is_empty());
}

#[test]
fn rational_hnf_scales_back() {
    let a = RatMatrix::new(2, 2, vec![rat(1, 2), rat(0, 1), rat(1, 3), rat(1, 3)]).unwrap();
    let h = nillat_core::linalg::hnf(&a).unwrap();
    assert_eq!(&a * &h.t.to_rational(), h.h);
}
