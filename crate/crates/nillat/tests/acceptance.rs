//! The acceptance suite: every criterion is checked exactly and reported as one PASS/FAIL line.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use nillat_core::classify::*;
use nillat_core::group::{exp_ad, GroupElement};
use nillat_core::lattice::UniformSubgroup;
use nillat_core::lie::{catalog, LieAlgebra, Subspace, NAMES};
use nillat_core::linalg::{hnf_int, snf, IntMatrix, RatMatrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn verified(l: UniformSubgroup) -> Result<UniformSubgroup, String> {
    l.into_verified().map_err(|e| format!("closure failed: {e}"))
}

fn span(g: &LieAlgebra, vs: Vec<Vec<Rational>>) -> Subspace {
    Subspace::span(g.dim(), vs)
}

fn units(g: &LieAlgebra, idx: &[usize]) -> Subspace {
    span(g, idx.iter().map(|&i| g.basis_vector(i)).collect())
}

fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntMatrix {
    IntMatrix::new(n, n, (0..n * n).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect()).unwrap()
}

/// A product of at most 20 elementary column operations with coefficients in [-3, 3].
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut t = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(0..=20) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 => t.swap_cols(i, j),
            1 => t.negate_col(i),
            _ if i != j => t.add_col_multiple(i, j, &BigInt::from(rng.gen_range(-3..=3))),
            _ => {}
        }
    }
    t
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..1000 {
        let a = random_int_matrix(&mut rng, 4, -9, 9);
        let s = snf(&a);
        ensure(&(&s.u * &a) * &s.v == s.s, || format!("U·A·V ≠ S on sample {k}"))?;
        ensure(s.u.is_unimodular() && s.v.is_unimodular(), || format!("U or V not unimodular on sample {k}"))?;
        ensure(s.divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0])), || format!("divisibility fails on sample {k}"))?;
        let diagonal = (0..4).all(|i| (0..4).all(|j| {
            let x = s.s.get(i, j);
            if i == j { i >= s.divisors.len() && x.is_zero() || s.divisors.get(i) == Some(x) } else { x.is_zero() }
        }));
        ensure(diagonal && s.divisors.iter().all(Signed::is_positive), || format!("S malformed on sample {k}"))?;
    }
    let mut pairs = 0;
    while pairs < 500 {
        let a = random_int_matrix(&mut rng, 4, -9, 9);
        if a.determinant().unwrap().is_zero() {
            continue;
        }
        let t = random_unimodular(&mut rng, 4);
        let (h1, h2) = (hnf_int(&a).unwrap(), hnf_int(&(&a * &t)).unwrap());
        ensure(h1.h == h2.h, || format!("HNF(A·T) ≠ HNF(A) on pair {pairs}"))?;
        ensure(&a * &h1.t == h1.h && h1.t.is_unimodular(), || format!("HNF transform wrong on pair {pairs}"))?;
        pairs += 1;
    }
    Ok("1000 SNF factorizations, 500 HNF invariance pairs".into())
}

fn random_element(rng: &mut ChaCha8Rng, g: &Arc<LieAlgebra>) -> GroupElement {
    let log = (0..g.dim()).map(|_| Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into())).collect();
    GroupElement::new(g.clone(), log).unwrap()
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g56 = catalog("g5_6").unwrap();
    ensure(g56.step() == 4, || format!("g5_6 has step {}", g56.step()))?;
    for name in NAMES {
        let g = catalog(name).unwrap();
        for k in 0..200 {
            let (a, b, c) = (random_element(&mut rng, &g), random_element(&mut rng, &g), random_element(&mut rng, &g));
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            ensure(left == right, || format!("associativity fails in {name} on sample {k}"))?;
            ensure(a.mul(&a.inv()).unwrap().is_identity(), || format!("inverse fails in {name} on sample {k}"))?;
            let ab = a.mul(&b).unwrap();
            let hom = exp_ad(&ab.log_element()) == &exp_ad(&a.log_element()) * &exp_ad(&b.log_element());
            let conj = a.conj(&b).unwrap().log().to_vec() == exp_ad(&a.log_element()).mul_vec(b.log()).unwrap();
            ensure(hom && conj, || format!("Ad–ad mismatch in {name} on sample {k}"))?;
        }
    }
    Ok(format!("200 triples in each of {} algebras", NAMES.len()))
}

fn criterion_3() -> Check {
    let g52 = catalog("g5_2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let mut l: Vec<Rational> = (0..5).map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())).collect();
        if l[0].is_zero() {
            l[0] = r(1);
        }
        let x = |i: usize| g52.basis_vector(i);
        let third: Vec<Rational> = (0..5).map(|k| l[1].clone() * &x(2)[k] - l[0].clone() * &x(3)[k]).collect();
        let expected = span(&g52, vec![x(0), x(1), third]);
        let radical = g52.radical_of_form(&l);
        ensure(radical == expected, || "radical of the form differs in g5_2".into())?;
        ensure(g52.centralizer(&radical) == units(&g52, &[0, 1, 2, 3]), || "centralizer of the radical differs".into())?;
    }
    let g54 = catalog("g5_4").unwrap();
    ensure(g54.center() == units(&g54, &[0, 1]), || "center of g5_4".into())?;
    ensure(g54.derived() == units(&g54, &[0, 1, 2]), || "derived algebra of g5_4".into())?;
    let g56 = catalog("g5_6").unwrap();
    let asc = g56.ascending_central_series();
    let chain: Vec<Subspace> = (1..=4).map(|k| units(&g56, &(0..k).collect::<Vec<_>>())).collect();
    ensure(asc.iter().filter(|s| !s.is_zero()).cloned().collect::<Vec<_>>() == [&chain[..3], &[Subspace::full(5)]].concat(), || {
        "ascending central series of g5_6".into()
    })?;
    ensure(g56.center() == chain[0] && g56.derived() == chain[2], || "center or derived algebra of g5_6".into())?;
    ensure(g56.centralizer(&chain[1]) == chain[3], || "centralizer of the second ideal in g5_6".into())?;
    ensure(chain.iter().all(|a| g56.is_ideal(a)), || "chain members are not ideals".into())?;
    Ok("radicals for 50 forms, g5_4 center/derived, g5_6 ideal chain".into())
}

type M2 = [i64; 4];

fn mul2(a: &M2, b: &M2) -> M2 {
    [a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]]
}

/// Generators of GL(2,ℤ): elementary shears E12(k), E21(k) for 1 ≤ |k| ≤ 5, the swap and a sign change.
fn gl2_generators() -> Vec<M2> {
    let mut gens = vec![[0, 1, 1, 0], [-1, 0, 0, 1]];
    for k in (-5..=5).filter(|&k| k != 0) {
        gens.push([1, k, 0, 1]);
        gens.push([1, 0, k, 1]);
    }
    gens
}

/// All `A·M·B` with `A`, `B` words of length ≤ 6, entries capped at 60.
fn two_sided_orbit(m: M2, gens: &[M2]) -> HashSet<M2> {
    const CAP: i64 = 60;
    let mut seen: HashSet<M2> = HashSet::from([m]);
    let mut queue = VecDeque::from([(m, 0usize, 0usize)]);
    while let Some((x, left, right)) = queue.pop_front() {
        for g in gens {
            let mut next = Vec::with_capacity(2);
            if left < 6 {
                next.push((mul2(g, &x), left + 1, right));
            }
            if right < 6 {
                next.push((mul2(&x, g), left, right + 1));
            }
            for (y, l, rr) in next {
                if y.iter().all(|v| v.abs() <= CAP) && seen.insert(y) {
                    queue.push_back((y, l, rr));
                }
            }
        }
    }
    seen
}

fn criterion_4() -> Check {
    let mut grid = Vec::new();
    for p in 1..=5i64 {
        for q in 1..=5i64 {
            for alpha in 0..q {
                grid.push((p, q, alpha));
            }
        }
    }
    ensure(grid.len() == 75, || "grid size".into())?;
    let mut canon = Vec::new();
    for &(p, q, alpha) in &grid {
        let params = G52Params::new(p, q, alpha).unwrap();
        let gamma = verified(g52_lattice(&params).unwrap())?;
        let (reduced, psi) = reduce_g52(&gamma).map_err(|e| format!("reduce ({p},{q},{alpha}): {e}"))?;
        ensure(psi.maps_onto(&gamma, &g52_lattice(&reduced).unwrap()), || format!("witness fails for ({p},{q},{alpha})"))?;
        let (c, phi) = canon_g52(&gamma).map_err(|e| format!("canon ({p},{q},{alpha}): {e}"))?;
        ensure(c.r1.is_positive() && c.r2.is_multiple_of(&c.r1), || format!("canon ({p},{q},{alpha}) outside 𝒟₂"))?;
        ensure(phi.maps_onto(&gamma, &g52_lattice(&c.params()).unwrap()), || format!("canon witness fails for ({p},{q},{alpha})"))?;
        canon.push((params, c));
    }
    let gens = gl2_generators();
    let orbits: Vec<HashSet<M2>> = grid.iter().map(|&(p, q, a)| two_sided_orbit([p, a, 0, q], &gens)).collect();
    let mut equivalent_pairs = 0;
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let (p, q, a) = grid[j];
            let oracle = orbits[i].contains(&[p, a, 0, q]);
            let decided = g52_equiv(&canon[i].0, &canon[j].0);
            let same_canon = canon[i].1 == canon[j].1;
            ensure(oracle == decided && decided == same_canon, || {
                format!("disagreement on {:?} vs {:?}: oracle {oracle}, equiv {decided}, canon {same_canon}", grid[i], grid[j])
            })?;
            equivalent_pairs += usize::from(oracle);
        }
    }
    Ok(format!("75 lattices, 5625 ordered pairs ({equivalent_pairs} equivalent)"))
}

fn adjugate3(d: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut a = [[0; 3]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let (r0, r1, c0, c1) = ((j + 1) % 3, (j + 2) % 3, (i + 1) % 3, (i + 2) % 3);
            *x = d[r0][c0] * d[r1][c1] - d[r0][c1] * d[r1][c0];
        }
    }
    a
}

/// `D⁻¹BD ∈ SL(3,ℤ)` by integer arithmetic: `D⁻¹BD − I = (D⁻¹e₁)(e₃ᵀD)`.
fn oracle_b(d: &[[i64; 3]; 3]) -> bool {
    let adj = adjugate3(d);
    let det: i64 = (0..3).map(|j| d[0][j] * adj[j][0]).sum();
    det != 0 && (0..3).all(|i| (0..3).all(|j| (adj[i][0] * d[2][j]) % det == 0))
}

/// `⟦D,m⟧⁻¹A(m)⟦D,m⟧ ∈ SL(4,ℤ)` by integer arithmetic on `2(A(m) − I)`.
fn oracle_a(d: &[[i64; 3]; 3], m: i64) -> bool {
    let adj = adjugate3(d);
    let det: i64 = (0..3).map(|j| d[0][j] * adj[j][0]).sum();
    let mut k = [[0i64; 4]; 4];
    for i in 0..3 {
        k[i][..3].copy_from_slice(&d[i]);
    }
    k[3][3] = m;
    let n2 = [[0, 0, m, m], [0, 0, 2, 1], [0, 0, 0, 2], [0, 0, 0, 0]];
    (0..4).all(|i| {
        (0..4).all(|j| {
            let nk = |t: usize| -> i64 { (0..4).map(|s| n2[t][s] * k[s][j]).sum() };
            if i < 3 {
                (0..3).map(|t| adj[i][t] * nk(t)).sum::<i64>() % (2 * det) == 0
            } else {
                nk(3) % (2 * m) == 0
            }
        })
    })
}

fn g54(d: [[i64; 3]; 3], m: i64) -> G54Canonical {
    G54Canonical::new(IntMatrix::from_i64_rows(&[&d[0], &d[1], &d[2]]), m).unwrap()
}

fn criterion_5() -> Check {
    let i3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    ensure(s4_member(&g54(i3, 2)), || "⟦I₃,2⟧ rejected".into())?;
    ensure(s4_member(&g54([[1, 0, 0], [0, 1, 0], [0, 0, 2]], 2)), || "⟦diag(1,1,2),2⟧ rejected".into())?;
    ensure(!s4_member(&g54(i3, 1)), || "⟦I₃,1⟧ accepted".into())?;
    let mut members = Vec::new();
    let mut checked = 0usize;
    let vals: Vec<i64> = (-4..=4).collect();
    let nonzero: Vec<i64> = (-4..=4).filter(|&x| x != 0).collect();
    for &a11 in &nonzero {
        for &a22 in &nonzero {
            for &a33 in &nonzero {
                for &a12 in &vals {
                    for &a13 in &vals {
                        for &a23 in &vals {
                            let d = [[a11, a12, a13], [0, a22, a23], [0, 0, a33]];
                            let b_ok = oracle_b(&d);
                            for m in 1..=4 {
                                let expected = b_ok && oracle_a(&d, m);
                                // The implementation is compared on every candidate passing the cheap condition.
                                if b_ok {
                                    let c = g54(d, m);
                                    checked += 1;
                                    ensure(s4_member(&c) == expected, || format!("s4_member disagrees on {d:?}, m = {m}"))?;
                                }
                                if expected {
                                    members.push((d, m));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(!members.is_empty(), || "no members found".into())?;
    let mut lattices: BTreeMap<String, G54Canonical> = BTreeMap::new();
    for &(d, m) in &members {
        let c = g54(d, m);
        let h = s4_hermite_close(&c).map_err(|e| format!("hermite close {d:?}: {e}"))?;
        ensure(s4_member(&h), || format!("Hermite form of {d:?}, m = {m} is not a member"))?;
        lattices.entry(format!("{h:?}")).or_insert(h);
    }
    // Γ_⟦D,m⟧ depends on D only through its column lattice, so one closure check per Hermite form covers every member.
    for h in lattices.values() {
        ensure(g54_lattice(h).unwrap().verify_closure(), || format!("{h:?} does not close"))?;
    }
    Ok(format!("{} members among {checked} candidates passing D⁻¹BD, {} distinct lattices closed", members.len(), lattices.len()))
}

fn g56(v: [i64; 6], a44: i64, m: i64) -> G56Canonical {
    let d = IntMatrix::from_i64_rows(&[&[v[0], v[1], v[2], 0], &[0, v[3], v[4], 0], &[0, 0, v[5], 0], &[0, 0, 0, a44]]);
    G56Canonical::new(d, m).unwrap()
}

/// Bounded search: Hermite-shaped `D` with diagonal entries in 1..=6 and `m ≤ 2`.
fn g56_members() -> Vec<G56Canonical> {
    let mut out = Vec::new();
    for a11 in 1..=6 {
        for a22 in 1..=6 {
            for a33 in 1..=6 {
                for a44 in 1..=6 {
                    for a12 in 0..a11 {
                        for a13 in 0..a11 {
                            for a23 in 0..a22 {
                                for m in 1..=2 {
                                    let c = g56([a11, a12, a13, a22, a23, a33], a44, m);
                                    if s6_member(&c) {
                                        out.push(c);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn criterion_6() -> Check {
    ensure(!s6_member(&g56([1, 0, 0, 1, 0, 1], 1, 1)), || "⟦I₄,1⟧ accepted".into())?;
    let base = g56([1, 0, 0, 3, 0, 6], 6, 1);
    ensure(s6_member(&base), || "⟦diag(1,3,6,6),1⟧ rejected".into())?;
    let members = g56_members();
    for c in &members {
        ensure(g56_lattice(c).unwrap().verify_closure(), || format!("member {c:?} does not close"))?;
    }
    let gamma = verified(g56_lattice(&base).unwrap())?;
    let g = gamma.algebra().clone();
    let diag: Vec<Rational> = [32, 16, 8, 4, 2].into_iter().map(r).collect();
    let a2 = Automorphism::new(g, RatMatrix::diagonal(&diag)).map_err(|e| format!("diag(2⁵..2): {e}"))?;
    let image = verified(a2.apply_lattice(&gamma).unwrap())?;
    let scaled = g56([32, 0, 0, 48, 0, 48], 24, 2);
    ensure(s6_member(&scaled), || "scaled image rejected".into())?;
    ensure(image.same_group(&g56_lattice(&scaled).unwrap()), || "scaled parameters do not describe the image".into())?;
    ensure(g56_equivalent(&base, &scaled) == Ok(true), || "a = 2 image not identified".into())?;
    let ratio = &scaled.block().to_rational() * &base.block().to_rational().inverse().unwrap();
    ensure(ratio == RatMatrix::diagonal(&diag), || "ratio is not diag(2⁵,2⁴,2³,2²,2)".into())?;
    let decoy = g56([2, 0, 0, 6, 0, 12], 12, 2);
    ensure(g56_equivalent(&base, &decoy) == Ok(false), || "decoy ⟦diag(2,6,12,12),2⟧ accepted".into())?;
    let mut classes: Vec<&G56Canonical> = Vec::new();
    for c in &members {
        if !classes.iter().any(|k| g56_equivalent(k, c) == Ok(true)) {
            classes.push(c);
        }
    }
    Ok(format!("{} bounded-search members closed, {} ∼-classes, a = 2 image identified, decoy rejected", members.len(), classes.len()))
}

fn criterion_7() -> Check {
    for p1 in -1..=4i64 {
        for p2 in -1..=4i64 {
            for p3 in -2..=2 * p1 + 1 {
                let expected = p1 > 0 && p2 > 0 && (p1 * p2 + p3).rem_euclid(2) == 0 && 0 <= p3 && p3 < 2 * p1;
                ensure(g4xr_validate(&G4xRParams::new(p1, p2, p3)) == expected, || format!("validation of ({p1},{p2},{p3})"))?;
            }
        }
    }
    let g4 = catalog("g4").unwrap();
    let mut count = 0;
    for p1 in 1..=3i64 {
        for p2 in 1..=3i64 {
            for p3 in 0..2 * p1 {
                let p = G4xRParams::new(p1, p2, p3);
                if !g4xr_validate(&p) {
                    continue;
                }
                let gamma = verified(g4xr_construct(&p).unwrap())?;
                let s = split_abelian_factor(&gamma).map_err(|e| format!("split ({p1},{p2},{p3}): {e}"))?;
                ensure(s.r == 1 && s.h.algebra().name() == g4.name(), || format!("split shape for ({p1},{p2},{p3})"))?;
                ensure(s.h.verify_closure(), || format!("H does not close for ({p1},{p2},{p3})"))?;
                let w = &s.witness;
                ensure(is_automorphism(gamma.algebra(), w.matrix()) == Ok(true), || "witness is not an automorphism".into())?;
                let mut product: Vec<Vec<Rational>> = s.h.vectors().iter().map(|v| [v.clone(), vec![r(0)]].concat()).collect();
                product.push(gamma.algebra().basis_vector(4));
                let product = UniformSubgroup::new(gamma.algebra().clone(), product).unwrap();
                ensure(w.apply_lattice(&gamma).unwrap().same_group(&product), || format!("Φ(Γ) ≠ H × ℤ for ({p1},{p2},{p3})"))?;
                count += 1;
            }
        }
    }
    Ok(format!("validation scan agrees; {count} lattices split with rank 1"))
}

fn criterion_8() -> Check {
    let mut counts = [0usize; 3];
    for r1 in 1..=6i64 {
        for k in 1..=4i64 {
            let c = G52Canonical::new(r1, r1 * k).unwrap();
            let gamma = verified(g52_lattice(&c.params()).unwrap())?;
            let (again, _) = canon_g52(&gamma).map_err(|e| e.to_string())?;
            ensure(again == c, || format!("g5_2 {c:?} came back as {again:?}"))?;
            counts[0] += 1;
        }
    }
    for c in g56_members().into_iter().filter(|c| c.m <= BigInt::from(1)).take(40) {
        let gamma = verified(g56_lattice(&c).unwrap())?;
        let (again, _) = canon_g56(&gamma).map_err(|e| format!("canon_g56 {c:?}: {e}"))?;
        ensure(g56_equivalent(&c, &again) == Ok(true), || format!("g5_6 {c:?} came back as {again:?}"))?;
        counts[1] += 1;
    }
    for d in [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 2]], [[2, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 1, 0], [0, 2, 0], [0, 0, 2]]] {
        for m in 1..=4 {
            let c = g54(d, m);
            let lattice = g54_lattice(&c).unwrap();
            if !lattice.verify_closure() {
                continue;
            }
            let (first, _) = canon_g54(&verified(lattice)?).map_err(|e| e.to_string())?;
            let (second, _) = canon_g54(&verified(g54_lattice(&first).unwrap())?).map_err(|e| e.to_string())?;
            ensure(second == first, || format!("g5_4 {first:?} came back as {second:?}"))?;
            counts[2] += 1;
        }
    }
    Ok(format!("g5_2 {} exact, g5_6 {} up to ∼, g5_4 {} fixed points", counts[0], counts[1], counts[2]))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Check); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let start = std::time::Instant::now();
        match f() {
            Ok(detail) => println!("criterion {n}: PASS ({:.1}s) {detail}", start.elapsed().as_secs_f64()),
            Err(reason) => {
                println!("criterion {n}: FAIL ({:.1}s) {reason}", start.elapsed().as_secs_f64());
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
