use conifold::bundle::RankTwoBundle;
use conifold::equiv::{
    certify_distinct, fingerprint, find_isomorphism, verify_witness, SearchOptions,
    DEFAULT_PRIMES, FINGERPRINT_PRIMES,
};
use conifold::fourfold::{FourManifold, Standard};
use conifold::lattice::IntersectionForm;
use conifold::matrix::{self, Matrix};
use conifold::sixfold::{CubicForm, InvariantSystem};
use conifold::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type M = FourManifold<i64>;
type E = RankTwoBundle<i64>;
type S = InvariantSystem<i64>;

fn symmetric(n: usize, range: i64) -> impl Strategy<Value = Matrix<i64>> {
    prop::collection::vec(-range..=range, n * n).prop_map(move |v| {
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                m[i][j] = v[i * n + j];
                m[j][i] = v[i * n + j];
            }
        }
        m
    })
}

fn any_symmetric() -> impl Strategy<Value = Matrix<i64>> {
    (0usize..=4).prop_flat_map(|n| symmetric(n, 3))
}

/// Sign count of the eigenvalues of `[[a, b], [b, d]]` from its
/// characteristic polynomial `λ² − (a + d)λ + (ad − b²)`.
fn signature_2x2_oracle(a: i64, b: i64, d: i64) -> i64 {
    let trace = a + d;
    let det = a * d - b * b;
    match det.signum() {
        -1 => 0,
        1 => 2 * trace.signum(),
        _ => trace.signum(),
    }
}

#[test]
fn signature_matches_characteristic_polynomial_exhaustively() {
    for a in -3..=3i64 {
        let f = IntersectionForm::new(vec![vec![a]]).unwrap();
        assert_eq!(f.signature().unwrap(), a.signum());
        for b in -3..=3i64 {
            for d in -3..=3i64 {
                let f = IntersectionForm::new(vec![vec![a, b], vec![b, d]]).unwrap();
                assert_eq!(
                    f.signature().unwrap(),
                    signature_2x2_oracle(a, b, d),
                    "[[{a},{b}],[{b},{d}]]"
                );
            }
        }
    }
}

fn random_manifold(rng: &mut impl Rng, pieces: usize) -> M {
    (0..pieces).fold(M::standard(Standard::S4), |acc, _| {
        let piece = Standard::ALL[rng.gen_range(0..4)];
        acc.connected_sum(&M::standard(piece))
    })
}

fn random_bundle(rng: &mut impl Rng, base: &M) -> E {
    let c1 = (0..base.rank()).map(|_| rng.gen_range(-2..=2)).collect();
    E::new(base.clone(), c1, rng.gen_range(-3..=3)).unwrap()
}

fn random_unimodular(rng: &mut impl Rng, n: usize, range: i64) -> Matrix<i64> {
    loop {
        let m: Matrix<i64> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect())
            .collect();
        if matrix::is_unimodular(&m).unwrap() {
            return m;
        }
    }
}

fn random_system(rng: &mut impl Rng, r: usize) -> S {
    let mut mu = CubicForm::zeros(r);
    for i in 0..r {
        for j in i..r {
            for k in j..r {
                mu.set(i, j, k, rng.gen_range(-3..=3));
            }
        }
    }
    let p1 = (0..r).map(|_| rng.gen_range(-6..=6)).collect();
    let w2 = (0..r).map(|_| rng.gen_range(0..=1)).collect();
    S::new(mu, p1, w2, 0, None, (0..r).map(|i| format!("e{i}")).collect()).unwrap()
}

proptest! {
    #[test]
    fn signature_is_additive(q1 in any_symmetric(), q2 in any_symmetric()) {
        let f1 = IntersectionForm::new(q1).unwrap();
        let f2 = IntersectionForm::new(q2).unwrap();
        let sum = f1.direct_sum(&f2);
        prop_assert_eq!(
            sum.signature().unwrap(),
            f1.signature().unwrap() + f2.signature().unwrap()
        );
        prop_assert!(sum.signature().unwrap().unsigned_abs() as usize <= sum.rank());
    }

    #[test]
    fn characteristic_tests_agree(
        q in (1usize..=6).prop_flat_map(|n| (symmetric(n, 3), prop::collection::vec(0u8..=1, n)))
    ) {
        let (m, w) = q;
        let f = IntersectionForm::new(m).unwrap();
        prop_assert_eq!(
            f.is_characteristic(&w).unwrap(),
            f.is_characteristic_exhaustive(&w).unwrap()
        );
    }

    #[test]
    fn bigint_signature_agrees(q in any_symmetric()) {
        let big: Matrix<BigInt> = q.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        prop_assert_eq!(
            IntersectionForm::new(q).unwrap().signature().unwrap(),
            IntersectionForm::new(big).unwrap().signature().unwrap()
        );
    }

    #[test]
    fn twist_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pieces = rng.gen_range(0..=3);
        let base = random_manifold(&mut rng, pieces);
        let e = random_bundle(&mut rng, &base);
        let l: Vec<i64> = (0..base.rank()).map(|_| rng.gen_range(-3..=3)).collect();
        let neg: Vec<i64> = l.iter().map(|v| -v).collect();
        let t = e.twist(&l).unwrap();
        prop_assert_eq!(t.twist(&neg).unwrap(), e.clone());
        prop_assert_eq!(t.w2(), e.w2());
        prop_assert_eq!(t.discriminant().unwrap(), e.discriminant().unwrap());
    }
}

/// Finds a permutation matrix `P` with `Pᵀ A P = B`, by brute force.
fn permutation_between(a: &IntersectionForm<i64>, b: &IntersectionForm<i64>) -> bool {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = a.rank();
    n == b.rank()
        && perms(n).into_iter().any(|p| {
            (0..n).all(|i| (0..n).all(|j| a.entry(p[i], p[j]) == b.entry(i, j)))
        })
}

#[test]
fn connected_sum_is_commutative_and_associative_up_to_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let x = random_manifold(&mut rng, 1);
        let y = random_manifold(&mut rng, 1);
        let z = random_manifold(&mut rng, 1);
        let xy = x.connected_sum(&y);
        let yx = y.connected_sum(&x);
        assert!(permutation_between(xy.form(), yx.form()));
        let l = xy.connected_sum(&z);
        let r = x.connected_sum(&y.connected_sum(&z));
        assert!(permutation_between(l.form(), r.form()));
        assert_eq!(
            xy.p1_number().unwrap(),
            x.p1_number().unwrap() + y.p1_number().unwrap()
        );
        assert!(l.w2_is_characteristic().unwrap());
    }
}

#[test]
fn projectivization_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let pieces = rng.gen_range(0..=3);
        let base = random_manifold(&mut rng, pieces);
        let e = random_bundle(&mut rng, &base);
        let s = S::projectivize(&base, &e).unwrap();
        let n = base.rank();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    assert_eq!(*s.mu().get(i, j, k), 0);
                }
            }
            assert_eq!(s.p1()[i], 0);
        }
        assert_eq!(s.w2()[0], 0);
        assert_eq!(s.euler_characteristic(), 2 * (2 + n as i64));
    }
}

/// The basis change `a ↦ a + ε·l`, fixing the `y` slots.
fn twist_map(n: usize, l: &[i64], eps: i64) -> Matrix<i64> {
    let mut a = matrix::identity(n + 1);
    for i in 0..n {
        a[i + 1][0] = eps * l[i];
    }
    a
}

#[test]
fn twisting_corresponds_to_a_fixed_sign_substitution() {
    // Determine ε once on N = CP², E trivial, l = (1).
    let cp2 = M::standard(Standard::CP2);
    let e = E::trivial(cp2.clone());
    let s = S::projectivize(&cp2, &e).unwrap();
    let t = S::projectivize(&cp2, &e.twist(&[1]).unwrap()).unwrap();
    let signs: Vec<i64> = [1, -1]
        .into_iter()
        .filter(|&eps| verify_witness(&s, &t, &twist_map(1, &[1], eps), false).unwrap())
        .collect();
    assert_eq!(signs.len(), 1, "exactly one sign works");
    let eps = signs[0];

    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let pieces = rng.gen_range(0..=3);
        let base = random_manifold(&mut rng, pieces);
        let e = random_bundle(&mut rng, &base);
        let l: Vec<i64> = (0..base.rank()).map(|_| rng.gen_range(-3..=3)).collect();
        let s = S::projectivize(&base, &e).unwrap();
        let t = S::projectivize(&base, &e.twist(&l).unwrap()).unwrap();
        let a = twist_map(base.rank(), &l, eps);
        assert!(verify_witness(&s, &t, &a, true).unwrap());
    }
}

#[test]
fn fingerprints_are_transport_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let r = rng.gen_range(1..=3);
        let s = random_system(&mut rng, r);
        let a = random_unimodular(&mut rng, r, 2);
        let t = s.transport(&a).unwrap();
        assert!(verify_witness(&s, &t, &a, false).unwrap());
        for p in FINGERPRINT_PRIMES {
            assert_eq!(fingerprint(&s, p).unwrap(), fingerprint(&t, p).unwrap());
        }
    }
}

#[test]
fn search_is_sound_deterministic_and_exclusive() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut found = 0;
    for _ in 0..40 {
        let r = rng.gen_range(1..=3);
        let s = random_system(&mut rng, r);
        let a = random_unimodular(&mut rng, r, 1);
        let t = s.transport(&a).unwrap();
        let opts = SearchOptions::with_bound(2);
        let seq = SearchOptions {
            parallel: false,
            ..opts
        };
        let w = find_isomorphism(&s, &t, &opts).unwrap();
        assert_eq!(w, find_isomorphism(&s, &t, &seq).unwrap());
        if let Some(w) = &w {
            found += 1;
            assert!(verify_witness(&s, &t, &w.matrix, false).unwrap());
        }
        // the generating matrix has entries in [−1, 1] so a witness exists
        assert!(w.is_some());
        assert_eq!(certify_distinct(&s, &t, &DEFAULT_PRIMES).unwrap(), None);
    }
    assert_eq!(found, 40);
}

#[test]
fn bigint_and_i64_pipelines_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let pieces = rng.gen_range(0..=3);
        let base = random_manifold(&mut rng, pieces);
        let e = random_bundle(&mut rng, &base);
        let small = S::projectivize(&base, &e).unwrap();

        let big_base = FourManifold::<BigInt>::standard(Standard::S4);
        let big_base = base
            .label()
            .split(" # ")
            .filter(|s| *s != "S4")
            .fold(big_base, |acc, name| {
                acc.connected_sum(&FourManifold::by_name(name).unwrap())
            });
        let big_e = RankTwoBundle::new(
            big_base.clone(),
            e.c1().iter().map(|&v| BigInt::from(v)).collect(),
            BigInt::from(*e.c2()),
        )
        .unwrap();
        let big = InvariantSystem::projectivize(&big_base, &big_e).unwrap();
        for (([i, j, k], v), ([bi, bj, bk], bv)) in small.mu().entries().zip(big.mu().entries()) {
            assert_eq!((i, j, k), (bi, bj, bk));
            assert_eq!(BigInt::from(*v), *bv);
        }
        assert_eq!(
            small.p1().iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
            big.p1()
        );
        assert_eq!(small.w2(), big.w2());
    }
}
