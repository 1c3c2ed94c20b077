mod common;

use nillat_core::automorphisms::{
    char_poly_pair, charpoly, fundamental_unit, has_unit_circle_root, is_anosov, phi_automorphism, IntPolynomial,
    QuadElem, QuadraticRing,
};
use nillat_core::matrix::ZMatrix;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn fundamental_unit_is_minimal_up_to_50() {
    common::check_fundamental_minimal(50).unwrap();
}

#[test]
fn unit_circle_agrees_with_float_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut hits = 0;
    for _ in 0..500 {
        let deg = rng.gen_range(3..=4);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4..=4)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        let p = IntPolynomial::from_i64(&c).unwrap();
        let exact = has_unit_circle_root(&p);
        let oracle = common::float_unit_circle(&p);
        assert_eq!(exact, oracle, "polynomial {p}");
        hits += exact as usize;
    }
    assert!(hits > 20 && hits < 480, "degenerate sample: {hits} hits");
}

fn unimodular(seq: &[(usize, usize, i64)]) -> ZMatrix {
    let mut u = ZMatrix::identity(3);
    for &(i, j, k) in seq {
        if i == j {
            continue;
        }
        let mut e = ZMatrix::identity(3);
        e[(i, j)] = BigInt::from(k);
        u = u.mul(&e);
    }
    u
}

fn ring_units(r: &QuadraticRing, eps: &QuadElem, k: i64, sign: bool) -> QuadElem {
    let u = r.pow(eps, k).unwrap();
    if sign { r.neg(&u) } else { u }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anosov_is_conjugation_invariant(
        b in proptest::collection::vec(-3i64..=3, 9),
        ops in proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
    ) {
        let b = ZMatrix::from_rows(b.chunks(3).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
        let u = unimodular(&ops);
        let ui = u.inverse_unimodular().unwrap();
        let c = u.mul(&b).mul(&ui);
        prop_assert_eq!(is_anosov(&b).unwrap(), is_anosov(&c).unwrap());
    }

    #[test]
    fn char_poly_pair_invariants(ops in proptest::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..8), flip in any::<bool>()) {
        let mut b = unimodular(&ops);
        if flip {
            let d = ZMatrix::diagonal(&[BigInt::one(), BigInt::one(), -BigInt::one()]);
            b = b.mul(&d);
        }
        let det = b.det();
        let (pb, qa) = char_poly_pair(&b).unwrap();
        prop_assert_eq!(&pb.coeffs()[0], &-det.clone());
        // eigenvalues of A multiply to one
        prop_assert_eq!(&qa.coeffs()[0], &-BigInt::one());
        prop_assert_eq!(pb, charpoly(&b).unwrap());
        // eigenvalues of A are det/λ, so q_A(X) = -rev(p_B)(det X)
        let rev: Vec<BigInt> = charpoly(&b)
            .unwrap()
            .reversal()
            .iter()
            .enumerate()
            .map(|(i, c)| -c * det.pow(i as u32))
            .collect();
        prop_assert_eq!(qa.coeffs(), &rev[..]);
    }

    #[test]
    fn phi_respects_composition(
        m in prop::sample::select(vec![2i64, 3, 5, 6, 7, -1, -2, -3]),
        k in proptest::collection::vec((-2i64..=2, any::<bool>()), 4),
    ) {
        let r = QuadraticRing::new(m).unwrap();
        let eps = if m > 0 { fundamental_unit(m).unwrap() } else { r.omega() };
        let eps = if r.is_unit(&eps) { eps } else { r.neg(&r.one()) };
        let u: Vec<QuadElem> = k.iter().map(|&(e, s)| ring_units(&r, &eps, e, s)).collect();
        let f1 = phi_automorphism(&r, &u[0], &u[1]).unwrap();
        let f2 = phi_automorphism(&r, &u[2], &u[3]).unwrap();
        let f12 = phi_automorphism(&r, &r.mul(&u[0], &u[2]), &r.mul(&u[1], &u[3])).unwrap();
        prop_assert_eq!(f1.matrix.mul(&f2.matrix), f12.matrix);
    }
}

#[test]
fn powers_of_the_fundamental_unit_are_anosov_exactly_when_expected() {
    let r = QuadraticRing::new(2).unwrap();
    let eps = fundamental_unit(2).unwrap();
    for n in -2i64..=2 {
        for k in -2i64..=2 {
            let phi = phi_automorphism(&r, &r.pow(&eps, n).unwrap(), &r.pow(&eps, k).unwrap()).unwrap();
            assert_eq!(phi.anosov, n * k * (n + k) != 0, "n = {n}, k = {k}");
        }
    }
}
