mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ietkit::iet::lengths::sqrt_base;
use ietkit::iet::{IetPair, LengthVector, Precision, Provenance};
use ietkit::numerics::poly::product;
use ietkit::numerics::{char_poly, factor_int_poly, CertifiedReal, IntMatrix};
use ietkit::perm::predicted_b_sum;
use ietkit::rauzy::{elementary_matrix, induce, nu, transport_cyclic_sets};
use ietkit::{Label, Permutation, Substitution, Word};

fn irreducible_perm(m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<usize>> {
    m.prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle())
        .prop_filter("irreducible", |p| common::irreducible(p))
}

fn small_matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, n), n)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn moves_match_two_row_picture(p in irreducible_perm(2..=9)) {
        let pi = Permutation::new(p.clone()).unwrap();
        for (c, l) in [('a', Label::A), ('b', Label::B)] {
            let q = pi.apply(l);
            prop_assert_eq!(q.image(), &common::two_row_move(&p, c)[..]);
            prop_assert!(q.is_irreducible());
            let e = elementary_matrix(l, &pi);
            prop_assert_eq!(e.rows(), common::elementary_oracle(&p, c));
            prop_assert_eq!(num_traits::Signed::abs(&e.det()), BigInt::from(1));
        }
    }

    #[test]
    fn cyclic_sets_partition_and_sum(p in irreducible_perm(2..=10)) {
        let pi = Permutation::new(p.clone()).unwrap();
        let m = pi.m();
        let sets = pi.cyclic_sets();
        let got: Vec<Vec<usize>> = sets.iter().map(|s| s.members().to_vec()).collect();
        prop_assert_eq!(&got, &common::cyclic_sets_oracle(&p));
        let mut all: Vec<usize> = got.concat();
        all.sort();
        prop_assert_eq!(all, (0..=m).collect::<Vec<_>>());
        for s in &sets {
            let b = s.b_vector(m);
            prop_assert_eq!(&b, &common::b_oracle(s.members(), m));
            let sum: i64 = b.iter().sum();
            let expect = if s.contains(0) && !s.contains(m) { 1 } else if s.contains(m) && !s.contains(0) { -1 } else { 0 };
            prop_assert_eq!(sum, expect);
            prop_assert_eq!(predicted_b_sum(s, m), expect);
        }
    }

    #[test]
    fn transport_along_edges(p in irreducible_perm(3..=9)) {
        let pi = Permutation::new(p.clone()).unwrap();
        let m = pi.m();
        for (c, l) in [('a', Label::A), ('b', Label::B)] {
            let e = common::elementary_oracle(&p, c);
            let pairs = transport_cyclic_sets(&pi, l).unwrap();
            prop_assert_eq!(pairs.len(), pi.cyclic_sets().len());
            for (s, t) in pairs {
                prop_assert_eq!(common::matvec(&e, &t.b_vector(m)), s.b_vector(m));
            }
        }
    }

    #[test]
    fn h_membership_agrees(p in irreducible_perm(2..=8), x in prop::collection::vec(-5i64..=5, 8), h in prop::collection::vec(-3i64..=3, 8)) {
        let pi = Permutation::new(p).unwrap();
        let m = pi.m();
        let lx = pi.l_matrix().mul_vec(&x[..m]);
        prop_assert!(pi.h_membership(&lx));
        prop_assert!(pi.h_membership_via_b(&lx));
        prop_assert_eq!(pi.h_membership(&h[..m]), pi.h_membership_via_b(&h[..m]));
    }

    #[test]
    fn char_poly_matches_faddeev_leverrier(a in (1usize..=5).prop_flat_map(|n| small_matrix(n, -4, 4))) {
        let m = IntMatrix::from_rows(&a);
        let p = char_poly(&m);
        let oracle = common::char_poly_oracle(&a);
        let mut got = p.coeffs().to_vec();
        got.resize(oracle.len(), BigInt::from(0));
        prop_assert_eq!(&got, &oracle);
        let fs = factor_int_poly(&p).unwrap();
        prop_assert_eq!(product(&fs), p);
    }

    #[test]
    fn nu_is_monotone(e in small_matrix(4, 1, 20), f in small_matrix(4, 0, 3)) {
        prop_assume!(IntMatrix::from_rows(&f).det() != BigInt::from(0));
        let fe = common::matmul(&f, &e);
        let nu_e = nu(&IntMatrix::from_rows(&e)).unwrap();
        let nu_fe = nu(&IntMatrix::from_rows(&fe)).unwrap();
        let (a, b) = common::nu_oracle(&e);
        prop_assert_eq!(&nu_e, &BigRational::new(BigInt::from(a), BigInt::from(b)));
        prop_assert!(nu_fe <= nu_e);
    }

    #[test]
    fn population_is_a_morphism(
        images in prop::collection::vec(prop::collection::vec(1usize..=4, 1..6), 4),
        w in prop::collection::vec(1usize..=4, 0..30),
    ) {
        let sigma = Substitution::new(images.into_iter().map(Word::new).collect()).unwrap();
        let w = Word::new(w);
        let lhs = sigma.apply(&w).population(4);
        let rhs = sigma.matrix().mul_vec(&w.population(4));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn refinement_nests(n in 2i64..500, d in 1i64..50, b1 in 20u32..120, extra in 1u32..200) {
        let x = CertifiedReal::sqrt_rational(rat(n, d));
        let coarse = x.refine(b1);
        let fine = x.refine(b1 + extra);
        prop_assert!(fine.is_within(&coarse));
        let sq = fine.mul(&fine);
        prop_assert!(sq.contains(&rat(n, d)));
    }
}

const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn induction_bookkeeping(
        p in irreducible_perm(4..=5),
        scales in prop::collection::vec(1i64..1000, 5),
        offset in 0usize..4,
    ) {
        let m = p.len();
        let radicands: Vec<BigRational> = (0..m).map(|i| rat(PRIMES[i + offset], 1)).collect();
        let sc: Vec<BigRational> = scales[..m].iter().map(|&s| rat(s, 100)).collect();
        let base = sqrt_base(&radicands, &sc, Precision::default());
        let lengths = LengthVector::from_base(base, Provenance::Other { note: "test".into() });
        let pair = IetPair::new(lengths, Permutation::new(p.clone()).unwrap()).unwrap();
        let recs = induce(&pair, 60).unwrap();
        let mut prod = common::identity(m);
        let mut perm = p.clone();
        let total = pair.lengths.total_form();
        for r in &recs {
            let c = r.label.as_char();
            let e = common::elementary_oracle(&perm, c);
            prod = common::matmul(&prod, &e);
            perm = common::two_row_move(&perm, c);
            prop_assert_eq!(r.next.perm.image(), &perm[..]);
            // lambda = A lambda' coordinatewise on forms.
            let f = r.next.lengths.forms();
            for i in 0..m {
                let mut acc = vec![0i128; f[0].len()];
                for j in 0..m {
                    for (a, b) in acc.iter_mut().zip(&f[j]) {
                        *a += prod[i][j] as i128 * b;
                    }
                }
                prop_assert_eq!(&acc, pair.lengths.form(i + 1));
            }
            // sum_j h_j lambda'_j = |lambda| with h the column sums.
            let mut filled = vec![0i128; f[0].len()];
            for j in 0..m {
                let h: i64 = (0..m).map(|i| prod[i][j]).sum();
                for (a, b) in filled.iter_mut().zip(&f[j]) {
                    *a += h as i128 * b;
                }
            }
            prop_assert_eq!(&filled, &total);
            let resid: Vec<i128> = filled.iter().zip(&total).map(|(a, b)| a - b).collect();
            prop_assert!(pair.lengths.base().eval(&resid).contains_zero());
        }
    }
}
