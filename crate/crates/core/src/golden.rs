//! The explicit five-interval example: path, matrix, substitution, witness words.

use num_rational::BigRational;

use crate::error::Result;
use crate::iet::{Precision, Word};
use crate::numerics::certified::CertifiedReal;
use crate::numerics::linalg::IntMatrix;
use crate::perm::{CyclicSet, Permutation};
use crate::rauzy::RauzyPath;
use crate::subst::{periodic_iet_from_path, PeriodicIet, Substitution};

pub const PATH: &str = "bbaababaaaba";

pub const MATRIX_A: [[i64; 5]; 5] = [
    [1, 1, 1, 1, 1],
    [1, 2, 0, 0, 0],
    [0, 0, 2, 3, 2],
    [0, 0, 0, 2, 1],
    [2, 3, 2, 2, 2],
];

pub const MATRIX_B: [[i64; 5]; 5] = [
    [4, 6, 5, 8, 6],
    [3, 5, 1, 1, 1],
    [4, 6, 8, 16, 11],
    [2, 3, 2, 6, 4],
    [9, 14, 10, 16, 12],
];

pub const SIGMA: [&str; 5] = ["1525", "152525", "15335", "15343435", "153435"];

/// The printed prefix of the fixed point (59 symbols).
pub const U_PREFIX: &str = "15251534351525251534351525153435153351534343515335153435152";

pub const W1_PREIMAGE: &str = "251534";
pub const W2_PREIMAGE: &str = "5153351";

/// `l(w1) - l(w2)` for the witness pair.
pub const DIFFERENCE: [i64; 5] = [-1, 1, -1, 1, -1];

pub const THETA_APPROX: f64 = 5.551933372263211;

fn rows(a: &[[i64; 5]; 5]) -> IntMatrix {
    IntMatrix::from_rows(&a.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

pub fn matrix_a() -> IntMatrix {
    rows(&MATRIX_A)
}

pub fn matrix_b() -> IntMatrix {
    rows(&MATRIX_B)
}

pub fn start() -> Permutation {
    Permutation::tau_sym(5).expect("m = 5 is valid")
}

pub fn path() -> RauzyPath {
    RauzyPath::parse(start(), PATH).expect("valid labels")
}

pub fn sigma() -> Substitution {
    Substitution::new(SIGMA.iter().map(|s| s.parse().unwrap()).collect()).expect("valid images")
}

/// `S_1 = {1, 3, 5}`, with `b(S_1) = (-1, 1, -1, 1, -1)`.
pub fn s1() -> CyclicSet {
    CyclicSet::from_members(vec![1, 3, 5])
}

pub fn s0() -> CyclicSet {
    CyclicSet::from_members(vec![0, 2, 4])
}

/// `sigma(251534)` and `sigma(5153351)`.
pub fn witness_words() -> (Word, Word) {
    let s = sigma();
    (
        s.apply(&W1_PREIMAGE.parse().unwrap()),
        s.apply(&W2_PREIMAGE.parse().unwrap()),
    )
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `2 + sqrt(3)/2 + sqrt(15 + 8 sqrt(3))/2`.
pub fn theta_closed_form() -> CertifiedReal {
    let s3 = CertifiedReal::sqrt_rational(q(3, 1));
    let inner = s3.mul_rat(&q(8, 1)).add_rat(&q(15, 1)).sqrt();
    CertifiedReal::from_int(2)
        .add(&s3.mul_rat(&q(1, 2)))
        .add(&inner.mul_rat(&q(1, 2)))
}

/// The eigenvector in closed form, before normalization.
pub fn lambda_closed_form() -> Vec<CertifiedReal> {
    let s3 = CertifiedReal::sqrt_rational(q(3, 1));
    let r = s3.mul_rat(&q(8, 1)).add_rat(&q(15, 1)).sqrt();
    let s3r = s3.mul(&r);
    vec![
        s3.clone(),
        s3.neg()
            .add(&r)
            .sub(&s3r.mul_rat(&q(1, 2)))
            .add_rat(&q(3, 2)),
        s3.mul_rat(&q(3, 2))
            .sub(&r.mul_rat(&q(3, 2)))
            .add(&s3r)
            .add_rat(&q(-1, 1)),
        CertifiedReal::from_int(1),
        s3.mul_rat(&q(1, 2)).add(&r.mul_rat(&q(1, 2))),
    ]
}

/// The golden IET, lengths normalized to total 1.
pub fn golden_iet(precision: Precision) -> Result<PeriodicIet> {
    periodic_iet_from_path(&path(), precision)
}
