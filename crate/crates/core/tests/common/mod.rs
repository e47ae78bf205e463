//! Reference implementations used as test oracles. They are written from the
//! definitions and avoid the library's own routines.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rauzy move on the two-row picture. `pi[i-1]` is the position of interval `i`
/// after the exchange. `'a'`: the last interval of the bottom row is longer.
pub fn two_row_move(pi: &[usize], c: char) -> Vec<usize> {
    let m = pi.len();
    let top: Vec<usize> = (1..=m).collect();
    let mut bottom = vec![0; m];
    for (i, &p) in pi.iter().enumerate() {
        bottom[p - 1] = i + 1;
    }
    let top_last = top[m - 1];
    let bottom_last = bottom[m - 1];
    let (top, bottom) = match c {
        'a' => {
            let mut t: Vec<usize> = top.iter().copied().filter(|&x| x != top_last).collect();
            let at = t.iter().position(|&x| x == bottom_last).unwrap();
            t.insert(at + 1, top_last);
            (t, bottom)
        }
        'b' => {
            let mut b: Vec<usize> = bottom.iter().copied().filter(|&x| x != bottom_last).collect();
            let at = b.iter().position(|&x| x == top_last).unwrap();
            b.insert(at + 1, bottom_last);
            (top, b)
        }
        _ => panic!("label {c}"),
    };
    // Relabel letters by their place in the top row.
    let mut out = vec![0; m];
    for (new_idx, letter) in top.iter().enumerate() {
        let pos = bottom.iter().position(|x| x == letter).unwrap();
        out[new_idx] = pos + 1;
    }
    out
}

pub fn follow(pi: &[usize], labels: &str) -> Vec<usize> {
    labels.chars().fold(pi.to_vec(), |p, c| two_row_move(&p, c))
}

pub fn irreducible(pi: &[usize]) -> bool {
    let m = pi.len();
    (1..m).all(|k| !(1..=k).all(|i| pi[i - 1] <= k))
}

/// Vertices reachable from `pi` under both moves.
pub fn class_oracle(pi: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![pi.to_vec()];
    let mut i = 0;
    while i < seen.len() {
        for c in ['a', 'b'] {
            let q = two_row_move(&seen[i], c);
            if !seen.contains(&q) {
                seen.push(q);
            }
        }
        i += 1;
    }
    seen
}

/// Orbits of `eta` on `0..=m`.
pub fn cyclic_sets_oracle(pi: &[usize]) -> Vec<Vec<usize>> {
    let m = pi.len();
    let inv = |p: usize| pi.iter().position(|&x| x == p).unwrap() + 1;
    let k = inv(m);
    let eta = |i: usize| -> usize {
        if i == 0 {
            inv(1) - 1
        } else if i == k {
            m
        } else {
            inv(pi[i - 1] + 1) - 1
        }
    };
    let mut seen = vec![false; m + 1];
    let mut out = vec![];
    for s in 0..=m {
        if seen[s] {
            continue;
        }
        let mut orbit = vec![];
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = eta(x);
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

pub fn b_oracle(set: &[usize], m: usize) -> Vec<i64> {
    (1..=m)
        .map(|i| set.contains(&(i - 1)) as i64 - set.contains(&i) as i64)
        .collect()
}

/// Column-style matrix of the move: `lambda = E lambda'`.
pub fn elementary_oracle(pi: &[usize], c: char) -> Vec<Vec<i64>> {
    let m = pi.len();
    let k = pi.iter().position(|&x| x == m).unwrap() + 1;
    let mut e = vec![vec![0i64; m]; m];
    match c {
        // lambda'_k = lambda_k - lambda_m, then lambda_m takes slot k+1, the rest shift.
        'a' => {
            for new in 1..=m {
                let old = if new <= k {
                    new
                } else if new == k + 1 {
                    m
                } else {
                    new - 1
                };
                e[old - 1][new - 1] += 1;
            }
            e[k - 1][k] += 1;
        }
        'b' => {
            for i in 0..m {
                e[i][i] = 1;
            }
            e[m - 1][k - 1] += 1;
        }
        _ => panic!("label {c}"),
    }
    e
}

pub fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let p = b[0].len();
    (0..n)
        .map(|i| (0..p).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn matvec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// Product of the elementary matrices along a path.
pub fn path_matrix(pi: &[usize], labels: &str) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut a = identity(pi.len());
    let mut p = pi.to_vec();
    for c in labels.chars() {
        a = matmul(&a, &elementary_oracle(&p, c));
        p = two_row_move(&p, c);
    }
    (a, p)
}

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier, lowest degree first.
pub fn char_poly_oracle(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let ar: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &ar[i][l] * &mk[l][j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &ar[i][l] * &mk[l][i];
            }
        }
        c[n - k] = -tr / q(k as i64);
    }
    c.into_iter()
        .map(|x| {
            assert!(x.is_integer());
            x.to_integer()
        })
        .collect()
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// `floor(theta * 10^digits)` for `theta = 2 + sqrt(3)/2 + sqrt(15 + 8 sqrt(3))/2`,
/// accurate to a few units in the last place.
pub fn theta_scaled(digits: u32) -> BigInt {
    let ten = BigInt::from(10);
    let s = num_traits::pow(ten, digits as usize);
    let s3 = (BigInt::from(3) * &s * &s).sqrt();
    let inner = BigInt::from(15) * &s + BigInt::from(8) * &s3;
    let r = (inner * &s).sqrt();
    BigInt::from(2) * &s + (s3 + r) / BigInt::from(2)
}

/// `max_i max_{j,k} E_ij / E_ik` as a reduced pair.
pub fn nu_oracle(e: &[Vec<i64>]) -> (i128, i128) {
    let mut best = (0i128, 1i128);
    for row in e {
        for &x in row {
            for &y in row {
                let (x, y) = (x as i128, y as i128);
                if x * best.1 > best.0 * y {
                    best = (x, y);
                }
            }
        }
    }
    best
}

pub fn substitute(images: &[&str], w: &str) -> String {
    w.chars()
        .map(|c| images[c.to_digit(10).unwrap() as usize - 1])
        .collect()
}

/// Fixed point of a substitution started at symbol `1`, truncated.
pub fn fixed_point(images: &[&str], len: usize) -> String {
    let mut u = "1".to_string();
    while u.len() < len {
        u = substitute(images, &u);
    }
    u[..len].to_string()
}
