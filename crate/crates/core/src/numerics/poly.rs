//! Integer polynomials: characteristic polynomials, factorization, real root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::IntMatrix;
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 by convention here.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of `p(n / 2^k)` computed in integers.
    pub fn sign_at_dyadic(&self, n: &BigInt, k: u32) -> i32 {
        let d = self.degree() as u32;
        let mut acc = BigInt::zero();
        let mut npow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &npow << (k * (d - i as u32));
            npow *= n;
        }
        if acc.is_positive() {
            1
        } else if acc.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Exact quotient `self / d`; `None` if `d` does not divide over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_rat(d);
        if !r.iter().all(|x| x.is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(q.len());
        for c in q {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(Self::new(out))
    }

    /// Division with remainder over the rationals.
    pub fn div_rem_rat(&self, d: &Self) -> (Vec<BigRational>, Vec<BigRational>) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let dd = d.degree();
        let lc = BigRational::from_integer(d.leading());
        if self.coeffs.len() < d.coeffs.len() {
            return (vec![], r);
        }
        let mut q = vec![BigRational::zero(); self.coeffs.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * BigRational::from_integer(dc.clone());
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (q, r)
    }

    /// Remainder modulo a monic polynomial, as an integer polynomial.
    pub fn rem_monic(&self, m: &Self) -> Self {
        assert!(m.leading().is_one(), "modulus must be monic");
        let (_, r) = self.div_rem_rat(m);
        Self::new(r.into_iter().map(|c| c.to_integer()).collect())
    }

    /// Make the leading coefficient positive.
    pub fn normalize_sign(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Determinant of a square matrix of integer polynomials by fraction-free elimination.
pub fn poly_det(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::constant(BigInt::one());
    }
    let mut negate = false;
    let mut prev = IntPoly::constant(BigInt::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v
                    .div_exact(&prev)
                    .expect("fraction-free elimination step must divide exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// `x I - A` as a polynomial matrix.
fn char_matrix(a: &IntMatrix) -> Vec<Vec<IntPoly>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = BigInt::from(-a.get(i, j));
                    if i == j {
                        IntPoly::new(vec![c, BigInt::one()])
                    } else {
                        IntPoly::constant(c)
                    }
                })
                .collect()
        })
        .collect()
}

/// `det(xI - A)`.
pub fn char_poly(a: &IntMatrix) -> IntPoly {
    poly_det(char_matrix(a))
}

/// Column `j` of the adjugate of `xI - A`.
pub fn adjugate_column(a: &IntMatrix, j: usize) -> Vec<IntPoly> {
    let m = char_matrix(a);
    let n = a.dim();
    (0..n)
        .map(|i| {
            // adj[i][j] = (-1)^{i+j} det(M without row j and column i)
            let minor: Vec<Vec<IntPoly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let d = poly_det(minor);
            if (i + j) % 2 == 1 {
                d.neg()
            } else {
                d
            }
        })
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let small = n.to_u64().filter(|&v| v < 1 << 40);
    match small {
        Some(v) => {
            let mut d = 1u64;
            while d * d <= v {
                if v % d == 0 {
                    out.push(BigInt::from(d));
                    if d * d != v {
                        out.push(BigInt::from(v / d));
                    }
                }
                d += 1;
            }
            out.sort();
        }
        None => {
            // Too large to enumerate; trivial divisors only.
            out.push(BigInt::one());
            out.push(n);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Lagrange interpolation through integer points; `None` unless the result is integral.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPoly> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= BigRational::from_integer(&xs[i] - &xs[j]);
        }
        let scale = BigRational::from_integer(ys[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(IntPoly::new(coeffs))
}

fn norm2_ceil(p: &IntPoly) -> BigInt {
    let s: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

/// A factor of degree exactly `e`, searched by interpolation through divisor values.
fn kronecker_factor(f: &IntPoly, e: usize) -> Option<IntPoly> {
    let lc = f.leading().abs();
    let bound = norm2_ceil(f) * &lc;
    // Sample points with the fewest divisor combinations.
    let mut cands: Vec<(usize, BigInt, BigInt)> = Vec::new();
    let mut t = 0i64;
    while cands.len() < 4 * (e + 1) + 4 {
        for x in [t, -t] {
            if t == 0 && x == 0 && !cands.is_empty() {
                continue;
            }
            let xb = BigInt::from(x);
            let v = f.eval_int(&xb);
            if !v.is_zero() && !cands.iter().any(|c| c.1 == xb) {
                cands.push((divisors(&v).len(), xb, v));
            }
        }
        t += 1;
    }
    cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())).then(a.1.cmp(&b.1)));
    cands.truncate(e + 1);
    let xs: Vec<BigInt> = cands.iter().map(|c| c.1.clone()).collect();
    // Signed divisor choices; the first value stays positive to skip +-g duplicates.
    let choices: Vec<Vec<BigInt>> = cands
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let d = divisors(&c.2);
            if i == 0 {
                d
            } else {
                d.iter().cloned().chain(d.iter().map(|x| -x)).collect()
            }
        })
        .collect();
    let mut idx = vec![0usize; e + 1];
    loop {
        let ys: Vec<BigInt> = (0..=e).map(|i| choices[i][idx[i]].clone()).collect();
        if let Some(g) = interpolate(&xs, &ys) {
            let within = g
                .coeffs()
                .iter()
                .enumerate()
                .all(|(i, c)| c.abs() <= binomial(e, i) * &bound);
            if g.degree() == e && within && f.div_exact(&g).is_some() {
                return Some(g.normalize_sign());
            }
        }
        let mut pos = 0;
        loop {
            if pos > e {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn rational_roots(p: &IntPoly) -> Vec<BigRational> {
    let mut out = Vec::new();
    let mut p = p.clone();
    while p.coeff(0).is_zero() && !p.is_zero() {
        if out.is_empty() {
            out.push(BigRational::zero());
        }
        p = IntPoly::new(p.coeffs()[1..].to_vec());
    }
    let a0 = p.coeff(0);
    for num in divisors(&a0) {
        for den in divisors(&p.leading()) {
            for s in [num.clone(), -num.clone()] {
                let r = BigRational::new(s, den.clone());
                if p.eval_rat(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

/// Factor into irreducible factors over the rationals (integer primitive factors).
///
/// Every factor has positive leading coefficient; a constant factor is appended when
/// the content or sign requires it, so the product of the output equals `p` exactly.
/// Factors are sorted by degree, then coefficients.
pub fn factor_int_poly(p: &IntPoly) -> Result<Vec<IntPoly>> {
    if p.degree() > 12 {
        return Err(Error::DegreeTooLarge(p.degree()));
    }
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let mut unit = p.content();
    if p.leading().is_negative() {
        unit = -unit;
    }
    let mut rest = p
        .div_exact(&IntPoly::constant(unit.clone()))
        .expect("content divides");
    let mut factors = Vec::new();
    loop {
        let roots = rational_roots(&rest);
        if roots.is_empty() || rest.degree() == 0 {
            break;
        }
        for r in roots {
            let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
            while rest.degree() > 0 {
                match rest.div_exact(&lin) {
                    Some(q) => {
                        factors.push(lin.clone());
                        rest = q;
                    }
                    None => break,
                }
            }
        }
    }
    let mut stack = vec![rest];
    while let Some(f) = stack.pop() {
        if f.degree() == 0 {
            if !f.leading().is_one() {
                unit *= f.leading();
            }
            continue;
        }
        let mut split = None;
        for e in 2..=f.degree() / 2 {
            if let Some(g) = kronecker_factor(&f, e) {
                split = Some(g);
                break;
            }
        }
        match split {
            Some(g) => {
                let q = f.div_exact(&g).expect("factor divides");
                stack.push(q);
                factors.push(g);
            }
            None => factors.push(f),
        }
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.coeffs.cmp(&b.coeffs)));
    if !unit.is_one() {
        factors.insert(0, IntPoly::constant(unit));
    }
    Ok(factors)
}

/// Product of a list of polynomials.
pub fn product(fs: &[IntPoly]) -> IntPoly {
    fs.iter()
        .fold(IntPoly::constant(BigInt::one()), |acc, f| acc.mul(f))
}

/// Rational polynomial helpers used for Sturm sequences.
fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = &r[top] / &lc;
        for (j, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[top - db + j] -= t;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    while r.last().is_some_and(|x| x.is_zero()) {
        r.pop();
    }
    r
}

fn rat_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Sturm sequence of a polynomial.
pub fn sturm_sequence(p: &IntPoly) -> Vec<Vec<BigRational>> {
    let to_rat = |q: &IntPoly| -> Vec<BigRational> {
        q.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut seq = vec![to_rat(p), to_rat(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = rat_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| {
            let v = rat_eval(p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]` of a squarefree polynomial.
pub fn count_roots(seq: &[Vec<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Squarefree part `p / gcd(p, p')`, made primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let to_rat = |q: &IntPoly| -> Vec<BigRational> {
        q.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut a = to_rat(p);
    let mut b = to_rat(&p.derivative());
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.len() <= 1 {
        return p.normalize_sign();
    }
    // Clear denominators of the gcd.
    let l = a
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g = IntPoly::new(a.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect());
    let g = g.div_exact(&IntPoly::constant(g.content())).unwrap();
    let (q, _) = p.div_rem_rat(&g);
    let l = q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q = IntPoly::new(q.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect());
    let c = q.content();
    q.div_exact(&IntPoly::constant(c)).unwrap().normalize_sign()
}

/// Data attached to an irreducible monic quartic: resolvent cubic, discriminant, Galois group.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QuarticGaloisData {
    pub quartic: String,
    pub resolvent_cubic: String,
    pub discriminant: String,
    pub discriminant_is_square: bool,
    pub resolvent_rational_roots: Vec<String>,
    pub group: String,
    pub group_order: usize,
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Rational `t` is a square in `Q(sqrt(d))`.
fn square_in_quadratic(t: &BigInt, d: &BigInt) -> bool {
    t.is_zero() || is_square(t) || is_square(&(t * d))
}

/// Galois data of a monic irreducible integer quartic `x^4 + a x^3 + b x^2 + c x + d`.
///
/// Resolvent cubic `y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)`, whose roots are
/// `x1 x2 + x3 x4` and permutations; its discriminant equals the quartic's.
pub fn quartic_galois(p: &IntPoly) -> Option<QuarticGaloisData> {
    if p.degree() != 4 || !p.leading().is_one() {
        return None;
    }
    let (a, b, c, d) = (p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0));
    let r2 = -b.clone();
    let r1 = &a * &c - BigInt::from(4) * &d;
    let r0 = -(&a * &a * &d - BigInt::from(4) * &b * &d + &c * &c);
    let cubic = IntPoly::new(vec![r0.clone(), r1.clone(), r2.clone(), BigInt::one()]);
    // Discriminant of y^3 + p y^2 + q y + r.
    let (pp, q, r) = (&r2, &r1, &r0);
    let disc = pp * pp * q * q - BigInt::from(4) * q * q * q - BigInt::from(4) * pp * pp * pp * r
        - BigInt::from(27) * r * r
        + BigInt::from(18) * pp * q * r;
    let disc_sq = is_square(&disc);
    let roots: Vec<BigRational> = rational_roots(&cubic);
    let (group, order) = match roots.len() {
        0 => {
            if disc_sq {
                ("A4", 12)
            } else {
                ("S4", 24)
            }
        }
        1 => {
            // Kappe-Warren test with the rational root t.
            let t = roots[0].to_integer();
            let q1 = &t * &t - BigInt::from(4) * &d;
            let q2 = &a * &a - BigInt::from(4) * (&b - &t);
            if square_in_quadratic(&q1, &disc) && square_in_quadratic(&q2, &disc) {
                ("C4", 4)
            } else {
                ("D4", 8)
            }
        }
        _ => ("V4", 4),
    };
    Some(QuarticGaloisData {
        quartic: p.to_string(),
        resolvent_cubic: cubic.to_string(),
        discriminant: disc.to_string(),
        discriminant_is_square: disc_sq,
        resolvent_rational_roots: roots.iter().map(|x| x.to_string()).collect(),
        group: group.to_string(),
        group_order: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_char_poly() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(char_poly(&a), IntPoly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn identity_char_poly() {
        let p = char_poly(&IntMatrix::identity(5));
        let f = factor_int_poly(&p).unwrap();
        assert_eq!(f, vec![IntPoly::from_i64(&[-1, 1]); 5]);
    }

    #[test]
    fn factor_difference_of_squares() {
        let f = factor_int_poly(&IntPoly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(f, vec![IntPoly::from_i64(&[-1, 1]), IntPoly::from_i64(&[1, 1])]);
    }

    #[test]
    fn factor_quadratic_pair() {
        // (x^2 + 1)(x^2 - 2)(2x + 3) * (-3)
        let p = product(&[
            IntPoly::from_i64(&[1, 0, 1]),
            IntPoly::from_i64(&[-2, 0, 1]),
            IntPoly::from_i64(&[3, 2]),
            IntPoly::from_i64(&[-3]),
        ]);
        let f = factor_int_poly(&p).unwrap();
        assert_eq!(product(&f), p);
        assert_eq!(f.len(), 4);
        assert_eq!(f[0], IntPoly::from_i64(&[-3]));
    }

    #[test]
    fn degree_bound() {
        let p = IntPoly::new(vec![BigInt::one(); 14]);
        assert_eq!(factor_int_poly(&p), Err(Error::DegreeTooLarge(13)));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[1, -8, 15, -8, 1]).to_string(), "x^4 - 8x^3 + 15x^2 - 8x + 1");
    }

    #[test]
    fn sturm_counts() {
        // (x-1)(x-2)(x+3)
        let p = product(&[
            IntPoly::from_i64(&[-1, 1]),
            IntPoly::from_i64(&[-2, 1]),
            IntPoly::from_i64(&[3, 1]),
        ]);
        let s = sturm_sequence(&p);
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(count_roots(&s, &q(-10), &q(10)), 3);
        assert_eq!(count_roots(&s, &q(0), &q(10)), 2);
        assert_eq!(count_roots(&s, &q(1), &q(2)), 1);
    }

    #[test]
    fn squarefree() {
        let p = product(&[
            IntPoly::from_i64(&[-1, 1]),
            IntPoly::from_i64(&[-1, 1]),
            IntPoly::from_i64(&[1, 0, 1]),
        ]);
        assert_eq!(squarefree_part(&p), product(&[IntPoly::from_i64(&[-1, 1]), IntPoly::from_i64(&[1, 0, 1])]));
    }

    #[test]
    fn galois_groups_of_standard_quartics() {
        let g = |c: &[i64]| quartic_galois(&IntPoly::from_i64(c)).unwrap().group;
        assert_eq!(g(&[-2, 0, 0, 0, 1]), "D4"); // x^4 - 2
        assert_eq!(g(&[1, 1, 1, 1, 1]), "C4"); // 5th cyclotomic
        assert_eq!(g(&[1, 0, 0, 0, 1]), "V4"); // 8th cyclotomic
        assert_eq!(g(&[-1, -1, 0, 0, 1]), "S4"); // x^4 - x - 1
        assert_eq!(g(&[12, 8, 0, 0, 1]), "A4"); // x^4 + 8x + 12
    }
}
