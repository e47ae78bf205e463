//! Enclosures of real numbers by rational intervals that can be refined on demand.
//!
//! A [`CertifiedReal`] stores a closed rational interval `[lo, hi]` known to contain
//! the represented real, plus an optional generator that recomputes a tighter
//! enclosure at a requested working precision. Refinement always intersects the new
//! enclosure with the old one, so successive refinements are nested.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default cap on refinement precision, in bits.
pub const DEFAULT_MAX_BITS: u32 = 4096;

type Generator = Arc<dyn Fn(u32) -> (BigRational, BigRational) + Send + Sync>;

/// Outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Comparison {
    Less,
    Greater,
    /// Both operands are the same exact rational point.
    Equal,
    /// Enclosures still overlap at the precision cap.
    Ambiguous,
}

impl Comparison {
    pub fn to_ordering(self) -> Option<Ordering> {
        match self {
            Comparison::Less => Some(Ordering::Less),
            Comparison::Greater => Some(Ordering::Greater),
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Ambiguous => None,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            c => c,
        }
    }
}

/// A real number given by a rational enclosure and an optional refinement recipe.
#[derive(Clone)]
pub struct CertifiedReal {
    lo: BigRational,
    hi: BigRational,
    bits: u32,
    gen: Option<Generator>,
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Largest dyadic with denominator `2^bits` that is `<= q`.
pub fn floor_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let d = pow2(bits);
    let n = (q.numer() * &d).div_floor(q.denom());
    BigRational::new(n, d)
}

/// Smallest dyadic with denominator `2^bits` that is `>= q`.
pub fn ceil_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let d = pow2(bits);
    let n = -((-(q.numer() * &d)).div_floor(q.denom()));
    BigRational::new(n, d)
}

/// Lower bound for `sqrt(q)` with denominator `2^bits`; `q >= 0`.
pub fn sqrt_down(q: &BigRational, bits: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    let d = pow2(2 * bits);
    let n = (q.numer() * &d).div_floor(q.denom());
    BigRational::new(n.sqrt(), pow2(bits))
}

/// Upper bound for `sqrt(q)` with denominator `2^bits`; `q >= 0`.
pub fn sqrt_up(q: &BigRational, bits: u32) -> BigRational {
    if !q.is_positive() {
        return BigRational::zero();
    }
    let d = pow2(2 * bits);
    let n = -((-(q.numer() * &d)).div_floor(q.denom()));
    let r = n.sqrt();
    let r = if &r * &r == n { r } else { r + 1 };
    BigRational::new(r, pow2(bits))
}

/// Number of bits needed to write `ceil(|q|)`.
pub(crate) fn magnitude_bits(q: &BigRational) -> u32 {
    let c = q.abs().ceil().to_integer();
    c.bits() as u32
}

fn max_abs(a: &BigRational, b: &BigRational) -> BigRational {
    let (a, b) = (a.abs(), b.abs());
    if a > b {
        a
    } else {
        b
    }
}

fn mul_interval(
    al: &BigRational,
    ah: &BigRational,
    bl: &BigRational,
    bh: &BigRational,
) -> (BigRational, BigRational) {
    let c = [al * bl, al * bh, ah * bl, ah * bh];
    let mut lo = c[0].clone();
    let mut hi = c[0].clone();
    for x in &c[1..] {
        if *x < lo {
            lo = x.clone();
        }
        if *x > hi {
            hi = x.clone();
        }
    }
    (lo, hi)
}

impl CertifiedReal {
    /// The exact rational `q`.
    pub fn exact(q: BigRational) -> Self {
        CertifiedReal {
            lo: q.clone(),
            hi: q,
            bits: u32::MAX,
            gen: None,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::exact(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// A fixed enclosure without a refinement recipe.
    pub fn from_enclosure(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "enclosure with lo > hi");
        CertifiedReal {
            lo,
            hi,
            bits: 0,
            gen: None,
        }
    }

    /// Build from a recipe mapping a precision in bits to an enclosure.
    ///
    /// The recipe must return valid enclosures for every precision; tighter
    /// enclosures are expected for larger arguments.
    pub fn from_generator<F>(f: F, bits: u32) -> Self
    where
        F: Fn(u32) -> (BigRational, BigRational) + Send + Sync + 'static,
    {
        let (lo, hi) = f(bits);
        assert!(lo <= hi, "generator returned lo > hi");
        CertifiedReal {
            lo,
            hi,
            bits,
            gen: Some(Arc::new(f)),
        }
    }

    /// Square root of a nonnegative rational.
    pub fn sqrt_rational(q: BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        let r = q.numer().sqrt();
        let s = q.denom().sqrt();
        if &r * &r == *q.numer() && &s * &s == *q.denom() {
            return Self::exact(BigRational::new(r, s));
        }
        Self::from_generator(
            move |bits| (sqrt_down(&q, bits + 2), sqrt_up(&q, bits + 2)),
            64,
        )
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// Precision of the current enclosure (`u32::MAX` for exact values).
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        if self.is_exact() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn is_refinable(&self) -> bool {
        self.gen.is_some() && !self.is_exact()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn overlaps(&self, other: &CertifiedReal) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when `self` lies inside `other` as intervals.
    pub fn is_within(&self, other: &CertifiedReal) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Enclosure at (at least) the requested precision, intersected with the stored one.
    fn at(&self, bits: u32) -> (BigRational, BigRational) {
        match &self.gen {
            Some(g) if bits > self.bits && !self.is_exact() => {
                let (l, h) = g(bits);
                let l = floor_dyadic(&l, bits + 8);
                let h = ceil_dyadic(&h, bits + 8);
                let lo = if l > self.lo { l } else { self.lo.clone() };
                let hi = if h < self.hi { h } else { self.hi.clone() };
                (lo, hi)
            }
            _ => (self.lo.clone(), self.hi.clone()),
        }
    }

    /// Re-evaluate at `bits` of precision. The result is nested in `self`.
    pub fn refine(&self, bits: u32) -> Self {
        if bits <= self.bits || !self.is_refinable() {
            return self.clone();
        }
        let (lo, hi) = self.at(bits);
        CertifiedReal {
            lo,
            hi,
            bits,
            gen: self.gen.clone(),
        }
    }

    fn combine<F>(parts: Vec<CertifiedReal>, lo: BigRational, hi: BigRational, f: F) -> Self
    where
        F: Fn(&[CertifiedReal], u32) -> (BigRational, BigRational) + Send + Sync + 'static,
    {
        let bits = parts.iter().map(|p| p.bits).min().unwrap_or(u32::MAX);
        if lo == hi {
            return Self::exact(lo);
        }
        let refinable = parts.iter().any(|p| p.is_refinable());
        CertifiedReal {
            lo,
            hi,
            bits: if refinable { bits } else { 0 },
            gen: if refinable {
                Some(Arc::new(move |b| f(&parts, b)))
            } else {
                None
            },
        }
    }

    pub fn neg(&self) -> Self {
        Self::combine(
            vec![self.clone()],
            -self.hi.clone(),
            -self.lo.clone(),
            |p, b| {
                let (l, h) = p[0].at(b);
                (-h, -l)
            },
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::combine(
            vec![self.clone(), other.clone()],
            &self.lo + &other.lo,
            &self.hi + &other.hi,
            |p, b| {
                let (al, ah) = p[0].at(b + 1);
                let (bl, bh) = p[1].at(b + 1);
                (al + bl, ah + bh)
            },
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (lo, hi) = mul_interval(&self.lo, &self.hi, &other.lo, &other.hi);
        Self::combine(vec![self.clone(), other.clone()], lo, hi, |p, b| {
            let m = max_abs(p[0].lo(), p[0].hi()) + max_abs(p[1].lo(), p[1].hi());
            let g = b + magnitude_bits(&m) + 2;
            let (al, ah) = p[0].at(g);
            let (bl, bh) = p[1].at(g);
            mul_interval(&al, &ah, &bl, &bh)
        })
    }

    pub fn mul_rat(&self, q: &BigRational) -> Self {
        self.mul(&Self::exact(q.clone()))
    }

    pub fn add_rat(&self, q: &BigRational) -> Self {
        self.add(&Self::exact(q.clone()))
    }

    /// Refine until the enclosure excludes zero, up to `max_bits`.
    pub fn separate_from_zero(&self, max_bits: u32) -> Option<Self> {
        let mut x = self.clone();
        let mut bits = x.bits.clamp(64, max_bits.max(64));
        loop {
            if x.lo.is_positive() || x.hi.is_negative() {
                return Some(x);
            }
            if !x.is_refinable() || bits > max_bits {
                return None;
            }
            x = x.refine(bits);
            bits = bits.saturating_mul(2);
        }
    }

    /// Reciprocal; `None` if the value cannot be separated from zero.
    pub fn recip(&self) -> Option<Self> {
        let x = self.separate_from_zero(DEFAULT_MAX_BITS)?;
        let one = BigRational::one();
        let (lo, hi) = (&one / &x.hi, &one / &x.lo);
        Some(Self::combine(vec![x], lo, hi, |p, b| {
            let m = if p[0].lo().is_positive() {
                p[0].lo().clone()
            } else {
                -p[0].hi().clone()
            };
            let g = b + 2 * magnitude_bits(&(BigRational::one() / m)) + 2;
            let (l, h) = p[0].at(g);
            let one = BigRational::one();
            (&one / &h, &one / &l)
        }))
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.recip()?))
    }

    /// Square root; the represented value must be nonnegative.
    pub fn sqrt(&self) -> Self {
        if let Some(q) = self.exact_value() {
            return Self::sqrt_rational(q.clone());
        }
        let x = self
            .separate_from_zero(DEFAULT_MAX_BITS)
            .unwrap_or_else(|| self.clone());
        assert!(!x.hi.is_negative(), "square root of a negative number");
        let lo = sqrt_down(&x.lo, 64.max(x.bits.min(1 << 20)));
        let hi = sqrt_up(&x.hi, 64.max(x.bits.min(1 << 20)));
        Self::combine(vec![x], lo, hi, |p, b| {
            let extra = if p[0].lo().is_positive() {
                magnitude_bits(&(BigRational::one() / p[0].lo().clone())) / 2 + 2
            } else {
                b + 2
            };
            let (l, h) = p[0].at(b + extra);
            (sqrt_down(&l, b + 2), sqrt_up(&h, b + 2))
        })
    }

    /// `sum_i c_i * x_i` for integer coefficients.
    pub fn linear_combination(terms: &[(BigInt, CertifiedReal)]) -> Self {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (c, x) in terms {
            let cq = BigRational::from_integer(c.clone());
            if c.is_negative() {
                lo += &cq * &x.hi;
                hi += &cq * &x.lo;
            } else {
                lo += &cq * &x.lo;
                hi += &cq * &x.hi;
            }
        }
        let coeffs: Vec<BigInt> = terms.iter().map(|t| t.0.clone()).collect();
        let vals: Vec<CertifiedReal> = terms.iter().map(|t| t.1.clone()).collect();
        let csum: BigInt = coeffs.iter().map(|c| c.abs()).sum();
        let guard = csum.bits() as u32 + 1;
        Self::combine(vals, lo, hi, move |p, b| {
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (c, x) in coeffs.iter().zip(p) {
                if c.is_zero() {
                    continue;
                }
                let (l, h) = x.at(b + guard);
                let cq = BigRational::from_integer(c.clone());
                if c.is_negative() {
                    lo += &cq * &h;
                    hi += &cq * &l;
                } else {
                    lo += &cq * &l;
                    hi += &cq * &h;
                }
            }
            (lo, hi)
        })
    }

    /// Sign of the value, refining up to `max_bits`.
    pub fn sign(&self, max_bits: u32) -> Comparison {
        compare(self, &Self::zero(), max_bits)
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        rational_to_decimal(&self.midpoint(), digits)
    }
}

/// Decimal string of `q` truncated toward zero after `digits` fractional digits.
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let n = (a.numer() * &scale) / a.denom();
    let s = n.to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (ip, fp) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// Compare two enclosed reals, refining both up to `max_bits`.
pub fn compare(x: &CertifiedReal, y: &CertifiedReal, max_bits: u32) -> Comparison {
    if x.hi < y.lo {
        return Comparison::Less;
    }
    if x.lo > y.hi {
        return Comparison::Greater;
    }
    if x.is_exact() && y.is_exact() && x.lo == y.lo {
        return Comparison::Equal;
    }
    let mut d = x.sub(y);
    let mut bits = d.bits.clamp(32, max_bits.max(32));
    loop {
        if d.hi.is_negative() {
            return Comparison::Less;
        }
        if d.lo.is_positive() {
            return Comparison::Greater;
        }
        if d.is_exact() {
            return Comparison::Equal;
        }
        if !d.is_refinable() || bits > max_bits {
            return Comparison::Ambiguous;
        }
        d = d.refine(bits);
        bits = bits.saturating_mul(2);
    }
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "CertifiedReal({})", self.lo)
        } else {
            write!(
                f,
                "CertifiedReal[{}, {}]",
                rational_to_decimal(&self.lo, 20),
                rational_to_decimal(&self.hi, 20)
            )
        }
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(16))
    }
}

impl serde::Serialize for CertifiedReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CertifiedReal", 3)?;
        st.serialize_field("approx", &self.to_decimal(20))?;
        st.serialize_field("lo", &rational_to_decimal(&self.lo, 30))?;
        st.serialize_field("hi", &rational_to_decimal(&ceil_dyadic(&self.hi, 110), 30))?;
        st.end()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&CertifiedReal> for &CertifiedReal {
            type Output = CertifiedReal;
            fn $m(self, rhs: &CertifiedReal) -> CertifiedReal {
                self.$f(rhs)
            }
        }
        impl std::ops::$tr<CertifiedReal> for CertifiedReal {
            type Output = CertifiedReal;
            fn $m(self, rhs: CertifiedReal) -> CertifiedReal {
                (&self).$f(&rhs)
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &CertifiedReal {
    type Output = CertifiedReal;
    fn neg(self) -> CertifiedReal {
        CertifiedReal::neg(self)
    }
}
