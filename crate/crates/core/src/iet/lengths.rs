//! Length vectors and points as exact integer combinations of a fixed set of reals.
//!
//! Every length, breakpoint, translation and orbit point of an IET is an integer
//! linear form over a [`Base`] of enclosed reals. Comparing two points means
//! deciding the sign of a form: first with a cached fixed-point enclosure, then,
//! if needed, with the known rational relations among the base values, and finally
//! by refining the enclosures up to the precision cap.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numerics::certified::{ceil_dyadic, floor_dyadic, CertifiedReal, Comparison, DEFAULT_MAX_BITS};
use crate::numerics::linalg::RowSpace;

/// Integer coefficients over a base.
pub type Form = Vec<i128>;

/// Working precision and refinement cap, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    pub working_bits: u32,
    pub max_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            working_bits: 256,
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

/// Where a length vector came from; carried into JSON output.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Rational { values: Vec<String> },
    PfEigenvector { path: String, start: Vec<usize> },
    Perturbation { parent: Box<Provenance>, seed: u64, draw: usize, primes: Vec<u64> },
    Lifted { parent: Box<Provenance> },
    Induced { parent: Box<Provenance>, steps: usize },
    Transferred { parent: Box<Provenance>, path: String },
    SqrtPrimes { primes: Vec<u64> },
    Other { note: String },
}

/// A finite family of enclosed reals with cached fixed-point bounds.
#[derive(Debug)]
pub struct Base {
    values: Vec<CertifiedReal>,
    relations: Option<RowSpace>,
    fix: Option<(Vec<i128>, Vec<i128>)>,
    precision: Precision,
}

const FIX_BITS: u32 = 64;

impl Base {
    /// `relations`, when given, must be the complete space of rational relations.
    pub fn new(values: Vec<CertifiedReal>, relations: Option<RowSpace>, precision: Precision) -> Arc<Self> {
        let bits = precision.working_bits.min(precision.max_bits);
        let cap = precision.max_bits;
        let values: Vec<CertifiedReal> = values
            .into_iter()
            .map(|v| v.refine(bits))
            .map(|v| {
                // Enclosures finer than the cap are widened so the cap really binds.
                if v.is_exact() || v.bits() <= cap {
                    v
                } else {
                    CertifiedReal::from_enclosure(floor_dyadic(v.lo(), cap), ceil_dyadic(v.hi(), cap))
                }
            })
            .collect();
        let fix_bits = FIX_BITS.min(precision.max_bits);
        let mut lo = Vec::with_capacity(values.len());
        let mut hi = Vec::with_capacity(values.len());
        let mut ok = true;
        for v in &values {
            let l = floor_dyadic(v.lo(), fix_bits);
            let h = ceil_dyadic(v.hi(), fix_bits);
            let sc = BigRational::from_integer(BigInt::from(1) << fix_bits);
            let li: Option<i128> = (l * &sc).to_integer().try_into().ok();
            let hi_: Option<i128> = (h * &sc).to_integer().try_into().ok();
            match (li, hi_) {
                (Some(a), Some(b)) if a.abs() < 1 << 100 && b.abs() < 1 << 100 => {
                    lo.push(a);
                    hi.push(b);
                }
                _ => ok = false,
            }
        }
        Arc::new(Base {
            values,
            relations,
            fix: if ok { Some((lo, hi)) } else { None },
            precision,
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[CertifiedReal] {
        &self.values
    }

    pub fn relations(&self) -> Option<&RowSpace> {
        self.relations.as_ref()
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Enclosure of `sum_i f_i v_i`.
    pub fn eval(&self, f: &[i128]) -> CertifiedReal {
        let terms: Vec<(BigInt, CertifiedReal)> = f
            .iter()
            .zip(&self.values)
            .filter(|(c, _)| **c != 0)
            .map(|(c, v)| (BigInt::from(*c), v.clone()))
            .collect();
        if terms.is_empty() {
            return CertifiedReal::zero();
        }
        CertifiedReal::linear_combination(&terms)
    }

    fn fast_sign(&self, f: &[i128]) -> Option<Comparison> {
        let (lo, hi) = self.fix.as_ref()?;
        let mut s_lo: i128 = 0;
        let mut s_hi: i128 = 0;
        for ((c, l), h) in f.iter().zip(lo).zip(hi) {
            if *c == 0 {
                continue;
            }
            let (a, b) = if *c > 0 { (l, h) } else { (h, l) };
            s_lo = s_lo.checked_add(c.checked_mul(*a)?)?;
            s_hi = s_hi.checked_add(c.checked_mul(*b)?)?;
        }
        if s_lo > 0 {
            Some(Comparison::Greater)
        } else if s_hi < 0 {
            Some(Comparison::Less)
        } else {
            None
        }
    }

    /// Sign of the form's value.
    pub fn sign(&self, f: &[i128]) -> Comparison {
        if f.iter().all(|&c| c == 0) {
            return Comparison::Equal;
        }
        if let Some(c) = self.fast_sign(f) {
            return c;
        }
        if let Some(rel) = &self.relations {
            let fb: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
            if rel.contains_int(&fb) {
                return Comparison::Equal;
            }
        }
        let v = self.eval(f);
        v.sign(self.precision.max_bits)
    }
}

/// A point `num / den` with `num` a form and `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub num: Form,
    pub den: i128,
}

impl Point {
    pub fn from_form(num: Form) -> Self {
        Point { num, den: 1 }
    }

    pub fn zero(dim: usize) -> Self {
        Point::from_form(vec![0; dim])
    }

    /// `(a * (d - t) + b * t) / d` for forms `a`, `b`.
    pub fn between(a: &[i128], b: &[i128], t: i128, d: i128) -> Self {
        assert!(d > 0 && 0 <= t && t <= d);
        Point {
            num: a.iter().zip(b).map(|(x, y)| x * (d - t) + y * t).collect(),
            den: d,
        }
        .reduced()
    }

    pub fn translate(&self, off: &[i128]) -> Self {
        Point {
            num: self
                .num
                .iter()
                .zip(off)
                .map(|(x, o)| x + self.den * o)
                .collect(),
            den: self.den,
        }
    }

    pub fn translate_back(&self, off: &[i128]) -> Self {
        Point {
            num: self
                .num
                .iter()
                .zip(off)
                .map(|(x, o)| x - self.den * o)
                .collect(),
            den: self.den,
        }
    }

    pub fn reduced(self) -> Self {
        let g = self
            .num
            .iter()
            .fold(self.den, |g, &x| num_integer::Integer::gcd(&g, &x));
        if g <= 1 {
            return self;
        }
        Point {
            num: self.num.iter().map(|x| x / g).collect(),
            den: self.den / g,
        }
    }

    /// `self - other` as a form scaled by both denominators.
    pub fn diff_form(&self, other: &Point) -> Form {
        self.num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * other.den - b * self.den)
            .collect()
    }

    pub fn value(&self, base: &Base) -> CertifiedReal {
        let v = base.eval(&self.num);
        if self.den == 1 {
            v
        } else {
            v.mul_rat(&BigRational::new(BigInt::from(1), BigInt::from(self.den)))
        }
    }
}

/// Lengths `lambda_1..lambda_m` as forms over a shared base.
#[derive(Clone, Debug)]
pub struct LengthVector {
    base: Arc<Base>,
    forms: Vec<Form>,
    provenance: Provenance,
}

pub fn add_forms(a: &[i128], b: &[i128]) -> Form {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_forms(a: &[i128], b: &[i128]) -> Form {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_form(a: &[i128], c: i128) -> Form {
    a.iter().map(|x| x * c).collect()
}

impl LengthVector {
    pub fn new(base: Arc<Base>, forms: Vec<Form>, provenance: Provenance) -> Self {
        assert!(forms.iter().all(|f| f.len() == base.dim()));
        LengthVector {
            base,
            forms,
            provenance,
        }
    }

    /// The base values themselves, one length each.
    pub fn from_base(base: Arc<Base>, provenance: Provenance) -> Self {
        let d = base.dim();
        let forms = (0..d)
            .map(|i| {
                let mut f = vec![0; d];
                f[i] = 1;
                f
            })
            .collect();
        LengthVector {
            base,
            forms,
            provenance,
        }
    }

    pub fn from_rationals(values: &[BigRational], precision: Precision) -> Self {
        let reals = values.iter().map(|q| CertifiedReal::exact(q.clone())).collect();
        let base = Base::new(reals, None, precision);
        Self::from_base(
            base,
            Provenance::Rational {
                values: values.iter().map(|q| q.to_string()).collect(),
            },
        )
    }

    /// Convenience for small rationals `n_i / d_i`.
    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        let q: Vec<BigRational> = v
            .iter()
            .map(|&(n, d)| BigRational::new(n.into(), d.into()))
            .collect();
        Self::from_rationals(&q, Precision::default())
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    /// Form of `lambda_i`, 1-based.
    pub fn form(&self, i: usize) -> &Form {
        &self.forms[i - 1]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn total_form(&self) -> Form {
        let mut t = vec![0; self.base.dim()];
        for f in &self.forms {
            t = add_forms(&t, f);
        }
        t
    }

    pub fn value(&self, i: usize) -> CertifiedReal {
        self.base.eval(self.form(i))
    }

    pub fn values(&self) -> Vec<CertifiedReal> {
        (1..=self.m()).map(|i| self.value(i)).collect()
    }

    pub fn total(&self) -> CertifiedReal {
        self.base.eval(&self.total_form())
    }

    pub fn sign(&self, f: &[i128]) -> Comparison {
        self.base.sign(f)
    }

    /// Compare two points over this base.
    pub fn compare_points(&self, a: &Point, b: &Point) -> Comparison {
        self.base.sign(&a.diff_form(b))
    }

    /// Every length positive, or nonnegative when `allow_zero`.
    pub fn check_positive(&self, allow_zero: bool) -> Result<()> {
        for i in 1..=self.m() {
            match self.sign(self.form(i)) {
                Comparison::Greater => {}
                Comparison::Equal if allow_zero => {}
                Comparison::Equal | Comparison::Less => {
                    return Err(Error::InvalidInput(format!("length {i} is not positive")))
                }
                Comparison::Ambiguous => {
                    return Err(Error::AmbiguousComparison(format!("sign of length {i}")))
                }
            }
        }
        Ok(())
    }

    /// `(0, lambda_1, ..., lambda_m, 0)`.
    pub fn lifted(&self) -> LengthVector {
        let d = self.base.dim();
        let mut forms = vec![vec![0; d]];
        forms.extend(self.forms.iter().cloned());
        forms.push(vec![0; d]);
        LengthVector {
            base: self.base.clone(),
            forms,
            provenance: Provenance::Lifted {
                parent: Box::new(self.provenance.clone()),
            },
        }
    }

    /// Same base, new forms.
    pub fn with_forms(&self, forms: Vec<Form>, provenance: Provenance) -> LengthVector {
        LengthVector::new(self.base.clone(), forms, provenance)
    }

    /// Largest absolute coefficient over all forms.
    pub fn max_coefficient(&self) -> i128 {
        self.forms
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero_form(f: &[i128]) -> bool {
        f.iter().all(|x| *x == 0)
    }

    pub fn approx(&self) -> Vec<f64> {
        self.values().iter().map(|v| v.to_f64()).collect()
    }

    /// Decide whether the base value of a rational combination is zero.
    pub fn is_zero_value(&self, f: &[i128]) -> Result<bool> {
        match self.sign(f) {
            Comparison::Equal => Ok(true),
            Comparison::Ambiguous => Err(Error::AmbiguousComparison("zero test".into())),
            _ => Ok(false),
        }
    }
}

/// Square roots of rationals as a base; the relation space is trivial when the radicands
/// are distinct primes.
pub fn sqrt_base(radicands: &[BigRational], scales: &[BigRational], precision: Precision) -> Arc<Base> {
    let values: Vec<CertifiedReal> = radicands
        .iter()
        .zip(scales)
        .map(|(r, s)| CertifiedReal::sqrt_rational(r.clone()).mul_rat(s))
        .collect();
    let n = values.len();
    Base::new(values, Some(RowSpace::zero(n)), precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_signs_are_exact() {
        let l = LengthVector::from_ratios(&[(1, 3), (1, 3), (1, 3)]);
        assert_eq!(l.sign(&[1, -1, 0]), Comparison::Equal);
        assert_eq!(l.sign(&[2, -1, 0]), Comparison::Greater);
    }

    #[test]
    fn sqrt_prime_base_separates() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let base = sqrt_base(&[q(2), q(3)], &[q(1), q(1)], Precision::default());
        assert_eq!(base.sign(&[0, 0]), Comparison::Equal);
        // 11 sqrt2 - 9 sqrt3 = 15.556 - 15.588 < 0
        assert_eq!(base.sign(&[11, -9]), Comparison::Less);
        // huge coefficients fall back to refinement
        assert_eq!(
            base.sign(&[i128::MAX / 4, -(i128::MAX / 4)]),
            Comparison::Less
        );
    }

    #[test]
    fn point_between_and_reduce() {
        let p = Point::between(&[0, 0], &[2, 4], 1, 2);
        assert_eq!(p, Point { num: vec![1, 2], den: 1 });
    }
}
