//! Interval exchange transformations.
//!
//! `T` exchanges the half-open intervals `Delta_i = [beta_{i-1}, beta_i)` by
//! translating `Delta_i` by `offset_i = sum_{pi(j) < pi(i)} lambda_j - sum_{j < i} lambda_j`.
//! Points, breakpoints and offsets are integer forms over the base of the length
//! vector, so every comparison is either exact or explicitly ambiguous.

pub mod lengths;
pub mod word;

use std::cell::Cell;
use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::certified::{compare, CertifiedReal, Comparison};
use crate::perm::Permutation;

pub use lengths::{add_forms, sub_forms, Base, Form, LengthVector, Point, Precision, Provenance};
pub use word::{population, Word};

/// Lengths and permutation of an IET.
#[derive(Clone, Debug)]
pub struct IetPair {
    pub lengths: LengthVector,
    pub perm: Permutation,
}

impl IetPair {
    /// Strictly positive lengths and an irreducible permutation.
    pub fn new(lengths: LengthVector, perm: Permutation) -> Result<Self> {
        Self::check_dims(&lengths, &perm)?;
        perm.require_irreducible()?;
        lengths.check_positive(false)?;
        Ok(IetPair { lengths, perm })
    }

    /// Nonnegative lengths; used only for lifted configurations.
    pub fn new_allow_zero(lengths: LengthVector, perm: Permutation) -> Result<Self> {
        Self::check_dims(&lengths, &perm)?;
        lengths.check_positive(true)?;
        Ok(IetPair { lengths, perm })
    }

    fn check_dims(lengths: &LengthVector, perm: &Permutation) -> Result<()> {
        if lengths.m() != perm.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} lengths for a permutation of size {}",
                lengths.m(),
                perm.m()
            )));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.perm.m()
    }
}

/// Half-open interval `[left, right)` whose endpoints are `T^{-j} beta_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordInterval {
    pub left: Form,
    pub right: Form,
    /// `(j, t)` with `left = T^{-j} beta_t`.
    pub left_origin: (usize, usize),
    pub right_origin: (usize, usize),
}

impl WordInterval {
    pub fn length_form(&self) -> Form {
        sub_forms(&self.right, &self.left)
    }
}

/// Finite-horizon verdict on the infinite distinct orbit condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IdocVerdict {
    PassUpToN { n: usize },
    FailWithCertificate { first: (usize, usize), second: (usize, usize), reason: String },
    Unknown { first: (usize, usize), second: (usize, usize) },
}

impl IdocVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, IdocVerdict::PassUpToN { .. })
    }
}

/// An IET ready for evaluation.
#[derive(Clone, Debug)]
pub struct IetMap {
    pair: IetPair,
    betas: Vec<Form>,
    image_starts: Vec<Form>,
    offsets: Vec<Form>,
    total: Form,
}

fn ambiguous(what: &str) -> Error {
    Error::AmbiguousInterval(what.to_string())
}

impl IetMap {
    pub fn new(pair: IetPair) -> Self {
        let m = pair.m();
        let l = &pair.lengths;
        let d = l.base().dim();
        let mut betas = vec![vec![0i128; d]];
        for i in 1..=m {
            let next = add_forms(&betas[i - 1], l.form(i));
            betas.push(next);
        }
        // image_starts[p] = sum of lengths of intervals placed before position p+1.
        let mut image_starts = vec![vec![0i128; d]];
        for p in 1..=m {
            let i = pair.perm.inv_at(p);
            let next = add_forms(&image_starts[p - 1], l.form(i));
            image_starts.push(next);
        }
        let offsets = (1..=m)
            .map(|i| sub_forms(&image_starts[pair.perm.at(i) - 1], &betas[i - 1]))
            .collect();
        let total = betas[m].clone();
        IetMap {
            pair,
            betas,
            image_starts,
            offsets,
            total,
        }
    }

    pub fn from_parts(lengths: LengthVector, perm: Permutation) -> Result<Self> {
        Ok(Self::new(IetPair::new(lengths, perm)?))
    }

    pub fn pair(&self) -> &IetPair {
        &self.pair
    }

    pub fn perm(&self) -> &Permutation {
        &self.pair.perm
    }

    pub fn lengths(&self) -> &LengthVector {
        &self.pair.lengths
    }

    pub fn m(&self) -> usize {
        self.pair.m()
    }

    pub fn base(&self) -> &Base {
        self.pair.lengths.base()
    }

    pub fn dim(&self) -> usize {
        self.base().dim()
    }

    /// `beta_s` for `s = 0..=m`.
    pub fn beta(&self, s: usize) -> &Form {
        &self.betas[s]
    }

    pub fn betas(&self) -> &[Form] {
        &self.betas
    }

    /// Translation applied on `Delta_i`, 1-based.
    pub fn offset(&self, i: usize) -> &Form {
        &self.offsets[i - 1]
    }

    pub fn total(&self) -> &Form {
        &self.total
    }

    pub fn sign(&self, f: &[i128]) -> Comparison {
        self.base().sign(f)
    }

    fn cmp_forms(&self, a: &[i128], b: &[i128]) -> Comparison {
        self.sign(&sub_forms(a, b))
    }

    fn le_point(&self, f: &Form, x: &Point) -> Result<bool> {
        let p = Point::from_form(f.clone());
        match self.pair.lengths.compare_points(&p, x) {
            Comparison::Less | Comparison::Equal => Ok(true),
            Comparison::Greater => Ok(false),
            Comparison::Ambiguous => Err(ambiguous("point against breakpoint")),
        }
    }

    fn check_domain(&self, x: &Point) -> Result<()> {
        if !self.le_point(&self.betas[0], x)? || self.le_point(&self.total, x)? {
            return Err(Error::OutOfDomain);
        }
        Ok(())
    }

    /// Largest `s` in `0..m` with `starts[s] <= x`.
    fn search(&self, starts: &[Form], x: &Point) -> Result<usize> {
        let m = self.m();
        let (mut lo, mut hi) = (0usize, m - 1);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.le_point(&starts[mid], x)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        Ok(lo)
    }

    /// Index `i` with `x` in `Delta_i`.
    pub fn locate(&self, x: &Point) -> Result<usize> {
        self.check_domain(x)?;
        Ok(self.search(&self.betas, x)? + 1)
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        let i = self.locate(x)?;
        Ok(x.translate(&self.offsets[i - 1]))
    }

    pub fn apply_inv(&self, x: &Point) -> Result<Point> {
        self.check_domain(x)?;
        let p = self.search(&self.image_starts, x)? + 1;
        let i = self.pair.perm.inv_at(p);
        Ok(x.translate_back(&self.offsets[i - 1]))
    }

    /// `T^n x` for `n` of either sign.
    pub fn iterate(&self, x: &Point, n: i64) -> Result<Point> {
        let mut y = x.clone();
        if n >= 0 {
            for _ in 0..n {
                y = self.apply(&y)?;
            }
        } else {
            for _ in 0..(-n) {
                y = self.apply_inv(&y)?;
            }
        }
        Ok(y)
    }

    /// `x, Tx, ..., T^{n-1} x`.
    pub fn orbit(&self, x: &Point, n: usize) -> Result<Vec<Point>> {
        let mut out = Vec::with_capacity(n);
        let mut y = x.clone();
        for k in 0..n {
            if k > 0 {
                y = self.apply(&y)?;
            }
            out.push(y.clone());
        }
        Ok(out)
    }

    pub fn code_orbit(&self, x: &Point, n: usize) -> Result<Word> {
        let mut w = Vec::with_capacity(n);
        let mut y = x.clone();
        for k in 0..n {
            if k > 0 {
                y = self.apply(&y)?;
            }
            w.push(self.locate(&y)?);
        }
        Ok(Word::new(w))
    }

    fn breakpoint_values(&self, bits: u32) -> Vec<CertifiedReal> {
        self.betas
            .iter()
            .map(|b| self.base().eval(b).refine(bits))
            .collect()
    }

    fn locate_real_in(&self, starts: &[CertifiedReal], x: &CertifiedReal) -> Result<usize> {
        let max = self.base().precision().max_bits;
        let m = self.m();
        let total = &starts[m];
        let c0 = compare(x, &starts[0], max);
        let ct = compare(x, total, max);
        if matches!(c0, Comparison::Ambiguous) || matches!(ct, Comparison::Ambiguous) {
            return Err(ambiguous("real point against domain ends"));
        }
        if c0 == Comparison::Less || ct != Comparison::Less {
            return Err(Error::OutOfDomain);
        }
        let mut best = 0;
        for (s, b) in starts.iter().enumerate().take(m).skip(1) {
            match compare(x, b, max) {
                Comparison::Greater | Comparison::Equal => best = s,
                Comparison::Less => break,
                Comparison::Ambiguous => return Err(ambiguous("real point straddles a breakpoint")),
            }
        }
        Ok(best)
    }

    /// `T x` for an enclosed real `x`.
    pub fn apply_real(&self, x: &CertifiedReal) -> Result<CertifiedReal> {
        let starts = self.breakpoint_values(self.base().precision().working_bits);
        let s = self.locate_real_in(&starts, x)?;
        Ok(x.add(&self.base().eval(&self.offsets[s])))
    }

    pub fn apply_inv_real(&self, x: &CertifiedReal) -> Result<CertifiedReal> {
        let bits = self.base().precision().working_bits;
        let starts: Vec<CertifiedReal> = self
            .image_starts
            .iter()
            .map(|b| self.base().eval(b).refine(bits))
            .collect();
        let p = self.locate_real_in(&starts, x)? + 1;
        let i = self.pair.perm.inv_at(p);
        Ok(x.sub(&self.base().eval(&self.offsets[i - 1])))
    }

    pub fn code_orbit_real(&self, x: &CertifiedReal, n: usize) -> Result<Word> {
        let starts = self.breakpoint_values(self.base().precision().working_bits);
        let mut w = Vec::with_capacity(n);
        let mut y = x.clone();
        for k in 0..n {
            let s = self.locate_real_in(&starts, &y)?;
            w.push(s + 1);
            if k + 1 < n {
                y = y.add(&self.base().eval(&self.offsets[s]));
            }
        }
        Ok(Word::new(w))
    }

    /// `Delta_i` as a word interval.
    pub fn delta(&self, i: usize) -> WordInterval {
        WordInterval {
            left: self.betas[i - 1].clone(),
            right: self.betas[i].clone(),
            left_origin: (0, i - 1),
            right_origin: (0, i),
        }
    }

    /// Whether `[left, right)` is empty.
    pub fn is_empty_interval(&self, left: &[i128], right: &[i128]) -> Result<bool> {
        match self.cmp_forms(left, right) {
            Comparison::Less => Ok(false),
            Comparison::Equal | Comparison::Greater => Ok(true),
            Comparison::Ambiguous => Err(ambiguous("interval endpoints")),
        }
    }

    /// `I_w = {x : T^j x in Delta_{w_j} for j < |w|}`, or `None` when empty.
    pub fn word_interval(&self, w: &Word) -> Result<Option<WordInterval>> {
        w.check_alphabet(self.m())?;
        let syms = w.symbols();
        if syms.is_empty() {
            return Ok(Some(WordInterval {
                left: self.betas[0].clone(),
                right: self.total.clone(),
                left_origin: (0, 0),
                right_origin: (0, self.m()),
            }));
        }
        let mut cur = self.delta(syms[0]);
        if self.is_empty_interval(&cur.left, &cur.right)? {
            return Ok(None);
        }
        let mut shift = vec![0i128; self.dim()];
        for (j, &s) in syms.iter().enumerate().skip(1) {
            let off = &self.offsets[syms[j - 1] - 1];
            shift = add_forms(&shift, off);
            let l = add_forms(&cur.left, off);
            let r = add_forms(&cur.right, off);
            let d = self.delta(s);
            let (left, left_origin) = match self.cmp_forms(&l, &d.left) {
                Comparison::Less => (d.left, (j, s - 1)),
                Comparison::Greater | Comparison::Equal => (l, cur.left_origin),
                Comparison::Ambiguous => return Err(ambiguous("word interval left end")),
            };
            let (right, right_origin) = match self.cmp_forms(&r, &d.right) {
                Comparison::Greater => (d.right, (j, s)),
                Comparison::Less | Comparison::Equal => (r, cur.right_origin),
                Comparison::Ambiguous => return Err(ambiguous("word interval right end")),
            };
            if self.is_empty_interval(&left, &right)? {
                return Ok(None);
            }
            cur = WordInterval {
                left,
                right,
                left_origin,
                right_origin,
            };
        }
        Ok(Some(WordInterval {
            left: sub_forms(&cur.left, &shift),
            right: sub_forms(&cur.right, &shift),
            left_origin: cur.left_origin,
            right_origin: cur.right_origin,
        }))
    }

    pub fn in_language(&self, w: &Word) -> Result<bool> {
        Ok(self.word_interval(w)?.is_some())
    }

    /// `w w_0` is in the language of `T`.
    pub fn is_recurrence_word(&self, w: &Word) -> Result<bool> {
        if w.is_empty() {
            return Ok(false);
        }
        self.in_language(&w.with_first_appended())
    }

    /// Translation of `T^{|w|}` on `I_w`.
    pub fn word_translation(&self, w: &Word) -> Form {
        let mut t = vec![0i128; self.dim()];
        for &s in w.symbols() {
            t = add_forms(&t, &self.offsets[s - 1]);
        }
        t
    }

    /// `T^{-j} beta_t`, `0 <= j <= n`, each inner breakpoint `t`. `None` when an inner
    /// breakpoint sits at the right end of the domain, where `T^{-1}` is undefined.
    pub fn breakpoint_preorbits(&self, n: usize) -> Result<Option<Vec<(Form, usize, usize)>>> {
        let m = self.m();
        let mut pts = Vec::with_capacity((n + 1) * (m - 1));
        for t in 1..m {
            if self.cmp_forms(&self.betas[t], &self.total) == Comparison::Equal {
                return Ok(None);
            }
            let mut y = Point::from_form(self.betas[t].clone());
            pts.push((y.num.clone(), 0, t));
            for j in 1..=n {
                y = self.apply_inv(&y)?;
                pts.push((y.num.clone(), j, t));
            }
        }
        Ok(Some(pts))
    }

    /// Checks that the points `T^{-j} beta_t` (`0 <= j <= n`, `1 <= t < m`) are pairwise distinct.
    pub fn idoc_heuristic(&self, n: usize) -> IdocVerdict {
        let m = self.m();
        for t in 1..m {
            if self.cmp_forms(&self.betas[t], &self.total) == Comparison::Equal {
                return IdocVerdict::FailWithCertificate {
                    first: (0, t),
                    second: (0, m),
                    reason: format!("breakpoint beta_{t} coincides with the right end of the domain"),
                };
            }
        }
        let pts = match self.breakpoint_preorbits(n) {
            Ok(Some(p)) => p,
            Ok(None) => unreachable!("checked above"),
            Err(_) => {
                return IdocVerdict::Unknown {
                    first: (0, 0),
                    second: (0, 0),
                }
            }
        };
        let mut idx: Vec<usize> = (0..pts.len()).collect();
        let ambiguous_seen = Cell::new(false);
        idx.sort_by(|&a, &b| match self.cmp_forms(&pts[a].0, &pts[b].0) {
            Comparison::Less => Ordering::Less,
            Comparison::Greater => Ordering::Greater,
            Comparison::Equal => Ordering::Equal,
            Comparison::Ambiguous => {
                ambiguous_seen.set(true);
                Ordering::Equal
            }
        });
        let label = |k: usize| (pts[k].1, pts[k].2);
        let mut unknown = None;
        for w in idx.windows(2) {
            match self.cmp_forms(&pts[w[0]].0, &pts[w[1]].0) {
                Comparison::Less => {}
                Comparison::Equal => {
                    return IdocVerdict::FailWithCertificate {
                        first: label(w[0]),
                        second: label(w[1]),
                        reason: "orbit points coincide exactly".into(),
                    }
                }
                Comparison::Greater | Comparison::Ambiguous => {
                    if unknown.is_none() {
                        unknown = Some((label(w[0]), label(w[1])));
                    }
                }
            }
        }
        match unknown {
            Some((first, second)) => IdocVerdict::Unknown { first, second },
            None => IdocVerdict::PassUpToN { n },
        }
    }

    /// Length of `[left, right)` as an enclosure.
    pub fn measure(&self, left: &[i128], right: &[i128]) -> CertifiedReal {
        self.base().eval(&sub_forms(right, left))
    }

    /// `(a, b)` in the interval `[left, right)`, as a rational point.
    pub fn interior_point(&self, left: &Form, right: &Form, t: i128, d: i128) -> Point {
        Point::between(left, right, t, d)
    }
}

/// `lengths` field of the IET JSON format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LengthsSpec {
    /// Strings such as `"1/3"`.
    Rational { values: Vec<String> },
    /// Decimal strings such as `"0.25"`, read exactly.
    Decimal { values: Vec<String> },
    /// The normalized eigenvector of a closed primitive path.
    PfEigenvector { path: crate::rauzy::RauzyPath },
}

/// IET JSON: `{"permutation": [...], "lengths": {...}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IetSpec {
    pub permutation: Vec<usize>,
    pub lengths: LengthsSpec,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    parse_decimal(s)
}

pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a decimal number: {s:?}"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = if digits.is_empty() {
        BigInt::from(0)
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(n, d);
    Ok(if neg { -q } else { q })
}

impl IetSpec {
    pub fn build(&self, precision: Precision) -> Result<IetMap> {
        let perm = Permutation::new(self.permutation.clone())?;
        let lengths = match &self.lengths {
            LengthsSpec::Rational { values } | LengthsSpec::Decimal { values } => {
                let q = values
                    .iter()
                    .map(|v| parse_rational(v))
                    .collect::<Result<Vec<_>>>()?;
                LengthVector::from_rationals(&q, precision)
            }
            LengthsSpec::PfEigenvector { path } => {
                if path.start != perm {
                    return Err(Error::InvalidInput(
                        "path must start at the given permutation".into(),
                    ));
                }
                let p = crate::subst::periodic_iet_from_path(path, precision)?;
                return Ok(p.iet);
            }
        };
        IetMap::from_parts(lengths, perm)
    }
}
