//! Witness certificates for odd `m`: lifting, perturbation budgets, perturbation
//! draws, transfer along Rauzy paths to the symmetric permutation, and the full
//! pipeline that chains them.
//!
//! Every certificate is re-verified from scratch by direct computation on the IET
//! it carries: both word intervals nonempty, both recurrence extensions nonempty,
//! the population difference equal to `b(S)` for a cyclic set `S` of the
//! permutation, and the finite-horizon IDOC check.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::golden;
use crate::iet::lengths::scale_form;
use crate::iet::{add_forms, sub_forms, Base, Form, IetMap, IetPair, LengthVector, Point, Precision, Provenance, Word};
use crate::numerics::certified::{compare, floor_dyadic, CertifiedReal, Comparison};
use crate::numerics::linalg::{IntVector, RowSpace};
use crate::perm::{CyclicSet, Permutation};
use crate::rauzy::{compose_path, closed_primitive_paths_of_length, rauzy_class, transport_along, RauzyPath};
use crate::subst::{find_witness_pair, periodic_iet_from_path, replay_path, substitution_of_path};

/// Default horizon for the IDOC check on certificates.
pub const DEFAULT_IDOC_HORIZON: usize = 1000;

/// Largest `m` handled by [`full_reduction`] unless configured otherwise.
pub const DEFAULT_REDUCTION_CAP: usize = 9;

/// Primes whose square roots give perturbation directions.
const PRIMES: [u64; 10] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// One line of a verification transcript.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscriptEntry {
    pub stage: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl TranscriptEntry {
    pub fn new(stage: &str, check: &str, passed: bool, detail: impl Into<String>) -> Self {
        TranscriptEntry {
            stage: stage.to_string(),
            check: check.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// `K`, the separation `delta` of the breakpoint orbit points within the horizon, and
/// the perturbation radius `epsilon = delta / (20 m (2K + 4))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationBudget {
    pub k: usize,
    pub m: usize,
    pub delta: BigRational,
    pub epsilon: BigRational,
    /// Number of distinct orbit points entering the minimum.
    pub points: usize,
}

impl PerturbationBudget {
    /// `m (2K + 4) epsilon < delta / 10`.
    pub fn satisfies_bound(&self) -> bool {
        let lhs = &self.epsilon * BigRational::from_integer(BigInt::from(self.m * (2 * self.k + 4)));
        let rhs = &self.delta / BigRational::from_integer(BigInt::from(10));
        self.epsilon > BigRational::zero() && lhs < rhs
    }

    /// `(delta, epsilon)` as floats, for reporting.
    pub fn approx(&self) -> (f64, f64) {
        (
            self.delta.to_f64().unwrap_or(f64::NAN),
            self.epsilon.to_f64().unwrap_or(f64::NAN),
        )
    }
}

fn ambiguous(what: &str) -> Error {
    Error::AmbiguousComparison(what.to_string())
}

/// Points `T^j beta_t` for `|j| <= horizon` and `0 <= t < m`, skipping breakpoints that
/// sit at the right end of the domain. Each entry is `(point, j, t)`.
fn orbit_points(t: &IetMap, horizon: usize) -> Result<Vec<(Point, i64, usize)>> {
    let mut out = Vec::new();
    let total = Point::from_form(t.total().clone());
    for s in 0..t.m() {
        let b = Point::from_form(t.beta(s).clone());
        if t.lengths().compare_points(&b, &total) != Comparison::Less {
            continue;
        }
        out.push((b.clone(), 0, s));
        let mut fwd = b.clone();
        let mut back = b;
        for j in 1..=horizon as i64 {
            fwd = t.apply(&fwd)?;
            back = t.apply_inv(&back)?;
            out.push((fwd.clone(), j, s));
            out.push((back.clone(), -j, s));
        }
    }
    Ok(out)
}

/// Lower bound, strictly below the true value, for a certified-positive form.
fn positive_lower_bound(base: &Base, f: &[i128], den: i128) -> Result<BigRational> {
    let mut v = base.eval(f);
    if den != 1 {
        v = v.mul_rat(&BigRational::new(BigInt::one(), BigInt::from(den)));
    }
    let v = v
        .separate_from_zero(base.precision().max_bits)
        .ok_or_else(|| ambiguous("orbit gap"))?;
    if v.lo() <= &BigRational::zero() {
        return Err(ambiguous("orbit gap"));
    }
    let shrink = BigRational::new(BigInt::from((1u64 << 20) - 1), BigInt::from(1u64 << 20));
    Ok(floor_dyadic(&(v.lo() * shrink), 128))
}

/// Budget for horizon `k`. Coincident orbit points (from breakpoints that agree, as in
/// lifted length vectors with zero entries) are merged before taking the minimum gap.
pub fn perturbation_budget(t: &IetMap, k: usize) -> Result<PerturbationBudget> {
    let mut pts: Vec<Point> = orbit_points(t, k + 1)?.into_iter().map(|(p, _, _)| p).collect();
    pts.push(Point::from_form(t.total().clone()));
    let l = t.lengths();
    let mut err = None;
    pts.sort_by(|a, b| {
        l.compare_points(a, b).to_ordering().unwrap_or_else(|| {
            err = Some(ambiguous("orbit point order"));
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    pts.dedup_by(|a, b| l.compare_points(a, b) == Comparison::Equal);
    let mut delta: Option<BigRational> = None;
    for w in pts.windows(2) {
        let g = positive_lower_bound(t.base(), &w[1].diff_form(&w[0]), w[0].den * w[1].den)?;
        if delta.as_ref().is_none_or(|d| &g < d) {
            delta = Some(g);
        }
    }
    let delta = delta.ok_or_else(|| Error::InvalidInput("fewer than two orbit points".into()))?;
    let m = t.m();
    let epsilon = &delta / BigRational::from_integer(BigInt::from(20 * m * (2 * k + 4)));
    Ok(PerturbationBudget {
        k,
        m,
        delta,
        epsilon,
        points: pts.len(),
    })
}

fn pad(f: &[i128], extra: usize) -> Form {
    let mut g = f.to_vec();
    g.extend(std::iter::repeat_n(0, extra));
    g
}

/// `base` with `extra` appended; known relations are carried over unchanged.
fn extend_base(base: &Base, extra: Vec<CertifiedReal>) -> Arc<Base> {
    let d = base.dim();
    let k = extra.len();
    let relations = base.relations().map(|r| {
        let padded: Vec<Vec<BigRational>> = r
            .basis()
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.extend(std::iter::repeat_n(BigRational::zero(), k));
                v
            })
            .collect();
        RowSpace::span(d + k, &padded)
    });
    let mut values = base.values().to_vec();
    values.extend(extra);
    Base::new(values, relations, base.precision())
}

/// An IET and one perturbation of it, over a common base.
#[derive(Clone, Debug)]
pub struct PerturbedPair {
    /// The original map with forms padded to the extended base.
    pub reference: IetMap,
    pub perturbed: IetMap,
    pub draw: usize,
    pub primes: Vec<u64>,
}

/// Draw `draw` for `seed`: `lambda'_i = lambda_i + d_i` with `d_i = +-u_i r_i sqrt(p_i)`,
/// `|d_i| < epsilon / m` for `i < m`, and `d_m = -sum d_i`, so `|lambda'| = |lambda|`.
/// Entries that are zero in `lambda` get positive `d_i`. Lengths are not checked here.
pub fn perturb(t: &IetMap, budget: &PerturbationBudget, seed: u64, draw: usize) -> Result<PerturbedPair> {
    let m = t.m();
    if m - 1 > PRIMES.len() {
        return Err(Error::BadSize {
            m,
            reason: format!("at most {} perturbation directions", PRIMES.len()),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(draw as u64);
    let d = t.dim();
    let lengths = t.lengths();
    let zero_entries: Vec<bool> = (1..=m)
        .map(|i| lengths.sign(lengths.form(i)) == Comparison::Equal)
        .collect();
    let primes: Vec<u64> = PRIMES[..m - 1].to_vec();
    let denom = BigInt::from(1u64 << 24);
    let mut extra = Vec::with_capacity(m - 1);
    for (i, &p) in primes.iter().enumerate() {
        let u: u64 = rng.gen_range(1u64 << 22..1u64 << 24);
        let negative = !zero_entries[i] && rng.gen_bool(0.5);
        let root_ceil = (p as f64).sqrt().ceil() as i64 + 1;
        let mut scale = BigRational::new(BigInt::from(u), denom.clone()) * &budget.epsilon
            / BigRational::from_integer(BigInt::from(m as i64 * root_ceil));
        if negative {
            scale = -scale;
        }
        extra.push(CertifiedReal::sqrt_rational(BigRational::from_integer(BigInt::from(p))).mul_rat(&scale));
    }
    let k = extra.len();
    let base = extend_base(t.base(), extra);
    let padded: Vec<Form> = lengths.forms().iter().map(|f| pad(f, k)).collect();
    let reference_lengths = LengthVector::new(base.clone(), padded.clone(), lengths.provenance().clone());
    let mut forms = padded;
    for (i, f) in forms.iter_mut().enumerate().take(m - 1) {
        f[d + i] += 1;
    }
    for j in 0..k {
        forms[m - 1][d + j] -= 1;
    }
    let perturbed_lengths = LengthVector::new(
        base,
        forms,
        Provenance::Perturbation {
            parent: Box::new(lengths.provenance().clone()),
            seed,
            draw,
            primes: primes.clone(),
        },
    );
    let perm = t.perm().clone();
    Ok(PerturbedPair {
        reference: IetMap::new(IetPair::new_allow_zero(reference_lengths, perm.clone())?),
        perturbed: IetMap::new(IetPair::new_allow_zero(perturbed_lengths, perm)?),
        draw,
        primes,
    })
}

/// Outcome of the finite-horizon perturbation lemma checks for one draw.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub draw: usize,
    /// Every entry within `epsilon` and the total unchanged.
    pub in_neighborhood: bool,
    /// `|T^j beta_t - T_eps^j beta^eps_t| < m (2|j| + 1) eps` at every tested `(j, t)`.
    pub displacement: bool,
    /// Matching orbit points lie in intervals with the same index.
    pub same_interval: bool,
    /// Order of the points `T^{-s} beta_t`, `0 <= s <= K`, is preserved.
    pub order: bool,
    /// `|I^eps_w| >= 4/5 |I_w|` for every word of length `K + 1`.
    pub interval_bound: bool,
    /// `I^eps_w` lies in the cylinder of `w` for the perturbed map.
    pub containment: bool,
    pub words: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.in_neighborhood
            && self.displacement
            && self.same_interval
            && self.order
            && self.interval_bound
            && self.containment
    }
}

fn abs_below(v: &CertifiedReal, bound: &BigRational, max_bits: u32) -> bool {
    let b = CertifiedReal::exact(bound.clone());
    compare(v, &b, max_bits) == Comparison::Less && compare(&v.neg(), &b, max_bits) == Comparison::Less
}

/// Words of length `n` in the language, one per cylinder, read off the partition by
/// the points `T^{-j} beta_t`, `0 <= j < n`.
pub fn cylinder_words(t: &IetMap, n: usize) -> Result<Vec<Word>> {
    let l = t.lengths();
    let mut pts = vec![Point::zero(t.dim())];
    for s in 1..t.m() {
        let mut y = Point::from_form(t.beta(s).clone());
        let total = Point::from_form(t.total().clone());
        if l.compare_points(&y, &total) != Comparison::Less {
            continue;
        }
        pts.push(y.clone());
        for _ in 1..n {
            y = t.apply_inv(&y)?;
            pts.push(y.clone());
        }
    }
    let mut err = None;
    pts.sort_by(|a, b| {
        l.compare_points(a, b).to_ordering().unwrap_or_else(|| {
            err = Some(ambiguous("cylinder endpoints"));
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    pts.dedup_by(|a, b| l.compare_points(a, b) == Comparison::Equal);
    pts.push(Point::from_form(t.total().clone()));
    let mut words: Vec<Word> = Vec::with_capacity(pts.len());
    for w in pts.windows(2) {
        let num: Form = add_forms(&scale_form(&w[0].num, w[1].den), &scale_form(&w[1].num, w[0].den));
        let mid = Point {
            num,
            den: 2 * w[0].den * w[1].den,
        }
        .reduced();
        words.push(t.code_orbit(&mid, n)?);
    }
    words.sort();
    words.dedup();
    Ok(words)
}

/// Checks the perturbation lemmas at horizon `budget.k` for one perturbed pair.
pub fn lemma_checks(pair: &PerturbedPair, budget: &PerturbationBudget) -> Result<LemmaReport> {
    let t = &pair.reference;
    let te = &pair.perturbed;
    let m = t.m();
    let k = budget.k;
    let base = t.base();
    let max_bits = base.precision().max_bits;
    let eps = &budget.epsilon;
    let mut rep = LemmaReport {
        draw: pair.draw,
        ..Default::default()
    };

    rep.in_neighborhood = (1..=m).all(|i| {
        let diff = base.eval(&sub_forms(te.lengths().form(i), t.lengths().form(i)));
        abs_below(&diff, eps, max_bits)
    }) && t.lengths().sign(&sub_forms(te.total(), t.total())) == Comparison::Equal;

    // Backward iterates up to K+1 and forward iterates up to K.
    rep.displacement = true;
    rep.same_interval = true;
    let mut backward: Vec<Vec<(Point, Point)>> = Vec::with_capacity(m);
    for s in 0..m {
        let mut x = Point::from_form(t.beta(s).clone());
        let mut y = Point::from_form(te.beta(s).clone());
        let mut fwd = Vec::new();
        for j in 0..=k {
            fwd.push((x.clone(), y.clone(), j));
            if j < k {
                x = t.apply(&x)?;
                y = te.apply(&y)?;
            }
        }
        let mut x = Point::from_form(t.beta(s).clone());
        let mut y = Point::from_form(te.beta(s).clone());
        let mut back = vec![(x.clone(), y.clone())];
        let mut pairs: Vec<(Point, Point, usize)> = Vec::new();
        for j in 1..=k + 1 {
            x = t.apply_inv(&x)?;
            y = te.apply_inv(&y)?;
            back.push((x.clone(), y.clone()));
            pairs.push((x.clone(), y.clone(), j));
        }
        for (x, y, j) in fwd.iter().chain(pairs.iter()) {
            let bound = eps * BigRational::from_integer(BigInt::from(m * (2 * j + 1)));
            let v = Point { num: x.diff_form(y), den: x.den * y.den }.value(base);
            if !abs_below(&v, &bound, max_bits) {
                rep.displacement = false;
                rep.failures.push(format!("displacement at beta_{s}, step {j}"));
            }
            if t.locate(x)? != te.locate(y)? {
                rep.same_interval = false;
                rep.failures.push(format!("interval index at beta_{s}, step {j}"));
            }
        }
        back.truncate(k + 1);
        backward.push(back);
    }

    rep.order = true;
    let flat: Vec<&(Point, Point)> = backward.iter().flatten().collect();
    'outer: for (i, a) in flat.iter().enumerate() {
        for b in &flat[i + 1..] {
            let c0 = t.lengths().compare_points(&a.0, &b.0);
            let c1 = te.lengths().compare_points(&a.1, &b.1);
            if c0 == Comparison::Ambiguous || c1 == Comparison::Ambiguous {
                return Err(ambiguous("orbit order"));
            }
            if (c0 == Comparison::Less) != (c1 == Comparison::Less) || (c0 == Comparison::Greater) != (c1 == Comparison::Greater) {
                rep.order = false;
                rep.failures.push("orbit order changed".into());
                break 'outer;
            }
        }
    }

    rep.interval_bound = true;
    rep.containment = true;
    let words = cylinder_words(t, k + 1)?;
    rep.words = words.len();
    for w in &words {
        let iw = t
            .word_interval(w)?
            .ok_or_else(|| Error::InvalidInput(format!("cylinder word {w} has an empty interval")))?;
        let endpoint = |origin: (usize, usize)| -> Form {
            let (j, s) = origin;
            sub_forms(te.beta(s), &te.word_translation(&w.factor(0, j)))
        };
        let le = endpoint(iw.left_origin);
        let re = endpoint(iw.right_origin);
        let bound = sub_forms(
            &scale_form(&sub_forms(&re, &le), 5),
            &scale_form(&iw.length_form(), 4),
        );
        match base.sign(&bound) {
            Comparison::Greater | Comparison::Equal => {}
            Comparison::Less => {
                rep.interval_bound = false;
                rep.failures.push(format!("interval bound for {w}"));
            }
            Comparison::Ambiguous => return Err(ambiguous("interval bound")),
        }
        let inside = match te.word_interval(w)? {
            None => false,
            Some(cyl) => {
                matches!(base.sign(&sub_forms(&le, &cyl.left)), Comparison::Greater | Comparison::Equal)
                    && matches!(base.sign(&sub_forms(&cyl.right, &re)), Comparison::Greater | Comparison::Equal)
            }
        };
        if !inside {
            rep.containment = false;
            rep.failures.push(format!("containment for {w}"));
        }
    }
    Ok(rep)
}

/// Two recurrence words on an IET whose population difference is `b(S)`.
#[derive(Clone, Debug)]
pub struct WitnessCertificate {
    pub iet: IetPair,
    pub w1: Word,
    pub w2: Word,
    pub set: CyclicSet,
    pub b: IntVector,
    pub idoc_horizon: usize,
    pub transcript: Vec<TranscriptEntry>,
}

impl WitnessCertificate {
    /// Builds and verifies; the transcript records every check under `stage`.
    pub fn new(iet: IetPair, w1: Word, w2: Word, set: CyclicSet, idoc_horizon: usize, stage: &str) -> Result<Self> {
        let b = set.b_vector(iet.m());
        let mut cert = WitnessCertificate {
            iet,
            w1,
            w2,
            set,
            b,
            idoc_horizon,
            transcript: Vec::new(),
        };
        cert.transcript = cert.verify(stage)?;
        Ok(cert)
    }

    pub fn m(&self) -> usize {
        self.iet.m()
    }

    pub fn perm(&self) -> &Permutation {
        &self.iet.perm
    }

    pub fn difference(&self) -> IntVector {
        let m = self.m();
        let l1 = self.w1.population(m);
        let l2 = self.w2.population(m);
        l1.iter().zip(&l2).map(|(a, b)| a - b).collect()
    }

    /// Recomputes every check from the stored data.
    pub fn verify(&self, stage: &str) -> Result<Vec<TranscriptEntry>> {
        let m = self.m();
        let mut out = Vec::new();
        let irreducible = self.iet.perm.is_irreducible();
        out.push(TranscriptEntry::new(stage, "irreducible", irreducible, self.iet.perm.to_string()));
        let positive = self.iet.lengths.check_positive(false).is_ok();
        out.push(TranscriptEntry::new(stage, "lengths positive", positive, ""));
        if !irreducible || !positive {
            return Ok(out);
        }
        let t = IetMap::new(self.iet.clone());
        for (name, w) in [("w1", &self.w1), ("w2", &self.w2)] {
            let iw = t.word_interval(w)?;
            out.push(TranscriptEntry::new(
                stage,
                &format!("{name} interval nonempty"),
                iw.is_some(),
                format!("length {}", w.len()),
            ));
            let ext = t.word_interval(&w.with_first_appended())?;
            let detail = match &ext {
                Some(iv) => format!("measure ~ {:.3e}", t.measure(&iv.left, &iv.right).to_f64()),
                None => "empty".to_string(),
            };
            out.push(TranscriptEntry::new(stage, &format!("{name} recurrence extension nonempty"), ext.is_some(), detail));
        }
        let in_sigma = self.iet.perm.cyclic_sets().contains(&self.set);
        out.push(TranscriptEntry::new(stage, "S is a cyclic set", in_sigma, self.set.to_string()));
        let b_ok = self.set.b_vector(m) == self.b;
        out.push(TranscriptEntry::new(stage, "b(S) recomputed", b_ok, format!("{:?}", self.b)));
        let diff = self.difference();
        out.push(TranscriptEntry::new(
            stage,
            "l(w1) - l(w2) = b(S)",
            diff == self.b,
            format!("{diff:?}"),
        ));
        let idoc = t.idoc_heuristic(self.idoc_horizon);
        out.push(TranscriptEntry::new(
            stage,
            "IDOC horizon",
            idoc.passed(),
            serde_json::to_string(&idoc).unwrap_or_default(),
        ));
        Ok(out)
    }

    /// Whether every check recorded for the final stage passed.
    pub fn is_valid(&self) -> bool {
        self.verify("recheck").map(|v| v.iter().all(|e| e.passed)).unwrap_or(false)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let l = &self.iet.lengths;
        json!({
            "permutation": self.iet.perm.image(),
            "lengths": {
                "approx": l.values().iter().map(|v| v.to_decimal(30)).collect::<Vec<_>>(),
                "provenance": l.provenance(),
            },
            "w1": self.w1.to_string(),
            "w2": self.w2.to_string(),
            "S": self.set.members(),
            "b": self.b,
            "idoc_horizon": self.idoc_horizon,
            "transcript": self.transcript,
        })
    }
}

fn all_passed(entries: &[TranscriptEntry]) -> bool {
    entries.iter().all(|e| e.passed)
}

/// The five-interval certificate at the symmetric permutation.
pub fn golden_certificate(precision: Precision, idoc_horizon: usize) -> Result<WitnessCertificate> {
    let per = golden::golden_iet(precision)?;
    let (w1, w2) = golden::witness_words();
    WitnessCertificate::new(per.iet.pair().clone(), w1, w2, golden::s1(), idoc_horizon, "m=5 base")
}

/// A witness moved to `m + 2` intervals by `lambda -> (0, lambda, 0)`, symbols `+1`.
#[derive(Clone, Debug)]
pub struct LiftedWitness {
    pub map: IetMap,
    pub w1: Word,
    pub w2: Word,
    pub difference: IntVector,
    /// A cyclic set of `tau_m` with `b(Q)` equal to the lifted difference, if any.
    pub set: Option<CyclicSet>,
    pub checks: Vec<TranscriptEntry>,
}

/// Lifts a witness on `m - 2` intervals to `tau_m`; `samples` points test whether the
/// lifted map agrees with the original one.
pub fn lift_witness(cert: &WitnessCertificate, samples: usize) -> Result<LiftedWitness> {
    let small = cert.m();
    let m = small + 2;
    let stage = format!("lift to m={m}");
    let tau = Permutation::tau(m)?;
    let lifted = cert.iet.lengths.lifted();
    let map = IetMap::new(IetPair::new_allow_zero(lifted, tau.clone())?);
    let w1 = cert.w1.shifted(1);
    let w2 = cert.w2.shifted(1);
    let mut checks = Vec::new();

    let lift_vec = |v: &IntVector| -> IntVector {
        let mut out = vec![0];
        out.extend_from_slice(v);
        out.push(0);
        out
    };
    let pop_ok = w1.population(m) == lift_vec(&cert.w1.population(small))
        && w2.population(m) == lift_vec(&cert.w2.population(small));
    checks.push(TranscriptEntry::new(&stage, "population identity", pop_ok, ""));
    let difference: IntVector = lift_vec(&cert.difference());
    let set = tau
        .cyclic_sets()
        .into_iter()
        .find(|q| q.b_vector(m) == difference);
    checks.push(TranscriptEntry::new(
        &stage,
        "lifted difference is b(Q) for Q in Sigma(tau_m)",
        set.is_some(),
        format!("{difference:?}"),
    ));

    let original = IetMap::new(cert.iet.clone());
    let mut mismatches = 0;
    for s in 1..=samples {
        let x = Point::between(&vec![0; map.dim()], map.total(), s as i128, samples as i128 + 1);
        let same_image = map.lengths().compare_points(&map.apply(&x)?, &original.apply(&x)?) == Comparison::Equal;
        let same_symbol = map.locate(&x)? == original.locate(&x)? + 1;
        if !(same_image && same_symbol) {
            mismatches += 1;
        }
    }
    checks.push(TranscriptEntry::new(
        &stage,
        "lifted map equals original with shifted symbols",
        mismatches == 0,
        format!("{mismatches} of {samples} samples differ"),
    ));
    for (name, w) in [("w1", &w1), ("w2", &w2)] {
        let ok = map.is_recurrence_word(w)?;
        checks.push(TranscriptEntry::new(&stage, &format!("lifted {name} is a recurrence word"), ok, ""));
    }
    Ok(LiftedWitness {
        map,
        w1,
        w2,
        difference,
        set,
        checks,
    })
}

/// Random perturbations of `t` within `budget`; the first draw (by index) whose IET has
/// positive lengths, passes the IDOC check and carries both words as a certified witness
/// for `set` wins. Draws run in parallel.
pub fn perturb_and_verify(
    t: &IetMap,
    w1: &Word,
    w2: &Word,
    set: &CyclicSet,
    budget: &PerturbationBudget,
    seed: u64,
    draws: usize,
    idoc_horizon: usize,
) -> Result<WitnessCertificate> {
    let results: Vec<std::result::Result<WitnessCertificate, String>> = (0..draws)
        .into_par_iter()
        .map(|d| -> std::result::Result<WitnessCertificate, String> {
            let pair = perturb(t, budget, seed, d).map_err(|e| format!("draw {d}: {e}"))?;
            let lengths = pair.perturbed.lengths().clone();
            lengths
                .check_positive(false)
                .map_err(|e| format!("draw {d}: {e}"))?;
            for (name, w) in [("w1", w1), ("w2", w2)] {
                match pair.perturbed.is_recurrence_word(w) {
                    Ok(true) => {}
                    Ok(false) => return Err(format!("draw {d}: {name} is not a recurrence word")),
                    Err(e) => return Err(format!("draw {d}: {e}")),
                }
            }
            let iet = IetPair::new(lengths, t.perm().clone()).map_err(|e| e.to_string())?;
            let cert = WitnessCertificate::new(iet, w1.clone(), w2.clone(), set.clone(), idoc_horizon, &format!("perturbation draw {d}"))
                .map_err(|e| format!("draw {d}: {e}"))?;
            if all_passed(&cert.transcript) {
                Ok(cert)
            } else {
                let failed: Vec<&str> = cert.transcript.iter().filter(|e| !e.passed).map(|e| e.check.as_str()).collect();
                Err(format!("draw {d}: failed {}", failed.join(", ")))
            }
        })
        .collect();
    let mut reasons = Vec::new();
    for r in results {
        match r {
            Ok(c) => return Ok(c),
            Err(e) => reasons.push(e),
        }
    }
    Err(Error::SearchExhausted(reasons))
}

/// Moves a certificate at `tau_m` back along the shortest Rauzy path from
/// `tau_m^sym`: lengths `rho = A lambda`, words `sigma_path(w)`, and `S'` with
/// `b(S') = A b(S)`. The result is verified directly on `T_rho`.
pub fn transfer_to_symmetric(cert: &WitnessCertificate, max_steps: usize) -> Result<WitnessCertificate> {
    let m = cert.m();
    let sym = Permutation::tau_sym(m)?;
    if cert.iet.perm == sym {
        let mut out = cert.clone();
        out.transcript.push(TranscriptEntry::new("transfer", "already symmetric", true, "zero steps"));
        return Ok(out);
    }
    let graph = rauzy_class(&sym)?;
    let path = graph
        .shortest_path(&sym, &cert.iet.perm)
        .filter(|p| p.len() <= max_steps)
        .ok_or_else(|| {
            Error::SearchExhausted(vec![format!(
                "no path of length <= {max_steps} from {sym} to {}",
                cert.iet.perm
            )])
        })?;
    let stage = format!("transfer along {}", path.label_string());
    let (a, end) = compose_path(&path);
    debug_assert_eq!(end, cert.iet.perm);

    let lam = &cert.iet.lengths;
    let dim = lam.base().dim();
    let rho_forms: Vec<Form> = (0..m)
        .map(|i| {
            (0..m).fold(vec![0i128; dim], |acc, j| {
                add_forms(&acc, &scale_form(lam.form(j + 1), a.get(i, j) as i128))
            })
        })
        .collect();
    let rho = lam.with_forms(
        rho_forms,
        Provenance::Transferred {
            parent: Box::new(lam.provenance().clone()),
            path: path.label_string(),
        },
    );
    let start = IetPair::new(rho, sym.clone())?;
    let induced = replay_path(&start, &path, 1)?;
    let same = (1..=m).all(|i| lam.sign(&sub_forms(induced.lengths.form(i), lam.form(i))) == Comparison::Equal)
        && induced.perm == cert.iet.perm;

    let b_new: IntVector = a.mul_vec(&cert.b);
    let target = sym
        .cyclic_sets()
        .into_iter()
        .find(|s| s.b_vector(m) == b_new)
        .ok_or_else(|| Error::NotFound(format!("no cyclic set of {sym} has b = {b_new:?}")))?;
    let transported = transport_along(&path, &target)?;

    let sigma = substitution_of_path(&path);
    let w1 = sigma.apply(&cert.w1);
    let w2 = sigma.apply(&cert.w2);
    let mut out = WitnessCertificate::new(start, w1, w2, target, cert.idoc_horizon, &stage)?;
    let mut transcript = cert.transcript.clone();
    transcript.push(TranscriptEntry::new(&stage, "induction along path returns the source IET", same, ""));
    transcript.push(TranscriptEntry::new(
        &stage,
        "transport of S' along path is S",
        transported == cert.set,
        format!("{} -> {}", out.set, transported),
    ));
    transcript.append(&mut out.transcript);
    out.transcript = transcript;
    Ok(out)
}

/// Knobs for [`full_reduction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ReductionOptions {
    pub seed: u64,
    pub draws: usize,
    pub idoc_horizon: usize,
    pub witness_budget: usize,
    pub max_steps: usize,
    pub loop_max_len: usize,
    pub loop_candidates: usize,
    pub cap: usize,
    pub lift_samples: usize,
    pub precision: Precision,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            seed: 0,
            draws: 16,
            idoc_horizon: DEFAULT_IDOC_HORIZON,
            witness_budget: 128,
            max_steps: 64,
            loop_max_len: 40,
            loop_candidates: 32,
            cap: DEFAULT_REDUCTION_CAP,
            lift_samples: 100,
            precision: Precision::default(),
        }
    }
}

/// A certificate at `tau_m` from a closed primitive path at `tau_m` through
/// `tau_m^sym`: periodic-type lengths, witness words from its substitution.
pub fn periodic_certificate_at_tau(m: usize, opts: &ReductionOptions) -> Result<WitnessCertificate> {
    let sym = Permutation::tau_sym(m)?;
    let tau = Permutation::tau(m)?;
    let graph = rauzy_class(&sym)?;
    let into = graph
        .shortest_path(&sym, &tau)
        .ok_or_else(|| Error::NotFound(format!("{tau} is not in the class of {sym}")))?;
    let mut loops = Vec::new();
    for len in into.len().max(1)..=opts.loop_max_len {
        if loops.len() >= opts.loop_candidates {
            break;
        }
        let need = opts.loop_candidates - loops.len();
        loops.extend(closed_primitive_paths_of_length(&sym, &into.labels, len, need)?);
    }
    let mut reasons = Vec::new();
    for lp in loops {
        let at_tau = lp.rotate(into.len())?;
        let attempt = (|| -> Result<WitnessCertificate> {
            let per = periodic_iet_from_path(&at_tau, opts.precision)?;
            let sigma = per.substitution();
            let pair = find_witness_pair(&sigma, &tau.cyclic_sets(), opts.witness_budget)?;
            WitnessCertificate::new(
                per.iet.pair().clone(),
                pair.w1,
                pair.w2,
                pair.set,
                opts.idoc_horizon,
                &format!("periodic loop {} at tau_{m}", at_tau.label_string()),
            )
        })();
        match attempt {
            Ok(c) if all_passed(&c.transcript) => return Ok(c),
            Ok(_) => reasons.push(format!("{}: verification failed", at_tau.label_string())),
            Err(e) => reasons.push(format!("{}: {e}", at_tau.label_string())),
        }
    }
    if reasons.is_empty() {
        reasons.push(format!("no closed primitive path of length <= {} through {tau}", opts.loop_max_len));
    }
    Err(Error::SearchExhausted(reasons))
}

/// Certificate at `tau_m^sym` for odd `m`. The base case is the five-interval example.
/// Each step lifts the previous certificate, tries perturbations of the lift, and
/// when those fail falls back to a periodic-type certificate at `tau_m`; the result
/// is transferred to `tau_m^sym`. All stage outcomes go into the transcript.
pub fn full_reduction(m: usize, opts: &ReductionOptions) -> Result<WitnessCertificate> {
    if m < 5 || m % 2 == 0 || m > opts.cap {
        return Err(Error::BadSize {
            m,
            reason: format!("reduction needs odd 5 <= m <= {}", opts.cap),
        });
    }
    let mut cert = golden_certificate(opts.precision, opts.idoc_horizon)?;
    let mut size = 5;
    while size < m {
        size += 2;
        let lift = lift_witness(&cert, opts.lift_samples)?;
        let mut log = cert.transcript.clone();
        log.extend(lift.checks.iter().cloned());
        let perturbed = match &lift.set {
            Some(q) => {
                let k = lift.w1.len().max(lift.w2.len()) + 1;
                perturbation_budget(&lift.map, k).and_then(|budget| {
                    perturb_and_verify(&lift.map, &lift.w1, &lift.w2, q, &budget, opts.seed, opts.draws, opts.idoc_horizon)
                })
            }
            None => Err(Error::NotFound("lifted difference is not b(Q) for any cyclic set".into())),
        };
        let stage = format!("perturbation at m={size}");
        let at_tau = match perturbed {
            Ok(c) => {
                log.push(TranscriptEntry::new(&stage, "lifted witness survives perturbation", true, ""));
                c
            }
            Err(e) => {
                log.push(TranscriptEntry::new(&stage, "lifted witness survives perturbation", false, e.to_string()));
                periodic_certificate_at_tau(size, opts)?
            }
        };
        let mut next = transfer_to_symmetric(&at_tau, opts.max_steps)?;
        log.append(&mut next.transcript);
        next.transcript = log;
        cert = next;
    }
    Ok(cert)
}

/// Shortest Rauzy path from `tau_m^sym` to `tau_m`.
pub fn path_into_tau(m: usize) -> Result<RauzyPath> {
    let sym = Permutation::tau_sym(m)?;
    let tau = Permutation::tau(m)?;
    rauzy_class(&sym)?
        .shortest_path(&sym, &tau)
        .ok_or_else(|| Error::NotFound(format!("{tau} is not in the class of {sym}")))
}
