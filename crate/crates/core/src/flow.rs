//! Special flows under step roofs, Birkhoff sums, and Rohlin-tower diagnostics
//! along the periodic induction of an IET of periodic type.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iet::{add_forms, sub_forms, Form, IetMap, IetPair, Point, Word};
use crate::numerics::certified::{compare, CertifiedReal, Comparison};
use crate::numerics::linalg::{dot, IntMatrix, IntVector};
use crate::perm::CyclicSet;
use crate::rauzy::{compose_path, nu};
use crate::subst::{replay_path, PeriodicIet};

/// Roof `f_h = sum_i h_i chi_{Delta_i}`.
#[derive(Clone, Debug, Serialize)]
pub struct StepRoof {
    heights: Vec<CertifiedReal>,
}

impl StepRoof {
    pub fn new(heights: Vec<CertifiedReal>) -> Result<Self> {
        for (i, h) in heights.iter().enumerate() {
            if h.sign(crate::numerics::DEFAULT_MAX_BITS) != Comparison::Greater {
                return Err(Error::InvalidInput(format!("roof height {} is not positive", i + 1)));
            }
        }
        Ok(StepRoof { heights })
    }

    pub fn from_ints(h: &[i64]) -> Result<Self> {
        Self::new(h.iter().map(|&x| CertifiedReal::from_int(x)).collect())
    }

    pub fn unit(m: usize) -> Self {
        StepRoof {
            heights: vec![CertifiedReal::from_int(1); m],
        }
    }

    pub fn height(&self, i: usize) -> &CertifiedReal {
        &self.heights[i - 1]
    }

    pub fn eval(&self, t: &IetMap, x: &Point) -> Result<CertifiedReal> {
        Ok(self.height(t.locate(x)?).clone())
    }

    /// `h . v` for an integer vector.
    pub fn dot(&self, v: &[i64]) -> CertifiedReal {
        let terms: Vec<(BigInt, CertifiedReal)> = v
            .iter()
            .zip(&self.heights)
            .filter(|(c, _)| **c != 0)
            .map(|(c, h)| (BigInt::from(*c), h.clone()))
            .collect();
        if terms.is_empty() {
            CertifiedReal::zero()
        } else {
            CertifiedReal::linear_combination(&terms)
        }
    }

    fn sum_over_word(&self, counts: &[i64]) -> CertifiedReal {
        self.dot(counts)
    }
}

/// `f^{(n)}(x)`: `f(x) + ... + f(T^{n-1} x)` for `n > 0`, `0` for `n = 0`, and
/// `-(f(T^n x) + ... + f(T^{-1} x))` for `n < 0`.
pub fn birkhoff_sum(t: &IetMap, f: &StepRoof, n: i64, x: &Point) -> Result<CertifiedReal> {
    let m = t.m();
    let mut counts = vec![0i64; m];
    let mut y = x.clone();
    if n >= 0 {
        for k in 0..n {
            let i = t.locate(&y)?;
            counts[i - 1] += 1;
            if k + 1 < n {
                y = t.apply(&y)?;
            }
        }
        Ok(f.sum_over_word(&counts))
    } else {
        for _ in 0..(-n) {
            y = t.apply_inv(&y)?;
            let i = t.locate(&y)?;
            counts[i - 1] -= 1;
        }
        Ok(f.sum_over_word(&counts))
    }
}

/// A point `(x, r)` with `0 <= r < f(x)`.
#[derive(Clone, Debug)]
pub struct FlowPoint {
    pub x: Point,
    pub r: CertifiedReal,
}

fn decide(c: Comparison, what: &str) -> Result<Ordering> {
    c.to_ordering()
        .ok_or_else(|| Error::AmbiguousComparison(what.to_string()))
}

impl FlowPoint {
    pub fn new(t: &IetMap, f: &StepRoof, x: Point, r: CertifiedReal) -> Result<Self> {
        let max = t.base().precision().max_bits;
        let fx = f.eval(t, &x)?;
        if decide(r.sign(max), "fiber sign")? == Ordering::Less
            || decide(compare(&r, &fx, max), "fiber against roof")? != Ordering::Less
        {
            return Err(Error::InvalidInput("fiber coordinate outside [0, f(x))".into()));
        }
        Ok(FlowPoint { x, r })
    }
}

/// `T^f_t (x, r)`.
pub fn flow_step(t: &IetMap, f: &StepRoof, time: &CertifiedReal, p: &FlowPoint) -> Result<FlowPoint> {
    let max = t.base().precision().max_bits;
    let mut s = p.r.add(time);
    let mut x = p.x.clone();
    if decide(s.sign(max), "flow time sign")? != Ordering::Less {
        loop {
            let fx = f.eval(t, &x)?;
            if decide(compare(&s, &fx, max), "flow bracket")? == Ordering::Less {
                break;
            }
            s = s.sub(&fx);
            x = t.apply(&x)?;
        }
    } else {
        while decide(s.sign(max), "flow bracket")? == Ordering::Less {
            x = t.apply_inv(&x)?;
            s = s.add(&f.eval(t, &x)?);
        }
    }
    Ok(FlowPoint { x, r: s })
}

/// `q = |A l(w)|`.
pub fn q_value(a: &IntMatrix, w: &Word) -> i64 {
    a.mul_vec(&w.population(a.dim())).iter().sum()
}

/// Disjoint half-open intervals kept sorted.
#[derive(Clone, Debug, Default)]
pub struct IntervalSet {
    pub parts: Vec<(Form, Form)>,
}

fn cmp_forms(t: &IetMap, a: &[i128], b: &[i128]) -> Result<Ordering> {
    decide(t.sign(&sub_forms(a, b)), "interval endpoints")
}

impl IntervalSet {
    fn normalize(mut self, t: &IetMap) -> Result<Self> {
        let mut err = None;
        self.parts
            .retain(|(l, r)| matches!(cmp_forms(t, l, r), Ok(Ordering::Less)));
        self.parts.sort_by(|a, b| match cmp_forms(t, &a.0, &b.0) {
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        Ok(self)
    }

    pub fn measure(&self, t: &IetMap) -> CertifiedReal {
        let mut total = vec![0i128; t.dim()];
        for (l, r) in &self.parts {
            total = add_forms(&total, &sub_forms(r, l));
        }
        t.base().eval(&total)
    }

    pub fn measure_form(&self, dim: usize) -> Form {
        let mut total = vec![0i128; dim];
        for (l, r) in &self.parts {
            total = add_forms(&total, &sub_forms(r, l));
        }
        total
    }

    /// `T^{-1}` of the set, split at the discontinuities of `T^{-1}`.
    pub fn preimage(&self, t: &IetMap) -> Result<IntervalSet> {
        let m = t.m();
        let mut out = Vec::new();
        for (l, r) in &self.parts {
            for i in 1..=m {
                // image of Delta_i is [beta_{i-1} + off_i, beta_i + off_i)
                let il = add_forms(t.beta(i - 1), t.offset(i));
                let ir = add_forms(t.beta(i), t.offset(i));
                let lo = if cmp_forms(t, l, &il)? == Ordering::Less { &il } else { l };
                let hi = if cmp_forms(t, r, &ir)? == Ordering::Greater { &ir } else { r };
                if cmp_forms(t, lo, hi)? == Ordering::Less {
                    out.push((sub_forms(lo, t.offset(i)), sub_forms(hi, t.offset(i))));
                }
            }
        }
        IntervalSet { parts: out }.normalize(t)
    }

    /// Measure of the intersection with another set.
    pub fn intersection_form(&self, other: &IntervalSet, t: &IetMap) -> Result<Form> {
        let mut total = vec![0i128; t.dim()];
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a0, a1) = &self.parts[i];
            let (b0, b1) = &other.parts[j];
            let lo = if cmp_forms(t, a0, b0)? == Ordering::Less { b0 } else { a0 };
            let hi = if cmp_forms(t, a1, b1)? == Ordering::Less { a1 } else { b1 };
            if cmp_forms(t, lo, hi)? == Ordering::Less {
                total = add_forms(&total, &sub_forms(hi, lo));
            }
            if cmp_forms(t, a1, b1)? == Ordering::Less {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(total)
    }

    /// `mu(self symmetric-difference other)` as a form.
    pub fn symmetric_difference_form(&self, other: &IntervalSet, t: &IetMap) -> Result<Form> {
        let inter = self.intersection_form(other, t)?;
        let a = self.measure_form(t.dim());
        let b = other.measure_form(t.dim());
        Ok(sub_forms(&add_forms(&a, &b), &add_forms(&inter, &inter)))
    }
}

/// Words of a witness and the cyclic set they realize.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessWords {
    pub w1: Word,
    pub w2: Word,
    pub set: CyclicSet,
}

impl WitnessWords {
    pub fn words(&self) -> [&Word; 2] {
        [&self.w1, &self.w2]
    }
}

/// Per-word quantities at one depth.
#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub word: Word,
    pub extension: usize,
    pub return_steps: usize,
    pub q: i64,
    pub tower_height: i64,
    pub interval_left: CertifiedReal,
    pub interval_length: CertifiedReal,
    pub measure: CertifiedReal,
    pub displacement: CertifiedReal,
    pub base_interval_length: CertifiedReal,
    pub boundary_measure: CertifiedReal,
    pub boundary_measure_bruteforce: Option<CertifiedReal>,
    pub a: CertifiedReal,
    pub a_predicted: CertifiedReal,
    pub birkhoff_samples: Vec<CertifiedReal>,
    /// `"orbit"` when sums came from explicit orbits, `"induced"` otherwise.
    pub birkhoff_method: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Diagnostics at depth `n` periods.
#[derive(Clone, Debug, Serialize)]
pub struct TowerDiagnostics {
    pub periods: usize,
    pub depth: usize,
    pub heights: IntVector,
    pub towers: Vec<TowerReport>,
    pub alpha: CertifiedReal,
    pub domain_length: CertifiedReal,
    pub a_difference: CertifiedReal,
    pub a_difference_predicted: CertifiedReal,
    pub displacement_ratio: Option<CertifiedReal>,
    pub checks: Vec<Check>,
}

impl TowerDiagnostics {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Options for [`tower_diagnostics`].
#[derive(Clone, Debug)]
pub struct TowerOptions {
    pub roof: Option<StepRoof>,
    /// Largest `q` for which Birkhoff sums follow explicit orbits.
    pub orbit_cap: i64,
    /// Largest tower height for the brute-force boundary computation.
    pub bruteforce_cap: i64,
    /// Tower levels sampled for the Birkhoff sums.
    pub samples: usize,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions {
            roof: None,
            orbit_cap: 2_000_000,
            bruteforce_cap: 2_000,
            samples: 3,
        }
    }
}

/// Lexicographically least symbol `s` with `w s` in the language of `t`.
pub fn least_extension(t: &IetMap, w: &Word) -> Result<Option<usize>> {
    for s in 1..=t.m() {
        let mut e = w.clone();
        e.push(s);
        if t.in_language(&e)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn enclosure_le(a: &CertifiedReal, b: &CertifiedReal, max: u32) -> bool {
    matches!(compare(a, b, max), Comparison::Less | Comparison::Equal) || a.hi() <= b.lo()
}

fn enclosure_ge(a: &CertifiedReal, b: &CertifiedReal, max: u32) -> bool {
    matches!(compare(a, b, max), Comparison::Greater | Comparison::Equal) || a.lo() >= b.hi()
}

fn push(checks: &mut Vec<Check>, name: String, passed: bool) {
    checks.push(Check { name, passed });
}

/// Tower diagnostics at depths `p, 2p, ..., periods * p`, where `p` is the smallest
/// multiple of the path length whose matrix is strictly positive.
///
/// The words `w_r` must be recurrence words of the IET; the towers are built over
/// `I_r`, the interval of `w_r w_0` for the induced map at each depth.
pub fn tower_diagnostics(
    per: &PeriodicIet,
    witness: &WitnessWords,
    periods: usize,
    opts: &TowerOptions,
) -> Result<Vec<TowerDiagnostics>> {
    let t = &per.iet;
    let m = t.m();
    let max = t.base().precision().max_bits;
    let roof = opts.roof.clone().unwrap_or_else(|| StepRoof::unit(m));
    let reps = per.positive_power;
    let period_path = per.path.repeat(reps);
    let (b, _) = compose_path(&period_path);
    let nu_b = nu(&b)?;
    let bvec = witness.set.b_vector(m);

    // theta_r = |I_{w_r w_0}| for T itself.
    let mut theta_r = Vec::new();
    for w in witness.words() {
        let iv = t
            .word_interval(&w.with_first_appended())?
            .ok_or_else(|| Error::InvalidInput(format!("{w} is not a recurrence word")))?;
        theta_r.push(t.base().eval(&iv.length_form()));
    }
    let min_theta = match compare(&theta_r[0], &theta_r[1], max) {
        Comparison::Greater => theta_r[1].clone(),
        _ => theta_r[0].clone(),
    };
    let alpha = min_theta
        .mul_rat(&BigRational::from_integer(4.into()))
        .mul_rat(&(BigRational::from_integer(1.into()) / (nu_b.clone() * BigRational::from_integer(5.into()))));
    let total = t.base().eval(t.total());

    let mut out: Vec<TowerDiagnostics> = Vec::new();
    let mut pair: IetPair = t.pair().clone();
    let mut bn = IntMatrix::identity(m);
    let mut prev_disp: Option<Vec<CertifiedReal>> = None;
    for n in 1..=periods {
        pair = replay_path(&pair, &period_path, 1)?;
        bn = bn.mul(&b);
        let induced = IetMap::new(pair.clone());
        let heights = bn.column_sums();
        let depth = n * period_path.len();
        let mut checks = Vec::new();

        // Towers fill the interval: sum_j h_j lambda_j = |lambda| exactly.
        let mut fill = vec![0i128; t.dim()];
        for (j, &h) in heights.iter().enumerate() {
            fill = add_forms(&fill, &pair.lengths.form(j + 1).iter().map(|x| x * h as i128).collect::<Vec<_>>());
        }
        push(&mut checks, "towers fill the interval".into(), fill == *t.total());

        let rho = induced.base().eval(induced.total());
        let mut towers = Vec::new();
        for (r, w) in witness.words().into_iter().enumerate() {
            let ext = w.with_first_appended();
            let iv = induced
                .word_interval(&ext)?
                .ok_or_else(|| Error::NotFound(format!("{ext} not in the induced language at depth {depth}")))?;
            let w0 = w.first().unwrap();
            let k = w.len();
            let q = dot(&heights, &w.population(m));
            let h0 = heights[w0 - 1];
            let len_form = iv.length_form();
            let interval_length = t.base().eval(&len_form);
            let measure = interval_length.mul_rat(&BigRational::from_integer(h0.into()));
            let shift = induced.word_translation(w);
            let disp_val = t.base().eval(&shift);
            let displacement = match disp_val.sign(max) {
                Comparison::Less => disp_val.neg(),
                _ => disp_val,
            };
            let base_len = t.base().eval(pair.lengths.form(w0));

            // T_(depth) on I_r is translation by offset_{w0}.
            let moved_l = add_forms(&iv.left, induced.offset(w0));
            let moved_r = add_forms(&iv.right, induced.offset(w0));
            let lo = if cmp_forms(t, &moved_l, &iv.left)? == Ordering::Less { &iv.left } else { &moved_l };
            let hi = if cmp_forms(t, &moved_r, &iv.right)? == Ordering::Less { &moved_r } else { &iv.right };
            let overlap = if cmp_forms(t, lo, hi)? == Ordering::Less {
                sub_forms(hi, lo)
            } else {
                vec![0; t.dim()]
            };
            let boundary_form: Form = sub_forms(&len_form, &overlap).iter().map(|x| 2 * x).collect();
            let boundary_measure = t.base().eval(&boundary_form);

            let boundary_measure_bruteforce = if h0 <= opts.bruteforce_cap {
                let mut parts = Vec::with_capacity(h0 as usize);
                let mut lvl = (iv.left.clone(), iv.right.clone());
                for i in 0..h0 {
                    if i > 0 {
                        let x = Point::from_form(lvl.0.clone());
                        let j = t.locate(&x)?;
                        lvl = (add_forms(&lvl.0, t.offset(j)), add_forms(&lvl.1, t.offset(j)));
                    }
                    parts.push(lvl.clone());
                }
                let c = IntervalSet { parts }.normalize(t)?;
                let pre = c.preimage(t)?;
                Some(t.base().eval(&c.symmetric_difference_form(&pre, t)?))
            } else {
                None
            };

            // Birkhoff sums of the roof along q steps from sampled tower levels.
            let a_predicted = roof.dot(&bn.mul_vec(&w.population(m)));
            let y = Point::between(&iv.left, &iv.right, 1, 2);
            let mut samples = Vec::new();
            let method;
            if q <= opts.orbit_cap {
                method = "orbit".to_string();
                let levels: Vec<i64> = (0..opts.samples as i64)
                    .map(|s| if opts.samples <= 1 { 0 } else { s * (h0 - 1) / (opts.samples as i64 - 1) })
                    .collect();
                for lvl in levels {
                    let x = t.iterate(&y, lvl)?;
                    samples.push(birkhoff_sum(t, &roof, q, &x)?);
                    if lvl == 0 {
                        let tq = t.iterate(&y, q)?;
                        let tk = induced.iterate(&y, k as i64)?;
                        push(
                            &mut checks,
                            format!("return identity T^q = T_(n)^K for word {}", r + 1),
                            t.lengths().compare_points(&tq, &tk) == Comparison::Equal,
                        );
                        push(
                            &mut checks,
                            format!("displacement matches orbit for word {}", r + 1),
                            t.lengths().compare_points(&tq, &y.translate(&shift)) == Comparison::Equal,
                        );
                    }
                }
            } else {
                // f^{(q)}(x) = sum over the K induced steps of f^{(h_{w_j})} on tower bases,
                // each equal to (h B^n)_{w_j}.
                method = "induced".to_string();
                let coded = induced.code_orbit(&y, k)?;
                push(&mut checks, format!("induced coding of word {}", r + 1), coded == *w);
                let hb = roof.dot(&bn.mul_vec(&coded.population(m)));
                samples.push(hb);
            }
            let a = samples[0].clone();
            let constant = samples.iter().all(|s| compare(s, &a_predicted, max) == Comparison::Equal || s.overlaps(&a_predicted));
            push(&mut checks, format!("Birkhoff sum constant on C_{} and equal to h A l(w)", r + 1), constant);
            push(&mut checks, format!("mu(C_{}) >= alpha", r + 1), enclosure_ge(&measure, &alpha, max));
            push(
                &mut checks,
                format!("displacement {} <= |Delta_w0|", r + 1),
                enclosure_le(&displacement, &base_len, max),
            );
            let two_rho = rho.mul_rat(&BigRational::from_integer(2.into()));
            push(
                &mut checks,
                format!("boundary measure {} <= 2|rho|", r + 1),
                enclosure_le(&boundary_measure, &two_rho, max),
            );
            if let Some(bf) = &boundary_measure_bruteforce {
                push(
                    &mut checks,
                    format!("boundary measure {} matches interval-set computation", r + 1),
                    bf.overlaps(&boundary_measure),
                );
            }
            towers.push(TowerReport {
                word: w.clone(),
                extension: w0,
                return_steps: k,
                q,
                tower_height: h0,
                interval_left: t.base().eval(&iv.left),
                interval_length,
                measure,
                displacement,
                base_interval_length: base_len,
                boundary_measure,
                boundary_measure_bruteforce,
                a,
                a_predicted,
                birkhoff_samples: samples,
                birkhoff_method: method,
            });
        }
        let a_difference = towers[0].a.sub(&towers[1].a);
        let a_difference_predicted = roof.dot(&bn.mul_vec(&bvec));
        push(
            &mut checks,
            "a1 - a2 = h B^n b(S)".into(),
            a_difference.overlaps(&a_difference_predicted),
        );
        let displacement_ratio = prev_disp.as_ref().map(|p| {
            towers[0]
                .displacement
                .checked_div(&p[0])
                .unwrap_or_else(|| CertifiedReal::zero())
        });
        if let Some(ratio) = &displacement_ratio {
            let inv_theta = per
                .theta
                .recip()
                .expect("theta is positive")
                .refine(t.base().precision().working_bits);
            let mut expected = CertifiedReal::from_int(1);
            for _ in 0..reps {
                expected = expected.mul(&inv_theta);
            }
            push(
                &mut checks,
                format!("displacement ratio encloses theta^-{reps}"),
                ratio.overlaps(&expected),
            );
        }
        prev_disp = Some(towers.iter().map(|t| t.displacement.clone()).collect());
        out.push(TowerDiagnostics {
            periods: n,
            depth,
            heights,
            towers,
            alpha: alpha.clone(),
            domain_length: total.clone(),
            a_difference,
            a_difference_predicted,
            displacement_ratio,
            checks,
        });
    }
    Ok(out)
}

/// Constancy of `f_h^{(q)}` on the tower over `w` at `depth` induction steps along the path.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub depth: usize,
    pub word: Word,
    pub q: i64,
    pub predicted: CertifiedReal,
    pub samples: Vec<CertifiedReal>,
    pub passed: bool,
}

pub fn cocycle_constancy_check(
    per: &PeriodicIet,
    w: &Word,
    h: &StepRoof,
    depth: usize,
    samples: usize,
) -> Result<CocycleReport> {
    let t = &per.iet;
    let m = t.m();
    let reps = depth.div_ceil(per.path.len()).max(1);
    let long = per.path.repeat(reps).prefix(depth);
    let (a, _) = compose_path(&long);
    let pair = replay_path(t.pair(), &long, 1)?;
    let induced = IetMap::new(pair);
    let heights = a.column_sums();
    let iv = induced
        .word_interval(&w.with_first_appended())?
        .ok_or_else(|| Error::NotFound(format!("{w} is not a recurrence word of the induced map")))?;
    let q = dot(&heights, &w.population(m));
    let predicted = h.dot(&a.mul_vec(&w.population(m)));
    let w0 = w.first().ok_or_else(|| Error::InvalidInput("empty word".into()))?;
    let h0 = heights[w0 - 1];
    let mut vals = Vec::new();
    for s in 0..samples.max(1) {
        let y = Point::between(&iv.left, &iv.right, (s + 1) as i128, (samples + 1) as i128);
        let lvl = if samples <= 1 { 0 } else { (s as i64) * (h0 - 1) / (samples as i64 - 1) };
        let x = t.iterate(&y, lvl)?;
        vals.push(birkhoff_sum(t, h, q, &x)?);
    }
    let max = t.base().precision().max_bits;
    let passed = vals
        .iter()
        .all(|v| compare(v, &predicted, max) == Comparison::Equal || v.overlaps(&predicted));
    Ok(CocycleReport {
        depth,
        word: w.clone(),
        q,
        predicted,
        samples: vals,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::LengthVector;
    use crate::perm::Permutation;

    fn rotation() -> IetMap {
        let l = LengthVector::from_ratios(&[(1, 3), (2, 3)]);
        IetMap::from_parts(l, Permutation::new(vec![2, 1]).unwrap()).unwrap()
    }

    #[test]
    fn birkhoff_basics() {
        let t = rotation();
        let x = Point::between(t.beta(0), t.beta(1), 1, 2);
        let f = StepRoof::unit(2);
        assert!(birkhoff_sum(&t, &f, 0, &x).unwrap().is_exact());
        assert_eq!(birkhoff_sum(&t, &f, 7, &x).unwrap().exact_value().unwrap(), &BigRational::from_integer(7.into()));
        assert_eq!(birkhoff_sum(&t, &f, -3, &x).unwrap().exact_value().unwrap(), &BigRational::from_integer((-3).into()));
    }

    #[test]
    fn unit_roof_time_one_is_the_base_map() {
        let t = rotation();
        let f = StepRoof::unit(2);
        let x = Point::between(t.beta(0), t.beta(1), 1, 3);
        let p = FlowPoint::new(&t, &f, x.clone(), CertifiedReal::zero()).unwrap();
        let q = flow_step(&t, &f, &CertifiedReal::from_int(1), &p).unwrap();
        assert_eq!(t.lengths().compare_points(&q.x, &t.apply(&x).unwrap()), Comparison::Equal);
        assert!(q.r.exact_value().unwrap() == &BigRational::from_integer(0.into()));
    }

    #[test]
    fn q_of_empty_word() {
        assert_eq!(q_value(&IntMatrix::identity(3), &Word::empty()), 0);
    }
}
