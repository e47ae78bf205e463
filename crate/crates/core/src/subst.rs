//! Substitutions, their languages, witness pairs, and IETs of periodic type.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::iet::{IetMap, IetPair, LengthVector, Point, Precision, Provenance, Word};
use crate::numerics::certified::{CertifiedReal, Comparison};
use crate::numerics::linalg::{IntMatrix, IntVector};
use crate::numerics::perron::{perron, PerronData};
use crate::numerics::poly::{char_poly, factor_int_poly, quartic_galois, QuarticGaloisData};
use crate::iet::Base;
use crate::perm::{CyclicSet, Label, Permutation};
use crate::rauzy::{compose_path, induction_step, RauzyPath};

/// A map from symbols `1..=m` to nonempty words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let m = images.len();
        for (j, w) in images.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::InvalidInput(format!("image of {} is empty", j + 1)));
            }
            w.check_alphabet(m)?;
        }
        Ok(Substitution { images })
    }

    pub fn identity(m: usize) -> Self {
        Substitution {
            images: (1..=m).map(|i| Word::new(vec![i])).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    /// `sigma(i)`, 1-based.
    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for &s in w.symbols() {
            out.extend_from_slice(self.images[s - 1].symbols());
        }
        Word::new(out)
    }

    fn apply_raw(&self, w: &[u8]) -> Vec<u8> {
        let mut out = Vec::new();
        for &s in w {
            out.extend(self.images[s as usize - 1].symbols().iter().map(|&x| x as u8));
        }
        out
    }

    /// `M_ij` = occurrences of `i` in `sigma(j)`.
    pub fn matrix(&self) -> IntMatrix {
        let m = self.m();
        let mut a = IntMatrix::zeros(m);
        for j in 0..m {
            for (i, c) in self.images[j].population(m).into_iter().enumerate() {
                a.set(i, j, c);
            }
        }
        a
    }

    pub fn is_primitive(&self) -> bool {
        self.matrix().is_primitive()
    }

    /// `(self o other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        Substitution {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    pub fn power(&self, k: usize) -> Substitution {
        let mut s = Substitution::identity(self.m());
        for _ in 0..k {
            s = self.compose(&s);
        }
        s
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).min().unwrap_or(0)
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct J<'a> {
            m: usize,
            images: BTreeMap<String, &'a Word>,
        }
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, w)| ((i + 1).to_string(), w))
            .collect();
        J { m: self.m(), images }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Substitution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct J {
            m: usize,
            images: HashMap<String, Word>,
        }
        let j = J::deserialize(d)?;
        let mut images = Vec::with_capacity(j.m);
        for i in 1..=j.m {
            let w = j
                .images
                .get(&i.to_string())
                .ok_or_else(|| serde::de::Error::custom(format!("missing image of {i}")))?;
            images.push(w.clone());
        }
        if j.images.len() != j.m {
            return Err(serde::de::Error::custom("images keyed outside 1..=m"));
        }
        Substitution::new(images).map_err(serde::de::Error::custom)
    }
}

/// The substitution whose matrix is `A(c, pi)`.
pub fn elementary_substitution(c: Label, pi: &Permutation) -> Substitution {
    let m = pi.m();
    let k = pi.inv_at(m);
    let images = (1..=m)
        .map(|j| match c {
            Label::A if j <= k => vec![j],
            Label::A if j == k + 1 => vec![k, m],
            Label::A => vec![j - 1],
            Label::B if j == k => vec![k, m],
            Label::B => vec![j],
        })
        .map(Word::new)
        .collect();
    Substitution { images }
}

/// Composition of elementary substitutions along a path.
pub fn substitution_of_path(path: &RauzyPath) -> Substitution {
    let mut s = Substitution::identity(path.start.m());
    let mut p = path.start.clone();
    for &c in &path.labels {
        let e = elementary_substitution(c, &p);
        s = s.compose(&e);
        p = p.apply(c);
    }
    s
}

/// First-return codings of the intervals of the `n`-th induced IET.
pub fn substitution_from_induction(t: &IetMap, n: usize) -> Result<Substitution> {
    let m = t.m();
    if n == 0 {
        return Ok(Substitution::identity(m));
    }
    let mut pair = t.pair().clone();
    for _ in 0..n {
        pair = induction_step(&pair)?.next;
    }
    let induced = IetMap::new(pair);
    let end = Point::from_form(induced.total().clone());
    let mut images = Vec::with_capacity(m);
    for i in 1..=m {
        let x = Point::between(induced.beta(i - 1), induced.beta(i), 1, 2);
        let mut w = vec![t.locate(&x)?];
        let mut y = t.apply(&x)?;
        loop {
            match t.lengths().compare_points(&y, &end) {
                Comparison::Less => break,
                Comparison::Greater | Comparison::Equal => {}
                Comparison::Ambiguous => {
                    return Err(Error::AmbiguousInterval("return to the induced interval".into()))
                }
            }
            w.push(t.locate(&y)?);
            y = t.apply(&y)?;
        }
        images.push(Word::new(w));
    }
    Substitution::new(images)
}

/// Prefix of the fixed point of some `sigma^k`, `k <= m`, beginning with `seed`.
pub fn fixed_point_prefix(sigma: &Substitution, seed: usize, len: usize) -> Result<Word> {
    let m = sigma.m();
    if seed == 0 || seed > m {
        return Err(Error::InvalidInput(format!("seed {seed} outside 1..={m}")));
    }
    if sigma.image(seed).symbols() == [seed] {
        return Ok(Word::new(vec![seed; len]));
    }
    let mut k_found = None;
    let mut s = sigma.clone();
    for k in 1..=m {
        let img = s.image(seed);
        if img.first() == Some(seed) && img.len() > 1 {
            k_found = Some(k);
            break;
        }
        s = sigma.compose(&s);
    }
    let k = k_found.ok_or(Error::NoFixedSeed)?;
    let sk = sigma.power(k);
    let mut w = Word::new(vec![seed]);
    while w.len() < len {
        w = sk.apply(&w);
    }
    Ok(w.factor(0, len))
}

/// Factors of length exactly `k`, closed under the substitution.
fn factors_exact(sigma: &Substitution, k: usize) -> HashSet<Vec<u8>> {
    let m = sigma.m();
    let mut set: HashSet<Vec<u8>> = HashSet::new();
    let mut frontier: Vec<Vec<u8>> = Vec::new();
    let add = |w: &[u8], set: &mut HashSet<Vec<u8>>, frontier: &mut Vec<Vec<u8>>| {
        if w.len() < k {
            return;
        }
        for f in w.windows(k) {
            if set.insert(f.to_vec()) {
                frontier.push(f.to_vec());
            }
        }
    };
    for a in 1..=m {
        let mut w = vec![a as u8];
        let mut guard = 0;
        while w.len() < k && guard < 64 {
            w = sigma.apply_raw(&w);
            guard += 1;
        }
        add(&w, &mut set, &mut frontier);
    }
    while let Some(u) = frontier.pop() {
        let img = sigma.apply_raw(&u);
        add(&img, &mut set, &mut frontier);
    }
    set
}

/// All factors of length `k` of the language of `sigma`.
///
/// Every factor of length `k` of `sigma^N(a)` lies inside `sigma(u)` for a factor `u` of
/// length `k` of `sigma^{N-1}(a)` once that word is long enough, so closing the set of
/// length-`k` factors under `sigma` yields the whole set.
pub fn language(sigma: &Substitution, k: usize) -> Vec<Word> {
    if k == 0 {
        return vec![Word::empty()];
    }
    let mut out: Vec<Word> = factors_exact(sigma, k)
        .into_iter()
        .map(|w| Word::new(w.into_iter().map(|s| s as usize).collect()))
        .collect();
    out.sort();
    out
}

/// Languages of every length `1..=k`, read off the length-`k` factors.
///
/// Valid for primitive substitutions, whose factors all extend to the right.
pub fn language_up_to(sigma: &Substitution, k: usize) -> Vec<Vec<Word>> {
    let top = factors_exact(sigma, k);
    let mut by_len: Vec<HashSet<Vec<u8>>> = vec![HashSet::new(); k + 1];
    for w in &top {
        for j in 1..=k {
            by_len[j].insert(w[..j].to_vec());
        }
    }
    by_len
        .into_iter()
        .map(|s| {
            let mut v: Vec<Word> = s
                .into_iter()
                .map(|w| Word::new(w.into_iter().map(|x| x as usize).collect()))
                .collect();
            v.sort();
            v
        })
        .collect()
}

/// Recurrence words of length `1..=max_len`, by length then lexicographically.
pub fn recurrence_words(sigma: &Substitution, max_len: usize) -> Vec<Word> {
    if max_len == 0 {
        return Vec::new();
    }
    let langs = language_up_to(sigma, max_len + 1);
    let mut out = Vec::new();
    for n in 1..=max_len {
        let next: HashSet<&Word> = langs[n + 1].iter().collect();
        for w in &langs[n] {
            if next.contains(&w.with_first_appended()) {
                out.push(w.clone());
            }
        }
    }
    out
}

/// Two recurrence words with `l(w1) - l(w2) = b(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub w1: Word,
    pub w2: Word,
    pub set: CyclicSet,
    pub b: IntVector,
    pub l1: IntVector,
    pub l2: IntVector,
}

impl WitnessPair {
    pub fn new(w1: Word, w2: Word, set: CyclicSet, m: usize) -> Self {
        let b = set.b_vector(m);
        let l1 = w1.population(m);
        let l2 = w2.population(m);
        WitnessPair { w1, w2, set, b, l1, l2 }
    }

    pub fn difference(&self) -> IntVector {
        self.l1.iter().zip(&self.l2).map(|(a, b)| a - b).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.difference() == self.b
    }
}

pub const DEFAULT_WITNESS_BUDGET: usize = 64;

/// Shortest witness pair among recurrence words of length at most `max_len`.
///
/// Ties are broken by the canonical order of `(w1, w2)`.
pub fn find_witness_pair(sigma: &Substitution, sets: &[CyclicSet], max_len: usize) -> Result<WitnessPair> {
    let m = sigma.m();
    let words = recurrence_words(sigma, max_len);
    let mut by_pop: HashMap<IntVector, Word> = HashMap::new();
    let mut start = 0;
    while start < words.len() {
        let n = words[start].len();
        let end = start + words[start..].iter().take_while(|w| w.len() == n).count();
        for w in &words[start..end] {
            by_pop.entry(w.population(m)).or_insert_with(|| w.clone());
        }
        let mut best: Option<WitnessPair> = None;
        for w in &words[start..end] {
            let l = w.population(m);
            for s in sets {
                let b = s.b_vector(m);
                let minus: IntVector = l.iter().zip(&b).map(|(x, y)| x - y).collect();
                let plus: IntVector = l.iter().zip(&b).map(|(x, y)| x + y).collect();
                let mut cands = Vec::new();
                if let Some(u) = by_pop.get(&minus) {
                    cands.push(WitnessPair::new(w.clone(), u.clone(), s.clone(), m));
                }
                if let Some(u) = by_pop.get(&plus) {
                    cands.push(WitnessPair::new(u.clone(), w.clone(), s.clone(), m));
                }
                for c in cands {
                    let key = |p: &WitnessPair| (p.w1.len().max(p.w2.len()), p.w1.clone(), p.w2.clone());
                    if best.as_ref().is_none_or(|b| key(&c) < key(b)) {
                        best = Some(c);
                    }
                }
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        start = end;
    }
    Err(Error::NotFound(format!("no witness pair among recurrence words of length <= {max_len}")))
}

/// Heuristic aperiodicity check: no period `p <= window/2` fits the tail of the prefix.
pub fn looks_aperiodic(prefix: &Word, window: usize) -> bool {
    let s = prefix.symbols();
    let w = window.min(s.len());
    let tail = &s[s.len() - w..];
    !(1..=w / 2).any(|p| tail[p..].iter().zip(tail).all(|(a, b)| a == b))
}

/// An IET of periodic type built from a closed primitive path.
#[derive(Clone, Debug)]
pub struct PeriodicIet {
    pub path: RauzyPath,
    pub matrix: IntMatrix,
    pub theta: CertifiedReal,
    pub perron: PerronData,
    pub iet: IetMap,
    /// Smallest `p` with `A^p` strictly positive.
    pub positive_power: usize,
}

impl PeriodicIet {
    /// Replays the induction `reps` periods, checking every winner against the path.
    pub fn replay(&self, reps: usize) -> Result<IetPair> {
        replay_path(self.iet.pair(), &self.path, reps)
    }

    pub fn substitution(&self) -> Substitution {
        substitution_of_path(&self.path)
    }
}

/// Induce along `path` `reps` times, failing on the first label mismatch.
pub fn replay_path(start: &IetPair, path: &RauzyPath, reps: usize) -> Result<IetPair> {
    let mut pair = start.clone();
    let mut step = 0;
    for _ in 0..reps {
        for &c in &path.labels {
            let r = induction_step(&pair)?;
            if r.label != c {
                return Err(Error::PathNotRealizable {
                    step,
                    expected: c.as_char(),
                    got: r.label.as_char(),
                });
            }
            pair = r.next;
            step += 1;
        }
    }
    Ok(pair)
}

/// Lengths given by the normalized Perron eigenvector of the path matrix.
pub fn periodic_iet_from_path(path: &RauzyPath, precision: Precision) -> Result<PeriodicIet> {
    let (a, end) = compose_path(path);
    if end != path.start {
        return Err(Error::InvalidInput(format!("path {path} is not closed")));
    }
    if !a.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let pd = perron(&a, precision.working_bits)?;
    let base = Base::new(pd.vector.clone(), Some(pd.relations.clone()), precision);
    let lengths = LengthVector::from_base(
        base,
        Provenance::PfEigenvector {
            path: path.label_string(),
            start: path.start.image().to_vec(),
        },
    );
    let pair = IetPair::new(lengths, path.start.clone())?;
    replay_path(&pair, path, 1)?;
    let mut positive_power = 1;
    let mut p = a.clone();
    while !p.is_positive() {
        p = p.mul(&a);
        positive_power += 1;
    }
    Ok(PeriodicIet {
        path: path.clone(),
        matrix: a,
        theta: pd.theta.clone(),
        perron: pd,
        iet: IetMap::new(pair),
        positive_power,
    })
}

/// Criterion applied to the Galois data of the quartic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeakMixingCriterion {
    /// Emit the data with no verdict.
    #[default]
    ReportOnly,
    /// Pass when every quartic factor has one of the listed group labels.
    GroupIn { groups: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakMixingReport {
    pub char_poly: String,
    pub factors: Vec<String>,
    pub quartics: Vec<QuarticGaloisData>,
    pub criterion: WeakMixingCriterion,
    /// `None` under `ReportOnly`.
    pub verdict: Option<bool>,
}

pub fn weak_mixing_certificate(a: &IntMatrix, criterion: WeakMixingCriterion) -> Result<WeakMixingReport> {
    if !a.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let p = char_poly(a);
    let factors = factor_int_poly(&p)?;
    let quartics: Vec<QuarticGaloisData> = factors
        .iter()
        .filter(|f| f.degree() == 4)
        .filter_map(quartic_galois)
        .collect();
    let verdict = match &criterion {
        WeakMixingCriterion::ReportOnly => None,
        WeakMixingCriterion::GroupIn { groups } => {
            Some(quartics.iter().all(|q| groups.contains(&q.group)))
        }
    };
    Ok(WeakMixingReport {
        char_poly: p.to_string(),
        factors: factors.iter().map(|f| f.to_string()).collect(),
        quartics,
        criterion,
        verdict,
    })
}
