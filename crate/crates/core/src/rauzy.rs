//! Rauzy induction, path composition, Rauzy classes and closed-path search.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::iet::{sub_forms, IetPair, Provenance};
use crate::numerics::certified::Comparison;
use crate::numerics::linalg::{IntMatrix, IntVector};
use crate::perm::{CyclicSet, Label, Permutation};

/// `A(c, pi)`, satisfying `lambda = A(c, pi) lambda'`.
pub fn elementary_matrix(c: Label, pi: &Permutation) -> IntMatrix {
    let m = pi.m();
    let k = pi.inv_at(m);
    let mut a = IntMatrix::zeros(m);
    match c {
        Label::A => {
            for i in 1..=k {
                a.set(i - 1, i - 1, 1);
            }
            a.set(k - 1, k, 1);
            for i in k + 1..m {
                a.set(i - 1, i, 1);
            }
            a.set(m - 1, k, 1);
        }
        Label::B => {
            for i in 0..m {
                a.set(i, i, 1);
            }
            a.set(m - 1, k - 1, 1);
        }
    }
    a
}

/// One step of Rauzy induction.
#[derive(Clone, Debug)]
pub struct InductionRecord {
    pub label: Label,
    pub matrix: IntMatrix,
    pub next: IetPair,
}

fn induced_provenance(p: &Provenance) -> Provenance {
    match p {
        Provenance::Induced { parent, steps } => Provenance::Induced {
            parent: parent.clone(),
            steps: steps + 1,
        },
        other => Provenance::Induced {
            parent: Box::new(other.clone()),
            steps: 1,
        },
    }
}

/// Winner of the comparison `lambda_m` against `lambda_{pi^{-1}(m)}`.
pub fn winner(pair: &IetPair) -> Result<Label> {
    let m = pair.m();
    let k = pair.perm.inv_at(m);
    let l = &pair.lengths;
    match l.sign(&sub_forms(l.form(m), l.form(k))) {
        Comparison::Less => Ok(Label::A),
        Comparison::Greater => Ok(Label::B),
        Comparison::Equal => Err(Error::AmbiguousComparison(format!(
            "lambda_{m} = lambda_{k}: the IDOC fails for this IET"
        ))),
        Comparison::Ambiguous => Err(Error::AmbiguousComparison(format!(
            "lambda_{m} and lambda_{k} not separated at {} bits",
            l.base().precision().max_bits
        ))),
    }
}

pub fn induction_step(pair: &IetPair) -> Result<InductionRecord> {
    let label = winner(pair)?;
    let m = pair.m();
    let k = pair.perm.inv_at(m);
    let f = pair.lengths.forms();
    let mut g: Vec<Vec<i128>> = f.to_vec();
    match label {
        Label::A => {
            g[k - 1] = sub_forms(&f[k - 1], &f[m - 1]);
            g[k] = f[m - 1].clone();
            for i in k + 1..m {
                g[i] = f[i - 1].clone();
            }
        }
        Label::B => {
            g[m - 1] = sub_forms(&f[m - 1], &f[k - 1]);
        }
    }
    let lengths = pair
        .lengths
        .with_forms(g, induced_provenance(pair.lengths.provenance()));
    let next = IetPair {
        lengths,
        perm: pair.perm.apply(label),
    };
    Ok(InductionRecord {
        label,
        matrix: elementary_matrix(label, &pair.perm),
        next,
    })
}

/// `n` consecutive induction steps.
pub fn induce(pair: &IetPair, n: usize) -> Result<Vec<InductionRecord>> {
    let mut out: Vec<InductionRecord> = Vec::with_capacity(n);
    for _ in 0..n {
        let cur = out.last().map(|r| &r.next).unwrap_or(pair);
        let r = induction_step(cur)?;
        out.push(r);
    }
    Ok(out)
}

/// A path in a Rauzy graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RauzyPath {
    pub start: Permutation,
    pub labels: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct RauzyPathJson {
    start: Permutation,
    labels: String,
}

impl Serialize for RauzyPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RauzyPathJson {
            start: self.start.clone(),
            labels: self.label_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RauzyPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RauzyPathJson::deserialize(d)?;
        let labels = Label::parse_word(&j.labels).map_err(serde::de::Error::custom)?;
        RauzyPath::new(j.start, labels).map_err(serde::de::Error::custom)
    }
}

impl RauzyPath {
    pub fn new(start: Permutation, labels: Vec<Label>) -> Result<Self> {
        start.require_irreducible()?;
        Ok(RauzyPath { start, labels })
    }

    pub fn parse(start: Permutation, labels: &str) -> Result<Self> {
        Self::new(start, Label::parse_word(labels)?)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_string(&self) -> String {
        Label::word_to_string(&self.labels)
    }

    /// Permutations `pi_0 = start, ..., pi_n`.
    pub fn vertices(&self) -> Vec<Permutation> {
        let mut v = vec![self.start.clone()];
        for &c in &self.labels {
            let next = v.last().unwrap().apply(c);
            v.push(next);
        }
        v
    }

    pub fn end(&self) -> Permutation {
        self.vertices().pop().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.end() == self.start
    }

    /// Path repeated `k` times.
    pub fn repeat(&self, k: usize) -> RauzyPath {
        RauzyPath {
            start: self.start.clone(),
            labels: self.labels.repeat(k),
        }
    }

    pub fn concat(&self, other: &RauzyPath) -> Result<RauzyPath> {
        if self.end() != other.start {
            return Err(Error::InvalidInput("paths do not connect".into()));
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Ok(RauzyPath {
            start: self.start.clone(),
            labels,
        })
    }

    pub fn prefix(&self, n: usize) -> RauzyPath {
        RauzyPath {
            start: self.start.clone(),
            labels: self.labels[..n].to_vec(),
        }
    }

    /// The closed path read from position `r`.
    pub fn rotate(&self, r: usize) -> Result<RauzyPath> {
        if !self.is_closed() {
            return Err(Error::InvalidInput("only closed paths can be rotated".into()));
        }
        let v = self.vertices();
        let mut labels = self.labels[r..].to_vec();
        labels.extend_from_slice(&self.labels[..r]);
        Ok(RauzyPath {
            start: v[r].clone(),
            labels,
        })
    }
}

impl std::fmt::Display for RauzyPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.start, self.label_string())
    }
}

/// `A^{(n)} = A(c_1, pi_0) ... A(c_n, pi_{n-1})` and the end permutation.
pub fn compose_path(path: &RauzyPath) -> (IntMatrix, Permutation) {
    let mut p = path.start.clone();
    let mut a = IntMatrix::identity(p.m());
    for &c in &path.labels {
        a = a.mul(&elementary_matrix(c, &p));
        p = p.apply(c);
    }
    (a, p)
}

/// Return times `h^{(n)} = (1, ..., 1) A^{(n)}`.
pub fn heights(a: &IntMatrix) -> IntVector {
    a.column_sums()
}

/// A Rauzy class with its labelled edges.
#[derive(Clone, Debug)]
pub struct RauzyGraph {
    vertices: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// `(a-target, b-target)` for each vertex.
    edges: Vec<[usize; 2]>,
}

impl RauzyGraph {
    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn target(&self, v: usize, c: Label) -> usize {
        self.edges[v][match c {
            Label::A => 0,
            Label::B => 1,
        }]
    }

    /// Edges `(from, label, to)` in vertex order, `a` before `b`.
    pub fn edges(&self) -> Vec<(usize, Label, usize)> {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(v, e)| [(v, Label::A, e[0]), (v, Label::B, e[1])])
            .collect()
    }

    /// Shortest distance from every vertex to `target`, following edges forward.
    pub fn distances_to(&self, target: usize) -> Vec<Option<usize>> {
        let n = self.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, e) in self.edges.iter().enumerate() {
            for &w in e {
                rev[w].push(v);
            }
        }
        let mut d = vec![None; n];
        d[target] = Some(0);
        let mut q = VecDeque::from([target]);
        while let Some(x) = q.pop_front() {
            let dx = d[x].unwrap();
            for &y in &rev[x] {
                if d[y].is_none() {
                    d[y] = Some(dx + 1);
                    q.push_back(y);
                }
            }
        }
        d
    }

    /// Some shortest path between two vertices.
    pub fn shortest_path(&self, from: &Permutation, to: &Permutation) -> Option<RauzyPath> {
        let s = self.index_of(from)?;
        let t = self.index_of(to)?;
        let d = self.distances_to(t);
        d[s]?;
        let mut labels = Vec::new();
        let mut v = s;
        while v != t {
            let dv = d[v].unwrap();
            let c = [Label::A, Label::B]
                .into_iter()
                .find(|&c| d[self.target(v, c)] == Some(dv - 1))
                .unwrap();
            labels.push(c);
            v = self.target(v, c);
        }
        Some(RauzyPath {
            start: from.clone(),
            labels,
        })
    }

    /// DOT digraph; vertices are one-line images.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph rauzy {\n");
        for (i, p) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{p}\"];");
        }
        for (v, c, w) in self.edges() {
            let _ = writeln!(s, "  v{v} -> v{w} [label=\"{}\"];", c.as_char());
        }
        s.push_str("}\n");
        s
    }
}

/// Closure of `pi` under `a` and `b`, in breadth-first order.
pub fn rauzy_class(pi: &Permutation) -> Result<RauzyGraph> {
    pi.require_irreducible()?;
    let mut vertices = vec![pi.clone()];
    let mut index = HashMap::from([(pi.clone(), 0usize)]);
    let mut edges = Vec::new();
    let mut head = 0;
    while head < vertices.len() {
        let p = vertices[head].clone();
        let mut e = [0usize; 2];
        for (slot, q) in [p.apply_a(), p.apply_b()].into_iter().enumerate() {
            let id = match index.get(&q) {
                Some(&id) => id,
                None => {
                    vertices.push(q.clone());
                    index.insert(q, vertices.len() - 1);
                    vertices.len() - 1
                }
            };
            e[slot] = id;
        }
        edges.push(e);
        head += 1;
    }
    Ok(RauzyGraph {
        vertices,
        index,
        edges,
    })
}

/// `max_{i,j,k} E_ij / E_ik`.
pub fn nu(e: &IntMatrix) -> Result<BigRational> {
    let n = e.dim();
    let mut best: Option<BigRational> = None;
    for i in 0..n {
        let row = e.row(i);
        if let Some(j) = row.iter().position(|&x| x <= 0) {
            return Err(Error::NonPositiveEntry(i + 1, j + 1));
        }
        let hi = *row.iter().max().unwrap();
        let lo = *row.iter().min().unwrap();
        let r = BigRational::new(BigInt::from(hi), BigInt::from(lo));
        if best.as_ref().is_none_or(|b| r > *b) {
            best = Some(r);
        }
    }
    best.ok_or_else(|| Error::InvalidInput("empty matrix".into()))
}

/// Rows of a 0/1 pattern matrix as bitsets.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Pattern {
    rows: [u64; 64],
    n: usize,
}

impl Pattern {
    fn identity(n: usize) -> Self {
        let mut rows = [0u64; 64];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = 1 << i;
        }
        Pattern { rows, n }
    }

    fn of(a: &IntMatrix) -> Self {
        let n = a.dim();
        let mut rows = [0u64; 64];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            for j in 0..n {
                if a.get(i, j) != 0 {
                    *r |= 1 << j;
                }
            }
        }
        Pattern { rows, n }
    }

    fn mul(&self, o: &Pattern) -> Pattern {
        let mut rows = [0u64; 64];
        for i in 0..self.n {
            let mut acc = 0u64;
            let mut r = self.rows[i];
            while r != 0 {
                let k = r.trailing_zeros() as usize;
                acc |= o.rows[k];
                r &= r - 1;
            }
            rows[i] = acc;
        }
        Pattern { rows, n: self.n }
    }

    fn is_primitive(&self) -> bool {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut p = *self;
        for _ in 0..self.n * self.n {
            if p.rows[..self.n].iter().all(|&r| r == full) {
                return true;
            }
            p = p.mul(self);
        }
        false
    }
}

struct Searcher<'a> {
    graph: &'a RauzyGraph,
    start: usize,
    dist: Vec<Option<usize>>,
    elem: Vec<[Pattern; 2]>,
}

impl Searcher<'_> {
    fn dfs(&self, v: usize, remaining: usize, pat: Pattern, path: &mut Vec<Label>, out: &mut Vec<Vec<Label>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if remaining == 0 {
            if v == self.start && pat.is_primitive() {
                out.push(path.clone());
            }
            return;
        }
        match self.dist[v] {
            Some(d) if d <= remaining => {}
            _ => return,
        }
        for (slot, c) in [Label::A, Label::B].into_iter().enumerate() {
            let w = self.graph.edges[v][slot];
            path.push(c);
            self.dfs(w, remaining - 1, pat.mul(&self.elem[v][slot]), path, out, limit);
            path.pop();
        }
    }
}

/// Closed paths at `pi` of length exactly `len` beginning with `prefix`, with primitive
/// matrix; at most `limit`, in lexicographic order.
pub fn closed_primitive_paths_of_length(
    pi: &Permutation,
    prefix: &[Label],
    len: usize,
    limit: usize,
) -> Result<Vec<RauzyPath>> {
    let graph = rauzy_class(pi)?;
    if pi.m() > 64 {
        return Err(Error::BadSize {
            m: pi.m(),
            reason: "path search supports m <= 64".into(),
        });
    }
    let start = graph.index_of(pi).unwrap();
    let elem: Vec<[Pattern; 2]> = graph
        .vertices
        .iter()
        .map(|p| {
            [
                Pattern::of(&elementary_matrix(Label::A, p)),
                Pattern::of(&elementary_matrix(Label::B, p)),
            ]
        })
        .collect();
    let s = Searcher {
        dist: graph.distances_to(start),
        graph: &graph,
        start,
        elem,
    };
    if prefix.len() > len {
        return Ok(Vec::new());
    }
    let mut v = start;
    let mut pat = Pattern::identity(pi.m());
    for &c in prefix {
        let slot = (c == Label::B) as usize;
        pat = pat.mul(&s.elem[v][slot]);
        v = graph.edges[v][slot];
    }
    // Fan out over the next few labels, then merge in lexicographic order.
    let split = (len - prefix.len()).min(6);
    let mut seeds: Vec<(usize, Pattern, Vec<Label>)> = vec![(v, pat, prefix.to_vec())];
    for _ in 0..split {
        let mut next = Vec::with_capacity(seeds.len() * 2);
        for (v, pat, path) in seeds {
            for (slot, c) in [Label::A, Label::B].into_iter().enumerate() {
                let mut p = path.clone();
                p.push(c);
                next.push((graph.edges[v][slot], pat.mul(&s.elem[v][slot]), p));
            }
        }
        seeds = next;
    }
    let found: Vec<Vec<Vec<Label>>> = seeds
        .into_par_iter()
        .map(|(v, pat, mut path)| {
            let mut out = Vec::new();
            let rem = len - path.len();
            s.dfs(v, rem, pat, &mut path, &mut out, limit);
            out
        })
        .collect();
    let mut all: Vec<Vec<Label>> = found.into_iter().flatten().collect();
    all.sort();
    all.truncate(limit);
    Ok(all
        .into_iter()
        .map(|labels| RauzyPath {
            start: pi.clone(),
            labels,
        })
        .collect())
}

/// All closed paths at `pi` of length `1..=max_len` with primitive matrix, sorted
/// lexicographically by labels.
pub fn find_closed_primitive_paths(pi: &Permutation, max_len: usize) -> Result<Vec<RauzyPath>> {
    pi.require_irreducible()?;
    let mut all = BTreeSet::new();
    for len in 1..=max_len {
        for p in closed_primitive_paths_of_length(pi, &[], len, usize::MAX)? {
            all.insert(p.labels);
        }
    }
    Ok(all
        .into_iter()
        .map(|labels| RauzyPath {
            start: pi.clone(),
            labels,
        })
        .collect())
}

/// Shortest closed primitive paths at `pi` beginning with `prefix`.
pub fn shortest_closed_primitive_paths(
    pi: &Permutation,
    prefix: &[Label],
    max_len: usize,
    limit: usize,
) -> Result<Vec<RauzyPath>> {
    for len in prefix.len().max(1)..=max_len {
        let found = closed_primitive_paths_of_length(pi, prefix, len, limit)?;
        if !found.is_empty() {
            return Ok(found);
        }
    }
    Ok(Vec::new())
}

/// For the edge `(pi, c)`, the bijection `S -> cS` from `Sigma(pi)` to `Sigma(c pi)`
/// determined by `b(S) = A(c, pi) b(cS)`. Fails unless every `S` has exactly one match.
pub fn transport_cyclic_sets(pi: &Permutation, c: Label) -> Result<Vec<(CyclicSet, CyclicSet)>> {
    let m = pi.m();
    let a = elementary_matrix(c, pi);
    let next = pi.apply(c);
    let src = pi.cyclic_sets();
    let dst = next.cyclic_sets();
    let mut out = Vec::with_capacity(src.len());
    let mut used = vec![false; dst.len()];
    for s in &src {
        let bs = s.b_vector(m);
        let matches: Vec<usize> = dst
            .iter()
            .enumerate()
            .filter(|(_, t)| a.mul_vec(&t.b_vector(m)) == bs)
            .map(|(i, _)| i)
            .collect();
        if matches.len() != 1 {
            return Err(Error::NotFound(format!(
                "{} candidates for the image of {s} along {}-edge at {pi}",
                matches.len(),
                c.as_char()
            )));
        }
        if used[matches[0]] {
            return Err(Error::NotFound(format!("transport at {pi} is not injective")));
        }
        used[matches[0]] = true;
        out.push((s.clone(), dst[matches[0]].clone()));
    }
    if used.iter().any(|u| !u) {
        return Err(Error::NotFound(format!("transport at {pi} is not surjective")));
    }
    Ok(out)
}

/// Image of a cyclic set of `path.start` under transport along the whole path.
pub fn transport_along(path: &RauzyPath, s: &CyclicSet) -> Result<CyclicSet> {
    let mut cur = s.clone();
    let mut p = path.start.clone();
    for &c in &path.labels {
        let map = transport_cyclic_sets(&p, c)?;
        cur = map
            .into_iter()
            .find(|(a, _)| *a == cur)
            .map(|(_, b)| b)
            .ok_or_else(|| Error::NotFound(format!("{cur} is not a cyclic set of {p}")))?;
        p = p.apply(c);
    }
    Ok(cur)
}
