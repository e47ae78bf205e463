//! Irreducible permutations, the Rauzy operations, and the invariants built from
//! the auxiliary permutation `eta`.
//!
//! Convention: `pi(i)` is the position, after the exchange, of the interval that
//! sits at position `i` before it. Indices are 1-based in every public method.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::linalg::{rational_kernel, IntMatrix, IntVector, RowSpace};

/// A bijection of `{1, ..., m}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PermutationJson", into = "PermutationJson")]
pub struct Permutation {
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    m: usize,
    image: Vec<usize>,
}

impl TryFrom<PermutationJson> for Permutation {
    type Error = Error;
    fn try_from(j: PermutationJson) -> Result<Self> {
        if j.m != j.image.len() {
            return Err(Error::InvalidPermutation(format!(
                "m = {} but image has {} entries",
                j.m,
                j.image.len()
            )));
        }
        Permutation::new(j.image)
    }
}

impl From<Permutation> for PermutationJson {
    fn from(p: Permutation) -> Self {
        PermutationJson {
            m: p.m(),
            image: p.image,
        }
    }
}

/// Label of a Rauzy move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
}

impl Label {
    pub fn as_char(self) -> char {
        match self {
            Label::A => 'a',
            Label::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a' => Ok(Label::A),
            'b' => Ok(Label::B),
            _ => Err(Error::InvalidInput(format!("label must be 'a' or 'b', got {c:?}"))),
        }
    }

    pub fn parse_word(s: &str) -> Result<Vec<Label>> {
        s.chars().map(Label::from_char).collect()
    }

    pub fn word_to_string(w: &[Label]) -> String {
        w.iter().map(|l| l.as_char()).collect()
    }
}

impl Permutation {
    /// Validate a one-line image `(pi(1), ..., pi(m))`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let m = image.len();
        if m < 2 {
            return Err(Error::InvalidPermutation("size must be at least 2".into()));
        }
        let mut seen = vec![false; m + 1];
        for &v in &image {
            if v == 0 || v > m || seen[v] {
                return Err(Error::InvalidPermutation(format!("{image:?} is not a bijection of 1..={m}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn m(&self) -> usize {
        self.image.len()
    }

    /// `pi(i)` for `1 <= i <= m`.
    pub fn at(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// `pi^{-1}(j)`.
    pub fn inv_at(&self, j: usize) -> usize {
        self.image.iter().position(|&v| v == j).unwrap() + 1
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let m = self.m();
        let mut inv = vec![0; m];
        for i in 1..=m {
            inv[self.at(i) - 1] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_irreducible(&self) -> bool {
        let m = self.m();
        let mut max = 0;
        for k in 1..m {
            max = max.max(self.at(k));
            if max == k {
                return false;
            }
        }
        true
    }

    pub fn require_irreducible(&self) -> Result<()> {
        if self.is_irreducible() {
            Ok(())
        } else {
            Err(Error::NotIrreducible(self.to_string()))
        }
    }

    /// The move `a`.
    pub fn apply_a(&self) -> Permutation {
        let m = self.m();
        let k = self.inv_at(m);
        let image = (1..=m)
            .map(|i| {
                if i <= k {
                    self.at(i)
                } else if i == k + 1 {
                    self.at(m)
                } else {
                    self.at(i - 1)
                }
            })
            .collect();
        Permutation { image }
    }

    /// The move `b`.
    pub fn apply_b(&self) -> Permutation {
        let m = self.m();
        let pm = self.at(m);
        let image = (1..=m)
            .map(|i| {
                let p = self.at(i);
                if p <= pm {
                    p
                } else if p < m {
                    p + 1
                } else {
                    pm + 1
                }
            })
            .collect();
        Permutation { image }
    }

    pub fn apply(&self, c: Label) -> Permutation {
        match c {
            Label::A => self.apply_a(),
            Label::B => self.apply_b(),
        }
    }

    /// `eta` as a vector indexed by `0..=m`.
    pub fn eta(&self) -> Vec<usize> {
        let m = self.m();
        let k = self.inv_at(m);
        (0..=m)
            .map(|i| {
                if i == 0 {
                    self.inv_at(1) - 1
                } else if i == k {
                    m
                } else {
                    self.inv_at(self.at(i) + 1) - 1
                }
            })
            .collect()
    }

    /// Orbits of `eta`, each sorted, listed by smallest member.
    pub fn cyclic_sets(&self) -> Vec<CyclicSet> {
        let eta = self.eta();
        let m = self.m();
        let mut seen = vec![false; m + 1];
        let mut out = Vec::new();
        for s in 0..=m {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![];
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = eta[x];
            }
            orbit.sort_unstable();
            out.push(CyclicSet { members: orbit });
        }
        out
    }

    /// `L^pi`: `1` if `i < j, pi(i) > pi(j)`; `-1` if `i > j, pi(i) < pi(j)`; else `0`.
    pub fn l_matrix(&self) -> IntMatrix {
        let m = self.m();
        let mut l = IntMatrix::zeros(m);
        for i in 1..=m {
            for j in 1..=m {
                let v = if i < j && self.at(i) > self.at(j) {
                    1
                } else if i > j && self.at(i) < self.at(j) {
                    -1
                } else {
                    0
                };
                l.set(i - 1, j - 1, v);
            }
        }
        l
    }

    /// `h` lies in the image of `L^pi`, tested as orthogonality to `ker L^pi`.
    pub fn h_membership(&self, h: &[i64]) -> bool {
        let m = self.m();
        assert_eq!(h.len(), m);
        let rows = self.l_matrix().to_rational_rows();
        let ker = rational_kernel(&rows, m);
        ker.iter().all(|v| {
            let s: BigRational = v
                .iter()
                .zip(h)
                .map(|(a, &b)| a * BigRational::from_integer(BigInt::from(b)))
                .sum();
            s == BigRational::from_integer(BigInt::from(0))
        })
    }

    /// `h . b(S) = 0` for every cyclic set `S`.
    pub fn h_membership_via_b(&self, h: &[i64]) -> bool {
        let m = self.m();
        self.cyclic_sets()
            .iter()
            .all(|s| crate::numerics::linalg::dot(&s.b_vector(m), h) == 0)
    }

    /// Kernel of `L^pi` as a rational subspace.
    pub fn l_kernel(&self) -> RowSpace {
        let m = self.m();
        RowSpace::span(m, &rational_kernel(&self.l_matrix().to_rational_rows(), m))
    }

    /// Every `b(S)` has entry sum `+-1`.
    pub fn in_tilde_class(&self) -> bool {
        let m = self.m();
        self.cyclic_sets()
            .iter()
            .all(|s| s.b_vector(m).iter().sum::<i64>().abs() == 1)
    }

    /// `tau_m^sym = (m, m-1, ..., 1)`.
    pub fn tau_sym(m: usize) -> Result<Permutation> {
        if m < 2 {
            return Err(Error::BadSize {
                m,
                reason: "symmetric permutation needs m >= 2".into(),
            });
        }
        Ok(Permutation {
            image: (1..=m).rev().collect(),
        })
    }

    /// `tau_m = (m-1, 1, m-2, m-3, ..., 3, m, 2)` for odd `m >= 5`.
    pub fn tau(m: usize) -> Result<Permutation> {
        if m < 5 || m % 2 == 0 {
            return Err(Error::BadSize {
                m,
                reason: "tau_m is defined for odd m >= 5".into(),
            });
        }
        let mut image = vec![m - 1, 1];
        image.extend((3..=m - 2).rev());
        image.push(m);
        image.push(2);
        Ok(Permutation { image })
    }

    /// Parse `"(5,4,3,2,1)"`, `"5 4 3 2 1"` or `"54321"` (single digits only).
    pub fn parse(s: &str) -> Result<Permutation> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts: Vec<&str> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        let image: Vec<usize> = if parts.len() == 1 && parts[0].len() > 1 {
            parts[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidPermutation(s.to_string()))?
        } else {
            parts
                .iter()
                .map(|p| p.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidPermutation(s.to_string()))?
        };
        Permutation::new(image)
    }
}

/// Applying `a` once and then `b` (m-3) times to `tau_m^sym` gives `tau_m`.
pub fn reduction_identity_check(m: usize) -> Result<bool> {
    let mut p = Permutation::tau_sym(m)?.apply_a();
    let target = Permutation::tau(m)?;
    for _ in 0..m - 3 {
        p = p.apply_b();
    }
    Ok(p == target)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.image.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An orbit of `eta_pi` inside `{0, ..., m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicSet {
    members: Vec<usize>,
}

impl CyclicSet {
    /// Build from members; does not check closure under any `eta`.
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        CyclicSet { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// `b(S)_i = chi_S(i-1) - chi_S(i)` for `i = 1..m`.
    pub fn b_vector(&self, m: usize) -> IntVector {
        let chi = |i: usize| self.contains(i) as i64;
        (1..=m).map(|i| chi(i - 1) - chi(i)).collect()
    }
}

impl fmt::Display for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.members.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Entry sum of `b(S)` predicted from membership of `0` and `m`.
pub fn predicted_b_sum(s: &CyclicSet, m: usize) -> i64 {
    s.contains(0) as i64 - s.contains(m) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rauzy_moves_on_symmetric() {
        let s = Permutation::tau_sym(5).unwrap();
        assert_eq!(s.apply_a(), p(&[5, 1, 4, 3, 2]));
        assert_eq!(s.apply_b(), p(&[2, 5, 4, 3, 1]));
        let two = p(&[2, 1]);
        assert_eq!(two.apply_a(), two);
        assert_eq!(two.apply_b(), two);
    }

    #[test]
    fn irreducibility() {
        assert!(p(&[5, 4, 3, 2, 1]).is_irreducible());
        assert!(!p(&[1, 3, 2]).is_irreducible());
        assert!(p(&[4, 1, 3, 5, 2]).is_irreducible());
    }

    #[test]
    fn eta_of_symmetric() {
        assert_eq!(Permutation::tau_sym(5).unwrap().eta(), vec![4, 5, 0, 1, 2, 3]);
        let e = p(&[2, 1]).eta();
        let mut sorted = e.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn taus() {
        assert_eq!(Permutation::tau(5).unwrap(), p(&[4, 1, 3, 5, 2]));
        assert_eq!(Permutation::tau(7).unwrap(), p(&[6, 1, 5, 4, 3, 7, 2]));
        assert!(Permutation::tau(6).is_err());
        assert!(Permutation::tau(3).is_err());
    }

    #[test]
    fn cyclic_sets_of_tau7() {
        let c = Permutation::tau(7).unwrap().cyclic_sets();
        assert_eq!(c[0].members(), &[0, 1, 3, 5]);
        assert_eq!(c[1].members(), &[2, 4, 6, 7]);
        assert_eq!(c[0].b_vector(7), vec![0, 1, -1, 1, -1, 1, 0]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Permutation::parse("(5,4,3,2,1)").unwrap(), p(&[5, 4, 3, 2, 1]));
        assert_eq!(Permutation::parse("54321").unwrap(), p(&[5, 4, 3, 2, 1]));
        assert_eq!(Permutation::parse("10 9 8 7 6 5 4 3 2 1").unwrap().m(), 10);
        assert!(Permutation::parse("(1,1)").is_err());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&p(&[5, 4, 3, 2, 1])).unwrap();
        assert_eq!(s, r#"{"m":5,"image":[5,4,3,2,1]}"#);
        let back: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p(&[5, 4, 3, 2, 1]));
        assert!(serde_json::from_str::<Permutation>(r#"{"m":3,"image":[1,2]}"#).is_err());
    }
}
