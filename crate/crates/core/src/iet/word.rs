//! Finite words over `{1, ..., m}` and their population vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::linalg::IntVector;

/// A word over `{1, ..., m}`. Symbols are stored 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        assert!(symbols.iter().all(|&s| s >= 1), "symbols are 1-based");
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn push(&mut self, s: usize) {
        assert!(s >= 1);
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `w` followed by its first symbol.
    pub fn with_first_appended(&self) -> Word {
        let mut v = self.0.clone();
        if let Some(&s) = self.0.first() {
            v.push(s);
        }
        Word(v)
    }

    pub fn max_symbol(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s > m) {
            Some(s) => Err(Error::InvalidInput(format!("symbol {s} outside 1..={m}"))),
            None => Ok(()),
        }
    }

    /// Every symbol shifted by `d`.
    pub fn shifted(&self, d: usize) -> Word {
        Word(self.0.iter().map(|s| s + d).collect())
    }

    /// Count vector `l(w)` of dimension `m`.
    pub fn population(&self, m: usize) -> IntVector {
        let mut l = vec![0i64; m];
        for &s in &self.0 {
            l[s - 1] += 1;
        }
        l
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// Length first, then lexicographic.
    pub fn canonical_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word::new(v)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Either a run of digits `1525` or a comma list `10,2,11`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let syms: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<usize>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let syms = syms.ok_or_else(|| Error::InvalidInput(format!("bad word {s:?}")))?;
        if syms.iter().any(|&x| x == 0) {
            return Err(Error::InvalidInput(format!("bad word {s:?}: symbols start at 1")));
        }
        Ok(Word(syms))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s <= 9) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Population vector of a word.
pub fn population(w: &Word, m: usize) -> IntVector {
    w.population(m)
}
