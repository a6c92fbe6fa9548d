//! Permutations, bases and the elementary operations on them.
//!
//! Positions and values are 1-based in every public signature. A permutation
//! of length `k` stores its values as bytes, so lengths are capped at 255.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_LEN: usize = u8::MAX as usize;

/// A bijection of `{1..k}` onto itself in one-line notation.
///
/// Ordered first by length and then lexicographically, which is the order
/// used for scheme nodes and serialized output.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    values: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Reverse,
    Complement,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumMode {
    Direct,
    Skew,
}

impl Permutation {
    /// Builds a permutation from 1-based values, checking the bijection.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let k = values.len();
        if k > MAX_LEN {
            return Err(Error::InvalidInput(format!(
                "permutation length {k} exceeds {MAX_LEN}"
            )));
        }
        let mut seen = vec![false; k + 1];
        for &v in &values {
            if v == 0 || v > k || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "{values:?} is not a permutation of 1..{k}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self {
            values: values.into_iter().map(|v| v as u8).collect(),
        })
    }

    /// Caller guarantees `values` is a permutation of `1..=len`.
    pub(crate) fn from_raw(values: Vec<u8>) -> Self {
        debug_assert!(Self::new(values.iter().map(|&v| v as usize).collect()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn identity(k: usize) -> Self {
        Self::from_raw((1..=k as u8).collect())
    }

    pub fn decreasing(k: usize) -> Self {
        Self::from_raw((1..=k as u8).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v as usize).collect()
    }

    /// Value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.values[pos - 1] as usize
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        Matcher::new(&pattern.values).occurs_in(&self.values, None)
    }

    pub fn avoids_all(&self, basis: &Basis) -> bool {
        !basis.is_contained_in(&self.values)
    }

    /// `st(p - p(r))`: removes the entry at position `r` and standardizes.
    pub fn delete_at(&self, r: usize) -> Result<Self> {
        if r == 0 || r > self.len() {
            return Err(Error::InvalidInput(format!(
                "position {r} out of range for {self}"
            )));
        }
        let removed = self.values[r - 1];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != r - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Ok(Self::from_raw(values))
    }

    /// Inserts the new maximum `k+1` so that it lands at 1-based position `j`.
    pub fn insert_max(&self, j: usize) -> Self {
        assert!(j >= 1 && j <= self.len() + 1, "insertion slot out of range");
        let mut values = Vec::with_capacity(self.len() + 1);
        values.extend_from_slice(&self.values[..j - 1]);
        values.push(self.len() as u8 + 1);
        values.extend_from_slice(&self.values[j - 1..]);
        Self::from_raw(values)
    }

    /// The `k+1` children, indexed by the insertion position of the new maximum.
    pub fn children(&self) -> Vec<Self> {
        (1..=self.len() + 1).map(|j| self.insert_max(j)).collect()
    }

    /// Removes the maximum entry (inverse of [`Permutation::insert_max`]).
    pub fn remove_max(&self) -> Option<Self> {
        let k = self.len() as u8;
        if k == 0 {
            return None;
        }
        Some(Self::from_raw(
            self.values.iter().copied().filter(|&v| v != k).collect(),
        ))
    }

    pub fn reverse(&self) -> Self {
        Self::from_raw(self.values.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let k = self.len() as u8;
        Self::from_raw(self.values.iter().map(|&v| k + 1 - v).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Self::from_raw(inv)
    }

    pub fn apply(&self, op: Symmetry) -> Self {
        match op {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::Inverse => self.inverse(),
        }
    }

    pub fn sum(&self, other: &Permutation, mode: SumMode) -> Result<Self> {
        let (m, n) = (self.len(), other.len());
        if m + n > MAX_LEN {
            return Err(Error::InvalidInput("sum too long".into()));
        }
        let (shift_left, shift_right) = match mode {
            SumMode::Direct => (0, m as u8),
            SumMode::Skew => (n as u8, 0),
        };
        let values = self
            .values
            .iter()
            .map(|&v| v + shift_left)
            .chain(other.values.iter().map(|&v| v + shift_right))
            .collect();
        Ok(Self::from_raw(values))
    }

    pub fn direct_sum(&self, other: &Permutation) -> Result<Self> {
        self.sum(other, SumMode::Direct)
    }

    pub fn skew_sum(&self, other: &Permutation) -> Result<Self> {
        self.sum(other, SumMode::Skew)
    }

    /// True iff no contiguous window of length `2..k` holds a contiguous range
    /// of values. Lengths 1 and 2 count as simple; the empty permutation does not.
    pub fn is_simple(&self) -> bool {
        let k = self.len();
        if k == 0 {
            return false;
        }
        for i in 0..k {
            let (mut lo, mut hi) = (self.values[i], self.values[i]);
            for j in i + 1..k {
                lo = lo.min(self.values[j]);
                hi = hi.max(self.values[j]);
                let width = j - i + 1;
                if width < k && (hi - lo) as usize == width - 1 {
                    return false;
                }
            }
        }
        true
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return f.write_str("∅");
        }
        if self.values.iter().all(|&v| v <= 9) {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `51342`, `4 6 7 1 8 2 3 5`, or `∅` / empty for the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::empty());
        }
        let values: Vec<usize> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad entry {tok:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(values).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Standardizes a word of distinct naturals to the order-isomorphic permutation.
pub fn standardize(word: &[usize]) -> Result<Permutation> {
    if word.len() > MAX_LEN {
        return Err(Error::InvalidInput("word too long".into()));
    }
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::InvalidInput(format!(
            "word {word:?} has repeated entries"
        )));
    }
    let mut values = vec![0u8; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u8 + 1;
    }
    Ok(Permutation::from_raw(values))
}

/// Backtracking occurrence search for one pattern.
///
/// For each pattern index `t`, `below[t]`/`above[t]` name the earlier pattern
/// index holding the nearest smaller/larger value, so a candidate host entry
/// only has to be compared against two already-matched entries.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    pat: Vec<u8>,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl Matcher {
    pub(crate) fn new(pat: &[u8]) -> Self {
        let m = pat.len();
        let mut below = vec![None; m];
        let mut above = vec![None; m];
        for t in 0..m {
            for s in 0..t {
                if pat[s] < pat[t] {
                    if below[t].map_or(true, |b: usize| pat[b] < pat[s]) {
                        below[t] = Some(s);
                    }
                } else if above[t].map_or(true, |a: usize| pat[a] > pat[s]) {
                    above[t] = Some(s);
                }
            }
        }
        Self {
            pat: pat.to_vec(),
            below,
            above,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.pat.len()
    }

    /// Does `host` (distinct values, not necessarily standardized) contain the
    /// pattern? With `must_use = Some(i)` only occurrences through host index
    /// `i` count.
    pub(crate) fn occurs_in(&self, host: &[u8], must_use: Option<usize>) -> bool {
        let m = self.pat.len();
        if m == 0 {
            return must_use.is_none();
        }
        if m > host.len() {
            return false;
        }
        let mut matched = vec![0usize; m];
        self.search(host, 0, 0, &mut matched, must_use, false)
    }

    fn search(
        &self,
        host: &[u8],
        t: usize,
        start: usize,
        matched: &mut [usize],
        must_use: Option<usize>,
        used: bool,
    ) -> bool {
        let m = self.pat.len();
        if t == m {
            return must_use.is_none() || used;
        }
        let lo = self.below[t].map(|s| host[matched[s]]);
        let hi = self.above[t].map(|s| host[matched[s]]);
        let last = host.len() - (m - t);
        for i in start..=last {
            if let Some(u) = must_use {
                if !used && i > u {
                    return false;
                }
            }
            let v = host[i];
            if lo.map_or(false, |l| v < l) || hi.map_or(false, |h| v > h) {
                continue;
            }
            matched[t] = i;
            let now_used = used || must_use == Some(i);
            if self.search(host, t + 1, i + 1, matched, must_use, now_used) {
                return true;
            }
        }
        false
    }
}

/// A finite antichain of non-empty patterns.
#[derive(Clone)]
pub struct Basis {
    patterns: Vec<Permutation>,
    matchers: Vec<Matcher>,
}

impl Basis {
    /// Normalizes `patterns` to an antichain, dropping every pattern that
    /// contains another one (and duplicates).
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut ps: Vec<Permutation> = patterns.into_iter().collect();
        if ps.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidInput(
                "the empty permutation cannot be a basis element".into(),
            ));
        }
        ps.sort();
        ps.dedup();
        let mut kept: Vec<Permutation> = Vec::new();
        // shorter patterns come first, so containment only has to look back
        for p in ps {
            if !kept.iter().any(|q| p.contains(q)) {
                kept.push(p);
            }
        }
        let matchers = kept.iter().map(|p| Matcher::new(p.values())).collect();
        Ok(Self {
            patterns: kept,
            matchers,
        })
    }

    pub fn empty() -> Self {
        Self {
            patterns: Vec::new(),
            matchers: Vec::new(),
        }
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Length of the longest pattern; 0 for the empty basis.
    pub fn max_len(&self) -> usize {
        self.patterns.iter().map(Permutation::len).max().unwrap_or(0)
    }

    /// The class contains only the empty permutation.
    pub fn is_degenerate(&self) -> bool {
        self.patterns.iter().any(|p| p.len() == 1)
    }

    pub fn reverse(&self) -> Self {
        self.map(Permutation::reverse)
    }

    pub fn apply(&self, op: Symmetry) -> Self {
        self.map(|p| p.apply(op))
    }

    fn map(&self, f: impl Fn(&Permutation) -> Permutation) -> Self {
        Self::new(self.patterns.iter().map(f)).expect("symmetries preserve non-emptiness")
    }

    pub(crate) fn is_contained_in(&self, host: &[u8]) -> bool {
        self.matchers.iter().any(|m| m.occurs_in(host, None))
    }

    /// Some pattern occurs in `host` through index `idx`.
    pub(crate) fn is_contained_through(&self, host: &[u8], idx: usize) -> bool {
        self.matchers
            .iter()
            .any(|m| m.len() <= host.len() && m.occurs_in(host, Some(idx)))
    }
}

/// Normalizes a set of patterns into a basis. See [`Basis::new`].
pub fn normalize_basis(patterns: impl IntoIterator<Item = Permutation>) -> Result<Basis> {
    Basis::new(patterns)
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        self.patterns == other.patterns
    }
}

impl Eq for Basis {}

impl std::hash::Hash for Basis {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.patterns.hash(state);
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.patterns.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Basis({self})")
    }
}

impl FromStr for Basis {
    type Err = Error;

    /// Comma-separated patterns; an empty string or `∅` is the empty basis.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Self::empty());
        }
        let patterns = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() || tok == "∅" {
                    return Err(Error::Parse(format!("empty pattern in basis {s:?}")));
                }
                tok.parse::<Permutation>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(patterns)
    }
}
