//! Gap vectors and exhaustive enumeration of Z-sets.
//!
//! `Z(B; π; g)` is the set of `B`-avoiders of length `k + ‖g‖` whose `k`
//! smallest values sit in the slots fixed by `g` (with `g_j` larger entries in
//! the `j`-th gap) and form the pattern `π` there.

use std::fmt;

use dashmap::DashMap;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::{Basis, Permutation};
use crate::Count;

/// Counts of untracked large entries in each of the `k+1` gaps around a
/// tracked permutation of length `k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GapVector(Vec<u32>);

impl GapVector {
    pub fn new(gaps: Vec<u32>) -> Result<Self> {
        if gaps.is_empty() {
            return Err(Error::InvalidInput("gap vector must have length ≥ 1".into()));
        }
        Ok(Self(gaps))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1);
        Self(vec![0; dim])
    }

    /// `e_j` (1-based slot).
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut g = Self::zeros(dim);
        g.0[j - 1] = 1;
        g
    }

    pub fn single(n: u32) -> Self {
        Self(vec![n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    /// Component at 1-based slot `j`.
    pub fn at(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &GapVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Merges slots `r` and `r+1`, the gap-vector counterpart of deleting the
    /// `r`-th tracked entry.
    pub fn gap_delete(&self, r: usize) -> Result<Self> {
        if r == 0 || r >= self.len() {
            return Err(Error::InvalidInput(format!(
                "cannot merge slots {r},{} of {self}",
                r + 1
            )));
        }
        let mut out = Vec::with_capacity(self.len() - 1);
        out.extend_from_slice(&self.0[..r - 1]);
        out.push(self.0[r - 1] + self.0[r]);
        out.extend_from_slice(&self.0[r + 1..]);
        Ok(Self(out))
    }

    /// Promotes one untracked entry of slot `j` to a tracked one, leaving `i`
    /// untracked entries on its left and `g_j - 1 - i` on its right.
    pub fn gap_split(&self, j: usize, i: u32) -> Result<Self> {
        if j == 0 || j > self.len() {
            return Err(Error::InvalidInput(format!("slot {j} out of range for {self}")));
        }
        let gj = self.0[j - 1];
        if gj == 0 || i >= gj {
            return Err(Error::InvalidInput(format!(
                "cannot split slot {j} of {self} at {i}"
            )));
        }
        let mut out = Vec::with_capacity(self.len() + 1);
        out.extend_from_slice(&self.0[..j - 1]);
        out.push(i);
        out.push(gj - 1 - i);
        out.extend_from_slice(&self.0[j..]);
        Ok(Self(out))
    }

    /// Every vector of length `dim` with norm at most `max_norm`, ordered by
    /// norm and then lexicographically.
    pub fn all_up_to(dim: usize, max_norm: u32) -> Vec<GapVector> {
        let mut out = Vec::new();
        for norm in 0..=max_norm {
            let mut cur = vec![0u32; dim];
            compositions(&mut cur, 0, norm, &mut out);
        }
        out
    }

    pub(crate) fn graded_key(&self) -> (u32, &[u32]) {
        (self.norm(), &self.0)
    }
}

fn compositions(cur: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<GapVector>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(GapVector(cur.clone()));
        return;
    }
    for v in 0..=remaining {
        cur[idx] = v;
        compositions(cur, idx + 1, remaining - v, out);
    }
    cur[idx] = 0;
}

impl fmt::Display for GapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for GapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GapVector{self}")
    }
}

/// Z-set enumerator for a fixed basis, with counts memoized per `(π, g)`.
///
/// Counts are plain `u64`: every count here comes from explicit enumeration.
pub struct ZSetCounter {
    basis: Basis,
    cache: DashMap<(Permutation, GapVector), u64>,
}

impl ZSetCounter {
    pub fn new(basis: Basis) -> Self {
        Self {
            basis,
            cache: DashMap::new(),
        }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.len()
    }

    pub fn count(&self, pi: &Permutation, g: &GapVector) -> Result<u64> {
        check_dims(pi, g)?;
        Ok(self.count_unchecked(pi, g))
    }

    pub fn is_nonempty(&self, pi: &Permutation, g: &GapVector) -> Result<bool> {
        self.count(pi, g).map(|c| c > 0)
    }

    pub(crate) fn count_unchecked(&self, pi: &Permutation, g: &GapVector) -> u64 {
        let key = (pi.clone(), g.clone());
        if let Some(c) = self.cache.get(&key) {
            return *c;
        }
        let mut n = 0u64;
        self.enumerate(pi, g, &mut |_| n += 1);
        self.cache.insert(key, n);
        n
    }

    /// Members in lexicographic order.
    pub fn members(&self, pi: &Permutation, g: &GapVector) -> Result<Vec<Permutation>> {
        check_dims(pi, g)?;
        let mut out = Vec::new();
        self.enumerate(pi, g, &mut |cells| {
            out.push(Permutation::from_raw(cells.to_vec()))
        });
        Ok(out)
    }

    /// Assigns the untracked values `k+1..` cell by cell from left to right,
    /// cutting a branch as soon as the placed entries contain a basis element.
    fn enumerate(&self, pi: &Permutation, g: &GapVector, visit: &mut dyn FnMut(&[u8])) {
        if !pi.avoids_all(&self.basis) {
            return;
        }
        let k = pi.len();
        let total = k + g.norm() as usize;
        assert!(total <= crate::perm::MAX_LEN, "Z-set permutations too long");
        let mut cells = vec![0u8; total];
        let mut untracked = Vec::with_capacity(total - k);
        let mut pos = 0;
        for j in 1..=k + 1 {
            for _ in 0..g.at(j) {
                untracked.push(pos);
                pos += 1;
            }
            if j <= k {
                cells[pos] = pi.at(j) as u8;
                pos += 1;
            }
        }
        let mut state = Fill {
            basis: &self.basis,
            cells,
            untracked,
            free: vec![true; total - k],
            offset: k as u8 + 1,
            scratch: Vec::with_capacity(total),
        };
        state.fill(0, visit);
    }
}

struct Fill<'a> {
    basis: &'a Basis,
    cells: Vec<u8>,
    untracked: Vec<usize>,
    free: Vec<bool>,
    offset: u8,
    scratch: Vec<u8>,
}

impl Fill<'_> {
    fn fill(&mut self, idx: usize, visit: &mut dyn FnMut(&[u8])) {
        if idx == self.untracked.len() {
            visit(&self.cells);
            return;
        }
        let pos = self.untracked[idx];
        for vi in 0..self.free.len() {
            if !self.free[vi] {
                continue;
            }
            self.cells[pos] = self.offset + vi as u8;
            if !self.violates(pos) {
                self.free[vi] = false;
                self.fill(idx + 1, visit);
                self.free[vi] = true;
            }
        }
        self.cells[pos] = 0;
    }

    /// Does the set of placed entries contain a basis element through `pos`?
    fn violates(&mut self, pos: usize) -> bool {
        self.scratch.clear();
        let mut through = 0;
        for (i, &v) in self.cells.iter().enumerate() {
            if v != 0 {
                if i == pos {
                    through = self.scratch.len();
                }
                self.scratch.push(v);
            }
        }
        self.basis.is_contained_through(&self.scratch, through)
    }
}

fn check_dims(pi: &Permutation, g: &GapVector) -> Result<()> {
    if g.len() != pi.len() + 1 {
        return Err(Error::InvalidInput(format!(
            "gap vector {g} has length {} but {pi} needs {}",
            g.len(),
            pi.len() + 1
        )));
    }
    Ok(())
}

/// Members of `Z(b; π; g)` in lexicographic order.
pub fn zset_members(b: &Basis, pi: &Permutation, g: &GapVector) -> Result<Vec<Permutation>> {
    ZSetCounter::new(b.clone()).members(pi, g)
}

/// `|Z(b; π; g)|`.
pub fn zset_count(b: &Basis, pi: &Permutation, g: &GapVector) -> Result<Count> {
    ZSetCounter::new(b.clone()).count(pi, g).map(BigUint::from)
}
