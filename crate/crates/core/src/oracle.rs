//! Brute-force ground truth: walks the pattern-avoidance tree (children of
//! avoiders only), independent of Z-sets and schemes.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Basis, Permutation};
use crate::scheme::{eval_sequence, Scheme};
use crate::Count;

pub const DEFAULT_CAP: usize = 10;

/// Calls `visit` on every avoider of length exactly `n`.
///
/// A child can only contain a pattern through its new maximum, since its
/// parent already avoids the basis.
pub fn for_each_avoider(b: &Basis, n: usize, visit: &mut dyn FnMut(&Permutation)) {
    walk(b, &Permutation::empty(), n, visit);
}

fn walk(b: &Basis, p: &Permutation, n: usize, visit: &mut dyn FnMut(&Permutation)) {
    if p.len() == n {
        visit(p);
        return;
    }
    for j in 1..=p.len() + 1 {
        let child = p.insert_max(j);
        if !b.is_contained_through(child.values(), j - 1) {
            walk(b, &child, n, visit);
        }
    }
}

/// Avoiders of length `n` in lexicographic order.
pub fn avoiders(b: &Basis, n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_avoider(b, n, &mut |p| out.push(p.clone()));
    out.sort_by(|x, y| x.values().cmp(y.values()));
    out
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Resource(format!(
            "brute force at n = {n} exceeds the cap of {cap}; raise the cap explicitly"
        )));
    }
    Ok(())
}

/// `s_n(B)` by tree traversal, refusing `n` above [`DEFAULT_CAP`].
pub fn brute_avoiders(b: &Basis, n: usize) -> Result<u64> {
    brute_avoiders_with_cap(b, n, DEFAULT_CAP)
}

pub fn brute_avoiders_with_cap(b: &Basis, n: usize, cap: usize) -> Result<u64> {
    check_cap(n, cap)?;
    Ok(count_level(b, n))
}

/// Splits the tree at a shallow level and counts the subtrees in parallel.
fn count_level(b: &Basis, n: usize) -> u64 {
    let split = n.min(4);
    let roots = avoiders(b, split);
    roots
        .par_iter()
        .map(|r| {
            let mut c = 0u64;
            walk(b, r, n, &mut |_| c += 1);
            c
        })
        .sum()
}

/// `s_0, …, s_{n_max}` by tree traversal.
pub fn brute_sequence(b: &Basis, n_max: usize, cap: usize) -> Result<Vec<u64>> {
    check_cap(n_max, cap)?;
    Ok((0..=n_max).map(|n| count_level(b, n)).collect())
}

/// `s_n(B)` by filtering all of `S_n`; the slow route, kept to check the
/// tree pruning.
pub fn count_by_filtering(b: &Basis, n: usize) -> u64 {
    (1..=n)
        .permutations(n)
        .filter(|v| {
            let p = Permutation::new(v.clone()).expect("itertools yields permutations");
            p.avoids_all(b)
        })
        .count() as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareRow {
    pub n: usize,
    pub brute: Count,
    pub scheme: Count,
}

impl CompareRow {
    pub fn pass(&self) -> bool {
        self.brute == self.scheme
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(CompareRow::pass)
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>3}  {:>12}  {:>12}  verdict", "n", "brute", "scheme")?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>3}  {:>12}  {:>12}  {}",
                row.n,
                row.brute,
                row.scheme,
                if row.pass() { "ok" } else { "MISMATCH" }
            )?;
        }
        write!(f, "{}", if self.all_pass() { "all pass" } else { "FAILED" })
    }
}

/// Brute counts against scheme counts for `n = 0..=n_max`.
pub fn compare(b: &Basis, n_max: usize, s: &Scheme) -> Result<CompareReport> {
    compare_with_cap(b, n_max, s, DEFAULT_CAP)
}

pub fn compare_with_cap(b: &Basis, n_max: usize, s: &Scheme, cap: usize) -> Result<CompareReport> {
    if s.basis() != b {
        return Err(Error::InvalidInput(format!(
            "scheme was built for {}, not {b}",
            s.basis()
        )));
    }
    let brute = brute_sequence(b, n_max, cap)?;
    let scheme = eval_sequence(s, n_max as u32)?;
    Ok(CompareReport {
        rows: brute
            .into_iter()
            .zip(scheme)
            .enumerate()
            .map(|(n, (brute, scheme))| CompareRow {
                n,
                brute: BigUint::from(brute),
                scheme,
            })
            .collect(),
    })
}
