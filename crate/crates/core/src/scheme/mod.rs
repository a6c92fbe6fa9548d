//! Enumeration schemes: discovery, evaluation, verification and I/O.
//!
//! A scheme maps permutations to rules. An expand node splits `Z(B; π; g)`
//! by the slot that receives the next-largest entry; a reduce node either
//! answers 0 (gap vector outside its ideal) or forwards the query to
//! `Z(B; d_r(π); d_r(g))`.

mod eval;
mod io;
mod verify;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Basis, Permutation};
use crate::reducibility::{analyze_entry, es_reducible, reduction_gap_basis, GapIdeal};
use crate::zset::ZSetCounter;

pub use eval::{eval_count, eval_count_uncached, eval_sequence, CountCache};
pub use io::{export, import_json, ExportFormat};
pub use verify::{verify_scheme, VerifyReport, Violation};

pub const DEFAULT_MAX_DEPTH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// `(insertion position, child)` for each `B`-avoiding child, in position order.
    Expand { children: Vec<(usize, Permutation)> },
    Reduce { r: usize, gaps: GapIdeal },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeNode {
    pub perm: Permutation,
    pub kind: NodeKind,
}

impl SchemeNode {
    pub fn is_expand(&self) -> bool {
        matches!(self.kind, NodeKind::Expand { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    basis: Basis,
    nodes: BTreeMap<Permutation, SchemeNode>,
}

impl Scheme {
    /// Assembles a scheme from parts without checking any invariant; use
    /// [`verify_scheme`] to validate.
    pub fn from_nodes(basis: Basis, nodes: impl IntoIterator<Item = SchemeNode>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for node in nodes {
            let key = node.perm.clone();
            if map.insert(key.clone(), node).is_some() {
                return Err(Error::InvalidInput(format!("duplicate node {key}")));
            }
        }
        Ok(Self { basis, nodes: map })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Nodes in (length, lexicographic) order.
    pub fn nodes(&self) -> impl Iterator<Item = &SchemeNode> {
        self.nodes.values()
    }

    pub fn node(&self, perm: &Permutation) -> Option<&SchemeNode> {
        self.nodes.get(perm)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn expand_nodes(&self) -> impl Iterator<Item = &SchemeNode> {
        self.nodes().filter(|n| n.is_expand())
    }

    pub fn reduce_nodes(&self) -> impl Iterator<Item = &SchemeNode> {
        self.nodes().filter(|n| !n.is_expand())
    }

    /// One more than the length of the longest expanded permutation.
    pub fn depth(&self) -> usize {
        self.expand_nodes().map(|n| n.perm.len() + 1).max().unwrap_or(0)
    }

    #[cfg(test)]
    pub(crate) fn remove_node(&mut self, perm: &Permutation) -> Option<SchemeNode> {
        self.nodes.remove(perm)
    }

    #[cfg(test)]
    pub(crate) fn node_mut(&mut self, perm: &Permutation) -> Option<&mut SchemeNode> {
        self.nodes.get_mut(perm)
    }
}

pub fn scheme_depth(s: &Scheme) -> usize {
    s.depth()
}

/// Which reducibility test decides whether a permutation gets a reduce node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// ES⁺: agreement on every non-empty bounded Z-set.
    #[default]
    Extended,
    /// Zeilberger's original test against `J(π)`.
    Classic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_depth: usize,
    pub mode: Mode,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_depth: DEFAULT_MAX_DEPTH,
            mode: Mode::Extended,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildOutcome {
    Scheme(Scheme),
    /// Irreducible permutations of length `max_depth`: no scheme was found at
    /// this depth under the first-reducible-entry policy.
    Frontier(Vec<Permutation>),
}

impl BuildOutcome {
    pub fn scheme(self) -> Option<Scheme> {
        match self {
            BuildOutcome::Scheme(s) => Some(s),
            BuildOutcome::Frontier(_) => None,
        }
    }

    pub fn is_frontier(&self) -> bool {
        matches!(self, BuildOutcome::Frontier(_))
    }
}

pub fn build_scheme(basis: &Basis, max_depth: usize) -> Result<BuildOutcome> {
    build_scheme_with(
        basis,
        &BuildOptions {
            max_depth,
            ..Default::default()
        },
    )
}

/// Breadth-first discovery from `∅`.
///
/// Each permutation takes a reduce node at its first reducible entry; an
/// irreducible one is expanded while shorter than `max_depth` and otherwise
/// lands in the frontier. Reduction targets that were not reached through
/// expansion are queued as well, so the result is closed.
pub fn build_scheme_with(basis: &Basis, opts: &BuildOptions) -> Result<BuildOutcome> {
    build_with_counter(&ZSetCounter::new(basis.clone()), opts)
}

pub(crate) fn build_with_counter(z: &ZSetCounter, opts: &BuildOptions) -> Result<BuildOutcome> {
    if opts.max_depth == 0 {
        return Err(Error::InvalidInput("max_depth must be ≥ 1".into()));
    }
    let mut nodes: BTreeMap<Permutation, SchemeNode> = BTreeMap::new();
    let mut pending: BTreeSet<Permutation> = BTreeSet::new();
    let mut frontier = Vec::new();
    pending.insert(Permutation::empty());

    while let Some(first) = pending.first() {
        let len = first.len();
        let batch: Vec<Permutation> = pending
            .iter()
            .take_while(|p| p.len() == len)
            .cloned()
            .collect();
        for p in &batch {
            pending.remove(p);
        }
        let found: Vec<Result<Option<(usize, GapIdeal)>>> = batch
            .par_iter()
            .map(|p| first_reduction(z, p, opts.mode))
            .collect();

        for (perm, reduction) in batch.into_iter().zip(found) {
            let kind = match reduction? {
                Some((r, gaps)) => {
                    let target = perm.delete_at(r)?;
                    if !nodes.contains_key(&target) {
                        pending.insert(target);
                    }
                    NodeKind::Reduce { r, gaps }
                }
                None if perm.len() < opts.max_depth => {
                    let children: Vec<(usize, Permutation)> = (1..=perm.len() + 1)
                        .map(|j| (j, perm.insert_max(j)))
                        .filter(|(_, c)| c.avoids_all(z.basis()))
                        .collect();
                    for (_, c) in &children {
                        if !nodes.contains_key(c) {
                            pending.insert(c.clone());
                        }
                    }
                    NodeKind::Expand { children }
                }
                None => {
                    frontier.push(perm);
                    continue;
                }
            };
            nodes.insert(perm.clone(), SchemeNode { perm, kind });
        }
    }

    if !frontier.is_empty() {
        frontier.sort();
        return Ok(BuildOutcome::Frontier(frontier));
    }
    Ok(BuildOutcome::Scheme(Scheme {
        basis: z.basis().clone(),
        nodes,
    }))
}

fn first_reduction(z: &ZSetCounter, perm: &Permutation, mode: Mode) -> Result<Option<(usize, GapIdeal)>> {
    for r in 1..=perm.len() {
        match mode {
            Mode::Extended => {
                if let Some(gaps) = analyze_entry(z, perm, r)? {
                    return Ok(Some((r, gaps)));
                }
            }
            Mode::Classic => {
                if es_reducible(z, perm, r)? {
                    return Ok(Some((r, reduction_gap_basis(z, perm, r)?)));
                }
            }
        }
    }
    Ok(None)
}
