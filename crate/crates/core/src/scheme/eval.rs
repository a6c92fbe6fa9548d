use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{NodeKind, Scheme};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::zset::GapVector;
use crate::Count;

/// Memo table for scheme evaluation, keyed by `(π, g)`.
#[derive(Debug, Default, Clone)]
pub struct CountCache {
    map: HashMap<(Permutation, GapVector), Count>,
}

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// `|Z(B; π; g)|` computed through the scheme's rules.
///
/// Every expand step lowers `‖g‖` and every reduce step shortens `π` at the
/// same norm, so the recursion terminates.
pub fn eval_count(s: &Scheme, pi: &Permutation, g: &GapVector, cache: &mut CountCache) -> Result<Count> {
    check_query(s, pi, g)?;
    eval(s, pi, g, Some(cache))
}

/// Same as [`eval_count`] without memoization; exponential, for cross-checks.
pub fn eval_count_uncached(s: &Scheme, pi: &Permutation, g: &GapVector) -> Result<Count> {
    check_query(s, pi, g)?;
    eval(s, pi, g, None)
}

/// `s_0, …, s_{n_max}` of the class.
pub fn eval_sequence(s: &Scheme, n_max: u32) -> Result<Vec<Count>> {
    let mut cache = CountCache::new();
    let root = Permutation::empty();
    (0..=n_max)
        .map(|n| eval_count(s, &root, &GapVector::single(n), &mut cache))
        .collect()
}

fn check_query(s: &Scheme, pi: &Permutation, g: &GapVector) -> Result<()> {
    if s.node(pi).is_none() {
        return Err(Error::Contract(format!("{pi} is not a node of the scheme")));
    }
    if g.len() != pi.len() + 1 {
        return Err(Error::InvalidInput(format!(
            "gap vector {g} does not fit {pi}"
        )));
    }
    Ok(())
}

fn eval(s: &Scheme, pi: &Permutation, g: &GapVector, mut cache: Option<&mut CountCache>) -> Result<Count> {
    let node = s
        .node(pi)
        .ok_or_else(|| Error::Contract(format!("{pi} is not a node of the scheme")))?;
    if let Some(c) = cache.as_deref() {
        if let Some(v) = c.map.get(&(pi.clone(), g.clone())) {
            return Ok(v.clone());
        }
    }
    let value = match &node.kind {
        NodeKind::Reduce { r, gaps } => {
            if gaps.dimension() != g.len() {
                return Err(Error::Contract(format!(
                    "gap ideal of {pi} has dimension {}",
                    gaps.dimension()
                )));
            }
            if !gaps.contains_unchecked(g) {
                Count::zero()
            } else {
                let target = pi.delete_at(*r).map_err(|e| Error::Contract(e.to_string()))?;
                let merged = g.gap_delete(*r).map_err(|e| Error::Contract(e.to_string()))?;
                eval(s, &target, &merged, cache.as_deref_mut())?
            }
        }
        NodeKind::Expand { children } => {
            if g.norm() == 0 {
                Count::one()
            } else {
                let mut total = Count::zero();
                for (j, child) in children {
                    if *j == 0 || *j > g.len() {
                        return Err(Error::Contract(format!("bad insertion slot {j} under {pi}")));
                    }
                    for i in 0..g.at(*j) {
                        let split = g.gap_split(*j, i)?;
                        total += eval(s, child, &split, cache.as_deref_mut())?;
                    }
                }
                total
            }
        }
    };
    if let Some(c) = cache {
        c.map.insert((pi.clone(), g.clone()), value.clone());
    }
    Ok(value)
}
