//! Gap ideals and the bounded reducibility tests.
//!
//! Every test here scans gap vectors of norm at most `‖B‖∞ - 1`, which is
//! enough to settle reducibility for all gap vectors and to find every basis
//! vector of the reduction ideal `G_r(π)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::zset::{GapVector, ZSetCounter};

/// A downward-closed set of gap vectors of fixed length, stored as the
/// antichain of its minimal excluded vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GapIdeal {
    dimension: usize,
    excluded: Vec<GapVector>,
}

impl GapIdeal {
    /// The ideal avoiding every vector in `excluded`. Non-minimal vectors are
    /// dropped, the rest are kept in graded lexicographic order.
    pub fn new(dimension: usize, excluded: Vec<GapVector>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidInput("gap ideal dimension must be ≥ 1".into()));
        }
        if let Some(bad) = excluded.iter().find(|v| v.len() != dimension) {
            return Err(Error::InvalidInput(format!(
                "{bad} does not have dimension {dimension}"
            )));
        }
        Ok(Self {
            dimension,
            excluded: minimal_elements(&excluded)?,
        })
    }

    /// All of `ℕ^dimension`.
    pub fn full(dimension: usize) -> Self {
        Self {
            dimension,
            excluded: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn excluded_basis(&self) -> &[GapVector] {
        &self.excluded
    }

    pub fn contains(&self, g: &GapVector) -> Result<bool> {
        if g.len() != self.dimension {
            return Err(Error::InvalidInput(format!(
                "{g} has length {}, ideal has dimension {}",
                g.len(),
                self.dimension
            )));
        }
        Ok(self.contains_unchecked(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &GapVector) -> bool {
        !self.excluded.iter().any(|b| b.le(g))
    }
}

impl fmt::Display for GapIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.excluded.iter().map(|v| v.to_string()).collect();
        write!(f, "Av({})", parts.join(","))
    }
}

impl fmt::Debug for GapIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GapIdeal[{}]{self}", self.dimension)
    }
}

pub fn ideal_member(g: &GapVector, ideal: &GapIdeal) -> Result<bool> {
    ideal.contains(g)
}

/// The componentwise-minimal vectors of `vs`, deduplicated, in graded
/// lexicographic order.
pub fn minimal_elements(vs: &[GapVector]) -> Result<Vec<GapVector>> {
    if let Some(first) = vs.first() {
        if vs.iter().any(|v| v.len() != first.len()) {
            return Err(Error::InvalidInput(
                "minimal_elements needs vectors of equal length".into(),
            ));
        }
    }
    let mut sorted: Vec<&GapVector> = vs.iter().collect();
    sorted.sort_by(|a, b| a.graded_key().cmp(&b.graded_key()));
    sorted.dedup();
    let mut out: Vec<GapVector> = Vec::new();
    // anything dominating v has norm ≥ ‖v‖, so it comes later in graded order
    for v in sorted {
        if !out.iter().any(|m| m.le(v)) {
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// Slots that no non-empty Z-set of `π` can ever occupy (1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JSet(BTreeSet<usize>);

impl JSet {
    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `g_j = 0` for every `j` in the set.
    pub fn obeyed_by(&self, g: &GapVector) -> bool {
        self.0.iter().all(|&j| g.at(j) == 0)
    }
}

impl FromIterator<usize> for JSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Largest norm the bounded tests need to look at, `None` when no vector
/// qualifies (the empty basis).
fn scan_bound(z: &ZSetCounter) -> Option<u32> {
    (z.basis().max_len() as u32).checked_sub(1)
}

fn bounded_vectors(z: &ZSetCounter, dim: usize) -> Vec<GapVector> {
    match scan_bound(z) {
        Some(max) => GapVector::all_up_to(dim, max),
        None => Vec::new(),
    }
}

fn check_avoids(z: &ZSetCounter, pi: &Permutation) -> Result<()> {
    if !pi.avoids_all(z.basis()) {
        return Err(Error::InvalidInput(format!(
            "{pi} contains an element of basis {}",
            z.basis()
        )));
    }
    Ok(())
}

fn check_entry(z: &ZSetCounter, pi: &Permutation, r: usize) -> Result<()> {
    check_avoids(z, pi)?;
    if r == 0 || r > pi.len() {
        return Err(Error::InvalidInput(format!(
            "entry {r} out of range for {pi}"
        )));
    }
    Ok(())
}

/// `J(π)`, read off from the unit gap vectors: slot `j` is forbidden iff
/// `Z(B; π; e_j)` is empty.
pub fn compute_j(z: &ZSetCounter, pi: &Permutation) -> Result<JSet> {
    check_avoids(z, pi)?;
    let dim = pi.len() + 1;
    Ok((1..=dim)
        .filter(|&j| z.count_unchecked(pi, &GapVector::unit(dim, j)) == 0)
        .collect())
}

/// Zeilberger's test: the deletion embedding is a bijection for every
/// bounded gap vector obeying `J(π)`.
pub fn es_reducible(z: &ZSetCounter, pi: &Permutation, r: usize) -> Result<bool> {
    check_entry(z, pi, r)?;
    let j = compute_j(z, pi)?;
    let reduced = pi.delete_at(r)?;
    for g in bounded_vectors(z, pi.len() + 1) {
        if !j.obeyed_by(&g) {
            continue;
        }
        let here = z.count_unchecked(pi, &g);
        let there = z.count_unchecked(&reduced, &g.gap_delete(r)?);
        if here != there {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The extended test: the counts agree on every bounded gap vector whose
/// Z-set is non-empty.
pub fn es_plus_reducible(z: &ZSetCounter, pi: &Permutation, r: usize) -> Result<bool> {
    Ok(analyze_entry(z, pi, r)?.is_some())
}

/// `G_r(π)` for an ES⁺-reducible entry. Refuses (contract error) when the
/// entry is not ES⁺-reducible, since the norm bound on basis vectors only
/// holds in that case.
pub fn reduction_gap_basis(z: &ZSetCounter, pi: &Permutation, r: usize) -> Result<GapIdeal> {
    analyze_entry(z, pi, r)?.ok_or_else(|| {
        Error::Contract(format!(
            "entry {r} of {pi} is not ES⁺-reducible for basis {}",
            z.basis()
        ))
    })
}

/// One bounded scan deciding ES⁺-reducibility and, when it holds, returning
/// `G_r(π)`: the minimal vectors `h` with `Z(B;π;h)` empty but
/// `Z(B;d_r(π);d_r(h))` not.
pub fn analyze_entry(z: &ZSetCounter, pi: &Permutation, r: usize) -> Result<Option<GapIdeal>> {
    check_entry(z, pi, r)?;
    let reduced = pi.delete_at(r)?;
    let dim = pi.len() + 1;
    let mut violations = Vec::new();
    for g in bounded_vectors(z, dim) {
        let here = z.count_unchecked(pi, &g);
        let there = z.count_unchecked(&reduced, &g.gap_delete(r)?);
        debug_assert!(here <= there, "deletion embedding must be injective");
        if here > 0 {
            if here != there {
                return Ok(None);
            }
        } else if there > 0 {
            violations.push(g);
        }
    }
    Ok(Some(GapIdeal::new(dim, violations)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Basis;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn g(v: &[u32]) -> GapVector {
        GapVector::new(v.to_vec()).unwrap()
    }

    fn z(s: &str) -> ZSetCounter {
        ZSetCounter::new(s.parse::<Basis>().unwrap())
    }

    fn ideal(dim: usize, vs: &[&[u32]]) -> GapIdeal {
        GapIdeal::new(dim, vs.iter().map(|v| g(v)).collect()).unwrap()
    }

    #[test]
    fn membership() {
        let i = ideal(3, &[&[0, 2, 0]]);
        assert!(!ideal_member(&g(&[1, 2, 0]), &i).unwrap());
        assert!(ideal_member(&g(&[3, 1, 5]), &i).unwrap());
        assert!(ideal_member(&g(&[9, 9, 9]), &GapIdeal::full(3)).unwrap());
        assert!(ideal_member(&g(&[1, 2]), &i).is_err());
        assert_eq!(i.to_string(), "Av((0,2,0))");
    }

    #[test]
    fn minimal_elements_examples() {
        assert_eq!(
            minimal_elements(&[g(&[0, 2, 0]), g(&[1, 2, 0]), g(&[0, 3, 0])]).unwrap(),
            vec![g(&[0, 2, 0])]
        );
        assert!(minimal_elements(&[]).unwrap().is_empty());
        assert_eq!(
            minimal_elements(&[g(&[1, 0]), g(&[0, 1])]).unwrap(),
            vec![g(&[0, 1]), g(&[1, 0])]
        );
        assert!(minimal_elements(&[g(&[1, 0]), g(&[0])]).is_err());
    }

    #[test]
    fn j_sets() {
        let z132 = z("132");
        assert_eq!(compute_j(&z132, &p("12")).unwrap(), [2].into_iter().collect());
        assert!(compute_j(&z132, &p("21")).unwrap().is_empty());
        assert!(compute_j(&z(""), &p("2413")).unwrap().is_empty());
        assert!(matches!(
            compute_j(&z132, &p("132")),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn classic_reducibility() {
        let z132 = z("132");
        assert!(es_reducible(&z132, &p("12"), 1).unwrap());
        assert!(es_reducible(&z132, &p("21"), 2).unwrap());
        let zs = z("1342,1432");
        assert!(!es_reducible(&zs, &p("12"), 1).unwrap());
        assert!(!es_reducible(&zs, &p("12"), 2).unwrap());
        assert!(es_reducible(&z132, &p("12"), 3).is_err());
    }

    #[test]
    fn extended_reducibility() {
        assert!(es_plus_reducible(&z("1342,1432"), &p("12"), 2).unwrap());
        let sep = z("2413,3142");
        assert!(!es_plus_reducible(&sep, &p("12"), 1).unwrap());
        assert!(!es_plus_reducible(&sep, &p("12"), 2).unwrap());
        assert!(!es_plus_reducible(&z("1234,4231"), &p("21"), 1).unwrap());
    }

    #[test]
    fn gap_bases() {
        assert_eq!(
            reduction_gap_basis(&z("1342,1432"), &p("12"), 2).unwrap(),
            ideal(3, &[&[0, 2, 0]])
        );
        assert_eq!(
            reduction_gap_basis(&z("1234"), &p("123"), 3).unwrap(),
            ideal(4, &[&[0, 0, 0, 1]])
        );
        assert_eq!(
            reduction_gap_basis(&z("231,4321"), &p("21"), 1).unwrap(),
            ideal(3, &[&[0, 1, 0], &[2, 0, 0]])
        );
        assert!(matches!(
            reduction_gap_basis(&z("2413,3142"), &p("12"), 1),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn empty_basis_everything_reduces() {
        let z0 = z("");
        assert!(es_plus_reducible(&z0, &p("1"), 1).unwrap());
        assert_eq!(reduction_gap_basis(&z0, &p("1"), 1).unwrap(), GapIdeal::full(2));
    }
}
