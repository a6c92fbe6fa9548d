//! Applicability checks for three other systematic enumeration methods:
//! finitely labeled generating trees, regular insertion encodings, and
//! classes with finitely many simple permutations.

use std::fmt;

use itertools::Itertools;
use serde_json::json;

use crate::error::{Error, Result};
use crate::oracle::for_each_avoider;
use crate::perm::{Basis, Permutation};

pub const DEFAULT_SB_MAX: usize = 6;
pub const DEFAULT_SIMPLE_CAP: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinlabelVerdict {
    pub omits_increasing_child: bool,
    pub omits_decreasing_child: bool,
}

impl FinlabelVerdict {
    /// The class has a finitely labeled generating tree.
    pub fn applicable(&self) -> bool {
        self.omits_increasing_child && self.omits_decreasing_child
    }
}

/// Does the class omit a child of an increasing (resp. decreasing)
/// permutation?
///
/// Hosts up to length `‖B‖∞` suffice: an occurrence of `β` in a child of
/// `12⋯m` uses at most `|β| - 1` entries besides the new maximum, and keeping
/// just those leaves a child of a shorter increasing permutation.
pub fn finlabel_applicable(b: &Basis) -> FinlabelVerdict {
    let bound = b.max_len();
    let omits = |host: fn(usize) -> Permutation| {
        (0..=bound).any(|m| host(m).children().iter().any(|c| !c.avoids_all(b)))
    };
    FinlabelVerdict {
        omits_increasing_child: omits(Permutation::identity),
        omits_decreasing_child: omits(Permutation::decreasing),
    }
}

/// Basis of the slot-bounded class `SB(k)`: length `2k+1` permutations with
/// the large values `k+1..2k+1` in the odd positions and `1..k` in the even
/// ones, in every order. Lexicographic order.
pub fn sb_basis(k: usize) -> Result<Vec<Permutation>> {
    Ok(sb_basis_iter(k)?.collect())
}

fn sb_basis_iter(k: usize) -> Result<impl Iterator<Item = Permutation>> {
    if k == 0 {
        return Err(Error::InvalidInput("SB(k) needs k ≥ 1".into()));
    }
    if 2 * k + 1 > crate::perm::MAX_LEN {
        return Err(Error::InvalidInput(format!("SB({k}) is too large")));
    }
    let large: Vec<usize> = (k + 1..=2 * k + 1).collect();
    let small: Vec<usize> = (1..=k).collect();
    Ok(large
        .into_iter()
        .permutations(k + 1)
        .cartesian_product(small.into_iter().permutations(k).collect::<Vec<_>>())
        .map(move |(bs, as_)| {
            let mut values = Vec::with_capacity(2 * k + 1);
            for i in 0..k {
                values.push(bs[i]);
                values.push(as_[i]);
            }
            values.push(bs[k]);
            Permutation::new(values).expect("alternation is a permutation")
        }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertionVerdict {
    /// Least `k` with `Av(B) ⊆ SB(k)`.
    Regular(usize),
    /// No `k ≤ k_max` works. Not a proof of non-regularity.
    NotWithin(usize),
}

/// `Av(B) ⊆ SB(k)` iff every basis element of `SB(k)` contains some `β ∈ B`.
pub fn insertion_regular(b: &Basis, k_max: usize) -> Result<InsertionVerdict> {
    for k in 1..=k_max {
        let mut candidates = sb_basis_iter(k)?;
        if candidates.all(|w| !w.avoids_all(b)) {
            return Ok(InsertionVerdict::Regular(k));
        }
    }
    Ok(InsertionVerdict::NotWithin(k_max))
}

/// Simple permutations of length `m` in `Av(B)`, lexicographic order.
pub fn enumerate_simple(b: &Basis, m: usize) -> Result<Vec<Permutation>> {
    enumerate_simple_with_cap(b, m, DEFAULT_SIMPLE_CAP)
}

pub fn enumerate_simple_with_cap(b: &Basis, m: usize, cap: usize) -> Result<Vec<Permutation>> {
    if m > cap {
        return Err(Error::Resource(format!(
            "simple enumeration at length {m} exceeds the cap of {cap}"
        )));
    }
    let mut out = Vec::new();
    for_each_avoider(b, m, &mut |p| {
        if p.is_simple() {
            out.push(p.clone());
        }
    });
    out.sort_by(|x, y| x.values().cmp(y.values()));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleVerdict {
    /// Every simple permutation of the class, longest of length `max_length`.
    FinitelyMany {
        max_length: usize,
        simples: Vec<Permutation>,
    },
    /// No two consecutive simple-free lengths up to `cap`.
    Inconclusive { cap: usize, found: Vec<Permutation> },
}

impl SimpleVerdict {
    pub fn simples(&self) -> &[Permutation] {
        match self {
            SimpleVerdict::FinitelyMany { simples, .. } => simples,
            SimpleVerdict::Inconclusive { found, .. } => found,
        }
    }
}

/// Scans lengths `4..=cap` for simples. Every simple permutation of length
/// `n > 2` contains one of length `n-1` or `n-2`, so two consecutive lengths
/// without simples rule out all longer ones.
pub fn simple_finiteness(b: &Basis, cap: usize) -> Result<SimpleVerdict> {
    if cap < 5 {
        return Err(Error::InvalidInput("simple scan needs cap ≥ 5".into()));
    }
    let mut found: Vec<Permutation> = ["1", "12", "21"]
        .iter()
        .map(|s| s.parse::<Permutation>().expect("literal"))
        .filter(|p| p.avoids_all(b))
        .collect();
    // length 3 never has simples
    let mut previous_empty = true;
    for m in 4..=cap {
        let here = enumerate_simple_with_cap(b, m, cap)?;
        let empty = here.is_empty();
        found.extend(here);
        if empty && previous_empty && m >= 5 {
            let max_length = found.iter().map(Permutation::len).max().unwrap_or(0);
            return Ok(SimpleVerdict::FinitelyMany {
                max_length,
                simples: found,
            });
        }
        previous_empty = empty;
    }
    Ok(SimpleVerdict::Inconclusive { cap, found })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriageVerdict {
    pub finlabel: FinlabelVerdict,
    pub insertion: InsertionVerdict,
    pub simples: SimpleVerdict,
    /// Longest length scanned for simple permutations.
    pub simple_cap: usize,
}

pub fn triage(b: &Basis, k_max: usize, simple_cap: usize) -> Result<TriageVerdict> {
    Ok(TriageVerdict {
        finlabel: finlabel_applicable(b),
        insertion: insertion_regular(b, k_max)?,
        simples: simple_finiteness(b, simple_cap)?,
        simple_cap,
    })
}

impl TriageVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let insertion = match self.insertion {
            InsertionVerdict::Regular(k) => json!({ "regular": k }),
            InsertionVerdict::NotWithin(k) => json!({ "not_within": k }),
        };
        let finite = matches!(self.simples, SimpleVerdict::FinitelyMany { .. });
        let list: Vec<Vec<usize>> = self.simples.simples().iter().map(Permutation::to_vec).collect();
        json!({
            "finlabel": self.finlabel.applicable(),
            "insertion": insertion,
            "simples": { "finite": finite, "list": list, "cap": self.simple_cap },
        })
    }
}

impl fmt::Display for TriageVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        writeln!(
            f,
            "finitely labeled generating tree  {} (omits increasing child: {}, omits decreasing child: {})",
            yes_no(self.finlabel.applicable()),
            yes_no(self.finlabel.omits_increasing_child),
            yes_no(self.finlabel.omits_decreasing_child)
        )?;
        match self.insertion {
            InsertionVerdict::Regular(k) => {
                writeln!(f, "regular insertion encoding        yes (subclass of SB({k}))")?
            }
            InsertionVerdict::NotWithin(k) => {
                writeln!(f, "regular insertion encoding        unknown (not within SB({k}))")?
            }
        }
        let list: Vec<String> = self.simples.simples().iter().map(|p| p.to_string()).collect();
        match &self.simples {
            SimpleVerdict::FinitelyMany { max_length, .. } => write!(
                f,
                "finitely many simple permutations yes (longest {max_length}): {}",
                list.join(", ")
            ),
            SimpleVerdict::Inconclusive { cap, .. } => write!(
                f,
                "finitely many simple permutations unknown (scanned to length {cap}): {}",
                list.join(", ")
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Basis {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn finlabel_examples() {
        let v = finlabel_applicable(&b("132,231"));
        assert!(v.omits_increasing_child && v.omits_decreasing_child);
        let v = finlabel_applicable(&b("2413,3142"));
        assert!(!v.omits_increasing_child && !v.omits_decreasing_child);
        assert!(finlabel_applicable(&b("321,2341,3412,4123")).applicable());
        assert!(!finlabel_applicable(&Basis::empty()).applicable());
    }

    #[test]
    fn sb_examples() {
        assert_eq!(sb_basis(1).unwrap(), vec![p("213"), p("312")]);
        let two = sb_basis(2).unwrap();
        assert_eq!(two.len(), 12);
        for w in &two {
            assert_eq!(w.len(), 5);
            assert!(w.at(2) <= 2 && w.at(4) <= 2);
        }
        assert!(sb_basis(0).is_err());
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(insertion_regular(&b("1"), 1).unwrap(), InsertionVerdict::Regular(1));
        assert_eq!(insertion_regular(&b("132"), 4).unwrap(), InsertionVerdict::NotWithin(4));
        // 738291645 is an SB(4) basis element avoiding both patterns
        assert!(p("738291645").avoids_all(&b("1234,4231")));
        assert_eq!(insertion_regular(&b("1234,4231"), 6).unwrap(), InsertionVerdict::Regular(5));
        // Av(213,312) is SB(1) itself
        assert_eq!(insertion_regular(&b("213,312"), 3).unwrap(), InsertionVerdict::Regular(1));
    }

    #[test]
    fn simple_enumeration() {
        assert!(enumerate_simple(&b("2413,3142"), 4).unwrap().is_empty());
        assert_eq!(enumerate_simple(&Basis::empty(), 4).unwrap(), vec![p("2413"), p("3142")]);
        assert!(enumerate_simple(&b("321,2341,3412,4123"), 4).unwrap().contains(&p("3142")));
        assert!(matches!(
            enumerate_simple(&Basis::empty(), 10),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn simple_scan() {
        for basis in ["2413,3142", "132"] {
            match simple_finiteness(&b(basis), 9).unwrap() {
                SimpleVerdict::FinitelyMany { max_length, simples } => {
                    assert_eq!(max_length, 2);
                    assert_eq!(simples, vec![p("1"), p("12"), p("21")]);
                }
                other => panic!("{basis}: {other:?}"),
            }
        }
        assert!(simple_finiteness(&b("132"), 4).is_err());
        // Av(12) only has 1 and 21
        assert_eq!(
            simple_finiteness(&b("12"), 5).unwrap().simples(),
            &[p("1"), p("21")]
        );
    }

    #[test]
    fn json_shape() {
        let v = triage(&b("132,231"), 3, 6).unwrap();
        let j = v.to_json();
        assert_eq!(j["finlabel"], json!(true));
        assert!(j["insertion"]["regular"].is_number());
        assert_eq!(j["simples"]["finite"], json!(true));
    }
}
