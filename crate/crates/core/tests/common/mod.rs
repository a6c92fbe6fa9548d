#![allow(dead_code)]

use permscheme::{Basis, GapVector, Permutation};

pub const ORACLE_BASES: [&str; 13] = [
    "",
    "132",
    "123",
    "1234",
    "1342,1432",
    "2143,3412",
    "3421,4231,4312,4321",
    "1234,2143",
    "1432,2341",
    "2341,4321",
    "2143,4123",
    "3241,4231",
    "3421,4321",
];

pub const DEPTHS: [(&str, usize); 13] = [
    ("1342,1432", 2),
    ("1234,2143", 3),
    ("1432,2341", 3),
    ("2341,4321", 4),
    ("2143,4123", 6),
    ("1342,2341", 3),
    ("3241,3421", 4),
    ("3241,4231", 2),
    ("3412,3421", 3),
    ("3421,4321", 2),
    ("3421,4231", 4),
    ("2143,3412", 4),
    ("3421,4231,4312,4321", 3),
];

/// Pairs of length-4 patterns counted by the large Schröder numbers that have
/// finite schemes.
pub const SCHROEDER: [&str; 7] = [
    "1342,2341",
    "1342,1432",
    "3241,3421",
    "3241,4231",
    "3412,3421",
    "3421,4321",
    "3421,4231",
];

/// Classes counted by (4^{n-1}+2)/3.
pub const QUARTIC: [&str; 4] = ["1234,2143", "1432,2341", "2341,4321", "2143,4123"];

pub const HEXAGON: &str = "321,46718235,46781235,56718234,56781234";

pub fn b(s: &str) -> Basis {
    s.parse().unwrap()
}

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn g(v: &[u32]) -> GapVector {
    GapVector::new(v.to_vec()).unwrap()
}

pub fn gs(vs: &[&[u32]]) -> Vec<GapVector> {
    vs.iter().map(|v| g(v)).collect()
}

/// Every permutation of length `n`, lexicographic.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    use itertools::Itertools;
    (1..=n)
        .permutations(n)
        .map(|v| Permutation::new(v).unwrap())
        .collect()
}

pub mod checks {
    use permscheme::scheme::{eval_count_uncached, export, import_json, ExportFormat};
    use permscheme::{
        eval_count, ideal_member, verify_scheme, zset_count, Basis, CountCache, GapVector,
        NodeKind, Permutation, Scheme,
    };

    /// `|Z(π;g)|` split by the slot receiving the value `|π|+1`.
    pub fn expansion_identity(b: &Basis, pi: &Permutation, g: &GapVector) -> Result<(), String> {
        if g.norm() == 0 {
            return Ok(());
        }
        let lhs = zset_count(b, pi, g).map_err(|e| e.to_string())?;
        let mut rhs = permscheme::Count::default();
        for j in 1..=g.len() {
            let child = pi.insert_max(j);
            for i in 0..g.at(j) {
                let split = g.gap_split(j, i).map_err(|e| e.to_string())?;
                rhs += zset_count(b, &child, &split).map_err(|e| e.to_string())?;
            }
        }
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("Av({b}) π={pi} g={g}: {lhs} vs split sum {rhs}"))
        }
    }

    /// `eval_count = zset_count` at every node for every `g` with
    /// `‖g‖ ≤ max_norm`.
    pub fn eval_matches_zset(s: &Scheme, max_norm: u32) -> Result<usize, String> {
        let mut cache = CountCache::new();
        let mut checked = 0;
        for node in s.nodes() {
            for g in GapVector::all_up_to(node.perm.len() + 1, max_norm) {
                let via_scheme = eval_count(s, &node.perm, &g, &mut cache).map_err(|e| e.to_string())?;
                let direct = zset_count(s.basis(), &node.perm, &g).map_err(|e| e.to_string())?;
                if via_scheme != direct {
                    return Err(format!(
                        "Av({}) node {} g={g}: scheme {via_scheme}, direct {direct}",
                        s.basis(),
                        node.perm
                    ));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Memoized and plain evaluation agree at every node.
    pub fn memo_transparent(s: &Scheme, max_norm: u32) -> Result<(), String> {
        let mut cache = CountCache::new();
        for node in s.nodes() {
            for g in GapVector::all_up_to(node.perm.len() + 1, max_norm) {
                let a = eval_count(s, &node.perm, &g, &mut cache).map_err(|e| e.to_string())?;
                let b = eval_count_uncached(s, &node.perm, &g).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("node {} g={g}: cached {a}, uncached {b}", node.perm));
                }
            }
        }
        Ok(())
    }

    pub fn round_trips(s: &Scheme) -> Result<(), String> {
        let bytes = export(s, ExportFormat::Json);
        let text = String::from_utf8(bytes.clone()).map_err(|e| e.to_string())?;
        let back = import_json(&text).map_err(|e| e.to_string())?;
        if &back != s {
            return Err(format!("Av({}): import differs from the original", s.basis()));
        }
        if export(&back, ExportFormat::Json) != bytes {
            return Err(format!("Av({}): re-export is not byte-identical", s.basis()));
        }
        Ok(())
    }

    /// Each stored gap basis is an antichain, and membership is downward
    /// closed on every vector up to `max_norm`.
    pub fn ideals_well_formed(s: &Scheme, max_norm: u32) -> Result<(), String> {
        for node in s.nodes() {
            let NodeKind::Reduce { gaps, .. } = &node.kind else {
                continue;
            };
            let basis = gaps.excluded_basis();
            for (i, u) in basis.iter().enumerate() {
                for (k, v) in basis.iter().enumerate() {
                    if i != k && u.le(v) {
                        return Err(format!("node {}: {u} ≤ {v} in the gap basis", node.perm));
                    }
                }
            }
            let vectors = GapVector::all_up_to(gaps.dimension(), max_norm);
            for g in &vectors {
                if !ideal_member(g, gaps).map_err(|e| e.to_string())? {
                    continue;
                }
                for h in vectors.iter().filter(|h| h.le(g)) {
                    if !ideal_member(h, gaps).map_err(|e| e.to_string())? {
                        return Err(format!("node {}: {g} is a member but {h} is not", node.perm));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn verifies(s: &Scheme) -> Result<(), String> {
        let report = verify_scheme(s);
        if report.is_ok() {
            Ok(())
        } else {
            Err(format!("Av({}): {:?}", s.basis(), report.violations))
        }
    }
}
