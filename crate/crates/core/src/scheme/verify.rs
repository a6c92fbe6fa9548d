use std::fmt;

use super::{NodeKind, Scheme};
use crate::perm::Permutation;
use crate::reducibility::analyze_entry;
use crate::zset::ZSetCounter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// `None` for scheme-wide problems.
    pub node: Option<Permutation>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Some(p) => write!(f, "node {p}: {}", self.message),
            None => write!(f, "scheme: {}", self.message),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, node: Option<&Permutation>, message: impl Into<String>) {
        self.violations.push(Violation {
            node: node.cloned(),
            message: message.into(),
        });
    }
}

/// Re-derives every node from scratch and reports each disagreement:
/// closure, avoidance, expansion child lists, reducibility of every reduce
/// entry and its gap ideal.
pub fn verify_scheme(s: &Scheme) -> VerifyReport {
    let z = ZSetCounter::new(s.basis().clone());
    let mut report = VerifyReport::default();

    match s.node(&Permutation::empty()) {
        None => report.push(None, "root ∅ is missing"),
        Some(root) if !root.is_expand() => report.push(Some(&root.perm), "root must expand"),
        Some(_) => {}
    }

    for node in s.nodes() {
        let perm = &node.perm;
        if !perm.avoids_all(s.basis()) {
            report.push(Some(perm), "contains a basis element");
            continue;
        }
        match &node.kind {
            NodeKind::Expand { children } => {
                let expected: Vec<(usize, Permutation)> = perm
                    .children()
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (i + 1, c))
                    .filter(|(_, c)| c.avoids_all(s.basis()))
                    .collect();
                if *children != expected {
                    let shown: Vec<String> = expected.iter().map(|(_, c)| c.to_string()).collect();
                    report.push(
                        Some(perm),
                        format!("children should be [{}]", shown.join(", ")),
                    );
                }
                for (_, c) in children {
                    if s.node(c).is_none() {
                        report.push(Some(perm), format!("child {c} is not in the scheme"));
                    }
                }
            }
            NodeKind::Reduce { r, gaps } => {
                if *r == 0 || *r > perm.len() {
                    report.push(Some(perm), format!("entry {r} out of range"));
                    continue;
                }
                let target = perm.delete_at(*r).expect("range checked");
                if s.node(&target).is_none() {
                    report.push(Some(perm), format!("reduction target {target} is not in the scheme"));
                }
                match analyze_entry(&z, perm, *r) {
                    Ok(None) => report.push(Some(perm), format!("entry {r} is not ES⁺-reducible")),
                    Ok(Some(expected)) if expected != *gaps => report.push(
                        Some(perm),
                        format!("gap ideal is {gaps}, should be {expected}"),
                    ),
                    Ok(Some(_)) => {}
                    Err(e) => report.push(Some(perm), e.to_string()),
                }
            }
        }
    }
    report
}
