//! Scheme JSON (lossless, byte-stable) and Graphviz DOT rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{NodeKind, Scheme, SchemeNode};
use crate::error::{Error, Result};
use crate::perm::{Basis, Permutation};
use crate::reducibility::GapIdeal;
use crate::zset::GapVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Serialize, Deserialize)]
struct SchemeDoc {
    basis: Vec<Vec<usize>>,
    nodes: Vec<NodeDoc>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    perm: Vec<usize>,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gap_basis: Option<Vec<Vec<u32>>>,
}

pub fn export(s: &Scheme, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Json => to_json(s),
        ExportFormat::Dot => to_dot(s),
    }
    .into_bytes()
}

fn node_doc(node: &SchemeNode) -> NodeDoc {
    let perm = node.perm.to_vec();
    match &node.kind {
        NodeKind::Expand { children } => NodeDoc {
            perm,
            kind: "expand".into(),
            children: Some(children.iter().map(|(_, c)| c.to_vec()).collect()),
            r: None,
            gap_basis: None,
        },
        NodeKind::Reduce { r, gaps } => NodeDoc {
            perm,
            kind: "reduce".into(),
            children: None,
            r: Some(*r),
            gap_basis: Some(
                gaps.excluded_basis()
                    .iter()
                    .map(|v| v.components().to_vec())
                    .collect(),
            ),
        },
    }
}

/// One node per line, nodes in (length, lex) order.
fn to_json(s: &Scheme) -> String {
    let basis: Vec<Vec<usize>> = s.basis().patterns().iter().map(Permutation::to_vec).collect();
    let lines: Vec<String> = s
        .nodes()
        .map(|n| serde_json::to_string(&node_doc(n)).expect("plain data serializes"))
        .collect();
    format!(
        "{{\"basis\":{},\"nodes\":[\n{}\n]}}\n",
        serde_json::to_string(&basis).expect("plain data serializes"),
        lines.join(",\n")
    )
}

pub fn import_json(text: &str) -> Result<Scheme> {
    let doc: SchemeDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("scheme JSON: {e}")))?;
    let basis = Basis::new(
        doc.basis
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?,
    )?;
    let nodes = doc
        .nodes
        .into_iter()
        .map(node_from_doc)
        .collect::<Result<Vec<_>>>()?;
    Scheme::from_nodes(basis, nodes)
}

fn node_from_doc(doc: NodeDoc) -> Result<SchemeNode> {
    let perm = Permutation::new(doc.perm)?;
    let kind = match doc.kind.as_str() {
        "expand" => {
            let children = doc
                .children
                .ok_or_else(|| Error::Parse(format!("expand node {perm} lacks \"children\"")))?
                .into_iter()
                .map(|c| {
                    let child = Permutation::new(c)?;
                    let j = child
                        .values()
                        .iter()
                        .position(|&v| v as usize == child.len())
                        .map_or(0, |i| i + 1);
                    Ok((j, child))
                })
                .collect::<Result<Vec<_>>>()?;
            NodeKind::Expand { children }
        }
        "reduce" => {
            let r = doc
                .r
                .ok_or_else(|| Error::Parse(format!("reduce node {perm} lacks \"r\"")))?;
            let vectors = doc
                .gap_basis
                .ok_or_else(|| Error::Parse(format!("reduce node {perm} lacks \"gap_basis\"")))?
                .into_iter()
                .map(GapVector::new)
                .collect::<Result<Vec<_>>>()?;
            NodeKind::Reduce {
                r,
                gaps: GapIdeal::new(perm.len() + 1, vectors)?,
            }
        }
        other => return Err(Error::Parse(format!("unknown node kind {other:?}"))),
    };
    Ok(SchemeNode { perm, kind })
}

/// Solid edges to expanded children, dashed `d_r` edges for reductions, and
/// the gap-ideal basis printed under each reduced permutation.
fn to_dot(s: &Scheme) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph scheme {{");
    let _ = writeln!(out, "  label=\"Av({})\";", s.basis());
    let _ = writeln!(out, "  node [shape=plaintext];");
    for node in s.nodes() {
        let id = node.perm.to_string();
        match &node.kind {
            NodeKind::Reduce { gaps, .. } if !gaps.excluded_basis().is_empty() => {
                let vs: Vec<String> = gaps.excluded_basis().iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "  \"{id}\" [label=\"{id}\\n{}\"];", vs.join("\\n"));
            }
            _ => {
                let _ = writeln!(out, "  \"{id}\";");
            }
        }
    }
    for node in s.nodes() {
        let id = node.perm.to_string();
        match &node.kind {
            NodeKind::Expand { children } => {
                for (_, c) in children {
                    let _ = writeln!(out, "  \"{id}\" -> \"{c}\";");
                }
            }
            NodeKind::Reduce { r, .. } => {
                if let Ok(target) = node.perm.delete_at(*r) {
                    let _ = writeln!(
                        out,
                        "  \"{id}\" -> \"{target}\" [style=dashed, label=\"d_{r}\"];"
                    );
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
