use std::collections::BTreeSet;
use std::fmt::{self, Write};
use std::str::FromStr;

use crate::error::Error;
use crate::metamodel::{seam, Layer};
use crate::model::{ArchitectureModel, Element, Link};
use crate::tracer::TraceResult;

/// Which part of the model a DOT export shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotScope {
    All,
    /// Elements of one layer and the links among them.
    Layer(Layer),
    /// A seam's connecting elements, their realization links and the
    /// elements those links reach. Index is 1-based.
    Seam(u8),
}

impl fmt::Display for DotScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DotScope::All => f.write_str("all"),
            DotScope::Layer(l) => write!(f, "{l}"),
            DotScope::Seam(i) => write!(f, "seam{i}"),
        }
    }
}

impl FromStr for DotScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "all" {
            return Ok(DotScope::All);
        }
        if let Some(n) = s.strip_prefix("seam") {
            return match n.parse::<u8>().ok().filter(|i| seam(*i).is_some()) {
                Some(i) => Ok(DotScope::Seam(i)),
                None => Err(Error::UnknownToken {
                    what: "seam",
                    token: s.to_string(),
                }),
            };
        }
        s.parse().map(DotScope::Layer).map_err(|_| Error::UnknownToken {
            what: "scope",
            token: s.to_string(),
        })
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn write_graph<'a>(
    name: &str,
    nodes: impl IntoIterator<Item = &'a Element>,
    edges: impl IntoIterator<Item = &'a Link>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    out.push_str("  node [shape=box];\n");
    for e in nodes {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}: {}\"];",
            escape(&e.id),
            e.kind,
            escape(&e.name)
        );
    }
    let mut edges: Vec<&Link> = edges.into_iter().collect();
    edges.sort_by(|a, b| (&a.src, &a.dst, a.kind).cmp(&(&b.src, &b.dst, b.kind)));
    edges.dedup_by(|a, b| a.key() == b.key());
    for l in edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            escape(&l.src),
            escape(&l.dst),
            l.kind
        );
    }
    out.push_str("}\n");
    out
}

/// Graphviz digraph of the model or part of it. Node ids are element ids,
/// labels are `kind: name`, edge labels are link kinds.
pub fn export_dot(model: &ArchitectureModel, scope: DotScope) -> String {
    let (ids, edges): (BTreeSet<&str>, Vec<&Link>) = match scope {
        DotScope::All => (
            model.elements().map(|e| e.id.as_str()).collect(),
            model.links().iter().collect(),
        ),
        DotScope::Layer(layer) => {
            let ids: BTreeSet<&str> = model
                .elements()
                .filter(|e| e.layer() == layer)
                .map(|e| e.id.as_str())
                .collect();
            let edges = model
                .links()
                .iter()
                .filter(|l| ids.contains(l.src.as_str()) && ids.contains(l.dst.as_str()))
                .collect();
            (ids, edges)
        }
        DotScope::Seam(index) => match seam(index) {
            None => (BTreeSet::new(), Vec::new()),
            Some(s) => {
                let mut ids: BTreeSet<&str> = model.elements_of_kind(s.connecting_kind).into_iter().collect();
                let edges: Vec<&Link> = model
                    .links()
                    .iter()
                    .filter(|l| l.kind == s.realization_link && ids.contains(l.src.as_str()))
                    .collect();
                for l in &edges {
                    ids.insert(l.dst.as_str());
                }
                (ids, edges)
            }
        },
    };
    let nodes = ids.into_iter().filter_map(|id| model.element(id));
    write_graph("architecture", nodes, edges)
}

/// DOT rendering of a trace: reached elements and traversed links.
pub fn trace_to_dot(model: &ArchitectureModel, trace: &TraceResult) -> String {
    let ids = trace.ids();
    let nodes = ids.iter().filter_map(|id| model.element(id));
    write_graph("trace", nodes, trace.edges.iter())
}
