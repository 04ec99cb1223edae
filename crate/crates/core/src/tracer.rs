//! Trace closures, impact sets and traceability matrices.
//!
//! A trace is a breadth-first closure over a chosen set of link kinds. Each
//! kind is followed either along its direction (realization links: a process
//! is realized by functions, a view function by modules) or against it
//! (ownership links in the extended set: a module leads to its component, a
//! component to the node it is deployed on). Backward tracing inverts both.
//! Frontiers are expanded in ascending id order, so results are
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use crate::coverage::{coverage, CoverageReport, SeamCoverage};
use crate::error::{Error, Result};
use crate::metamodel::{ElementKind, Layer, LinkKind};
use crate::model::{ArchitectureModel, Link};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            _ => Err(Error::UnknownToken {
                what: "direction",
                token: s.to_string(),
            }),
        }
    }
}

/// Realization links followed by every trace.
pub const DEFAULT_TRACE_LINKS: [LinkKind; 8] = [
    LinkKind::Decomposes,
    LinkKind::HasService,
    LinkKind::ContainsAutofn,
    LinkKind::SvcDialog,
    LinkKind::Implements,
    LinkKind::HasViewfn,
    LinkKind::VfModule,
    LinkKind::ModMethod,
];

/// Ownership and deployment links added by the extended set; a forward trace
/// walks them from the owned element to its owner.
pub const OWNERSHIP_TRACE_LINKS: [LinkKind; 4] = [
    LinkKind::OwnsModule,
    LinkKind::OwnsMethod,
    LinkKind::HostsClass,
    LinkKind::Deploys,
];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LinkSet {
    #[default]
    Default,
    Extended,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraceOptions {
    pub links: LinkSet,
    /// Maximum number of hops from the root; `None` is unbounded.
    pub depth: Option<usize>,
}

impl TraceOptions {
    pub fn extended() -> Self {
        Self {
            links: LinkSet::Extended,
            depth: None,
        }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    /// `(kind, along)` pairs for a forward trace.
    fn steps(&self) -> Vec<(LinkKind, bool)> {
        let mut steps: Vec<(LinkKind, bool)> = DEFAULT_TRACE_LINKS.iter().map(|&k| (k, true)).collect();
        if self.links == LinkSet::Extended {
            steps.extend(OWNERSHIP_TRACE_LINKS.iter().map(|&k| (k, false)));
        }
        steps
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceResult {
    pub root: String,
    pub direction: Direction,
    /// Reached elements grouped by layer, root included.
    pub reached: BTreeMap<Layer, BTreeSet<String>>,
    /// Every link examined while expanding a reached element, in BFS order.
    pub edges: Vec<Link>,
}

impl TraceResult {
    pub fn contains(&self, id: &str) -> bool {
        self.reached.values().any(|s| s.contains(id))
    }

    /// All reached ids, ascending.
    pub fn ids(&self) -> BTreeSet<String> {
        self.reached.values().flatten().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.reached.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn trace(model: &ArchitectureModel, id: &str, direction: Direction, options: &TraceOptions) -> Result<TraceResult> {
    let root = model.element(id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
    let steps = options.steps();
    let mut seen: BTreeSet<&str> = BTreeSet::from([root.id.as_str()]);
    let mut edges = Vec::new();
    let mut frontier: Vec<&str> = vec![root.id.as_str()];
    let mut depth = 0;
    while !frontier.is_empty() && options.depth.is_none_or(|limit| depth < limit) {
        let mut next: BTreeSet<&str> = BTreeSet::new();
        for &node in &frontier {
            for &(kind, along) in &steps {
                let outward = along == (direction == Direction::Forward);
                let neighbors: Vec<&str> = if outward {
                    model.out_of(node, kind).collect()
                } else {
                    model.in_of(node, kind).collect()
                };
                for n in neighbors {
                    let (src, dst) = if outward { (node, n) } else { (n, node) };
                    edges.push(
                        model
                            .link(kind, src, dst)
                            .expect("index entries come from links")
                            .clone(),
                    );
                    if seen.insert(n) {
                        next.insert(n);
                    }
                }
            }
        }
        frontier = next.into_iter().collect();
        depth += 1;
    }
    let mut reached: BTreeMap<Layer, BTreeSet<String>> = BTreeMap::new();
    for id in seen {
        let layer = model.kind_of(id).expect("reached ids exist").layer();
        reached.entry(layer).or_default().insert(id.to_string());
    }
    Ok(TraceResult {
        root: root.id.clone(),
        direction,
        reached,
        edges,
    })
}

/// Everything that realizes `id` or that `id` realizes.
pub fn impact(model: &ArchitectureModel, id: &str, options: &TraceOptions) -> Result<BTreeSet<String>> {
    let mut set = trace(model, id, Direction::Forward, options)?.ids();
    set.extend(trace(model, id, Direction::Backward, options)?.ids());
    Ok(set)
}

/// `(from, to)` pairs where `to` is in the forward trace of `from`.
pub fn trace_matrix(
    model: &ArchitectureModel,
    from_kind: ElementKind,
    to_kind: ElementKind,
    options: &TraceOptions,
) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    for from in model.elements_of_kind(from_kind) {
        let reached = trace(model, from, Direction::Forward, options).expect("id from model");
        for to in reached.ids() {
            if model.kind_of(&to) == Some(to_kind) {
                pairs.push((from.to_string(), to));
            }
        }
    }
    pairs
}
