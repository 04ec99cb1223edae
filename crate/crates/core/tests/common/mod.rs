#![allow(dead_code)]

use std::collections::BTreeSet;

use archseam_core::tracer::{DEFAULT_TRACE_LINKS, OWNERSHIP_TRACE_LINKS};
use archseam_core::{adl, ArchitectureModel, LinkSet};

pub const M0: &str = include_str!("../../../../fixtures/m0.adl");
pub const M0_MANIFEST: &str = include_str!("../../../../fixtures/m0.manifest.toml");
pub const GOLDEN_LINKS: &str = include_str!("../../../../fixtures/allowed_links.golden");

pub fn m0() -> ArchitectureModel {
    let loaded = adl::load(M0.as_bytes(), "m0.adl");
    assert!(loaded.diagnostics.is_empty(), "{:?}", loaded.diagnostics);
    loaded.model
}

pub fn manifest() -> toml::Value {
    M0_MANIFEST.parse().expect("manifest is valid TOML")
}

/// Reflexive transitive closure by Warshall's algorithm over the step
/// relation a forward trace uses. Written independently of the tracer.
pub struct Closure {
    pub ids: Vec<String>,
    reach: Vec<Vec<bool>>,
}

impl Closure {
    #[allow(clippy::needless_range_loop)]
    pub fn new(model: &ArchitectureModel, links: LinkSet) -> Self {
        let ids: Vec<String> = model.elements().map(|e| e.id.clone()).collect();
        let index = |id: &str| ids.iter().position(|x| x == id).expect("endpoint exists");
        let n = ids.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for link in model.links() {
            let (s, d) = (index(&link.src), index(&link.dst));
            if DEFAULT_TRACE_LINKS.contains(&link.kind) {
                reach[s][d] = true;
            } else if links == LinkSet::Extended && OWNERSHIP_TRACE_LINKS.contains(&link.kind) {
                reach[d][s] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        Self { ids, reach }
    }

    fn at(&self, id: &str) -> usize {
        self.ids.iter().position(|x| x == id).expect("known id")
    }

    pub fn forward(&self, id: &str) -> BTreeSet<String> {
        let i = self.at(id);
        (0..self.ids.len())
            .filter(|&j| self.reach[i][j])
            .map(|j| self.ids[j].clone())
            .collect()
    }

    pub fn backward(&self, id: &str) -> BTreeSet<String> {
        let j = self.at(id);
        (0..self.ids.len())
            .filter(|&i| self.reach[i][j])
            .map(|i| self.ids[i].clone())
            .collect()
    }
}
