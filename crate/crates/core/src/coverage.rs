//! Which elements each seam must realize, and whether they do.
//!
//! The validator's gap rules and the coverage report both read from here so
//! the two can never disagree.

use crate::metamodel::{seam_catalog, ElementKind, LinkKind, Seam};
use crate::model::ArchitectureModel;

/// Elements a seam expects to see realized, ascending by id.
pub(crate) fn seam_subjects<'m>(model: &'m ArchitectureModel, seam: &Seam) -> Vec<&'m str> {
    match seam.index {
        1 => model.elements_of_kind(ElementKind::OperationalService),
        2 => model.elements_of_kind(ElementKind::ViewFunction),
        3 => model
            .elements_of_kind(ElementKind::SoftwareModule)
            .into_iter()
            .filter(|m| !is_external_module(model, m))
            .collect(),
        4 => model.elements_of_kind(ElementKind::FunctionalComponent),
        _ => Vec::new(),
    }
}

pub(crate) fn is_external_module(model: &ArchitectureModel, module: &str) -> bool {
    model
        .in_of(module, LinkKind::OwnsModule)
        .any(|owner| model.kind_of(owner) == Some(ElementKind::ExternalSystem))
}

pub(crate) fn is_realized(model: &ArchitectureModel, seam: &Seam, id: &str) -> bool {
    match seam.index {
        1 => {
            model.out_degree(id, LinkKind::SvcDialog) > 0
                || model
                    .out_of(id, LinkKind::ContainsAutofn)
                    .any(|af| model.out_degree(af, LinkKind::Implements) > 0)
        }
        2 => model.out_degree(id, LinkKind::VfModule) > 0,
        3 => model.out_degree(id, LinkKind::ModMethod) > 0,
        4 => model.in_degree(id, LinkKind::Deploys) > 0,
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeamCoverage {
    pub seam: &'static Seam,
    pub realized: usize,
    pub total: usize,
    /// Subjects without a realization, ascending.
    pub unrealized: Vec<String>,
}

impl SeamCoverage {
    /// `realized / total`, or 1.0 for an empty seam.
    pub fn ratio(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.realized as f64 / self.total as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub seams: Vec<SeamCoverage>,
}

impl CoverageReport {
    pub fn seam(&self, index: u8) -> Option<&SeamCoverage> {
        self.seams.iter().find(|s| s.seam.index == index)
    }

    pub fn is_complete(&self) -> bool {
        self.seams.iter().all(|s| s.realized == s.total)
    }
}

pub(crate) fn seam_coverage(model: &ArchitectureModel, seam: &'static Seam) -> SeamCoverage {
    let subjects = seam_subjects(model, seam);
    let unrealized: Vec<String> = subjects
        .iter()
        .filter(|id| !is_realized(model, seam, id))
        .map(|id| id.to_string())
        .collect();
    SeamCoverage {
        seam,
        realized: subjects.len() - unrealized.len(),
        total: subjects.len(),
        unrealized,
    }
}

/// Per-seam share of connecting elements that have a realization link.
pub fn coverage(model: &ArchitectureModel) -> CoverageReport {
    CoverageReport {
        seams: seam_catalog().iter().map(|s| seam_coverage(model, s)).collect(),
    }
}
