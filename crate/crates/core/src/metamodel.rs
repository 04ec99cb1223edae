//! Element kinds, link kinds, layers and the fixed relation table.
//!
//! Everything here is constant data. The relation table is the single
//! authority on which `(source kind, link kind, target kind)` triples a model
//! may contain; the lowering pass, the model store and the generator all
//! consult [`allowed_link`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Abstraction layer of an architectural representation, most abstract first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Business,
    Functional,
    Component,
    Data,
    Technology,
}

impl Layer {
    pub const ALL: [Layer; 5] = [
        Layer::Business,
        Layer::Functional,
        Layer::Component,
        Layer::Data,
        Layer::Technology,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Layer::Business => "business",
            Layer::Functional => "functional",
            Layer::Component => "component",
            Layer::Data => "data",
            Layer::Technology => "technology",
        }
    }

    /// Section title used in reports.
    pub fn title(self) -> &'static str {
        match self {
            Layer::Business => "Business",
            Layer::Functional => "Functional",
            Layer::Component => "Component",
            Layer::Data => "Data",
            Layer::Technology => "Technology",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Layer::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownToken {
                what: "layer",
                token: s.to_string(),
            })
    }
}

/// The closed set of element kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    BusinessProcess,
    BusinessFunction,
    BusinessOperation,
    AutomatedFunction,
    OperationalService,
    Dialog,
    ViewFunction,
    DialogForm,
    InformationObject,
    SoftwareModule,
    FunctionalComponent,
    ExternalSystem,
    EntityClass,
    ClassMethod,
    HardwareNode,
}

impl ElementKind {
    pub const ALL: [ElementKind; 15] = [
        ElementKind::BusinessProcess,
        ElementKind::BusinessFunction,
        ElementKind::BusinessOperation,
        ElementKind::AutomatedFunction,
        ElementKind::OperationalService,
        ElementKind::Dialog,
        ElementKind::ViewFunction,
        ElementKind::DialogForm,
        ElementKind::InformationObject,
        ElementKind::SoftwareModule,
        ElementKind::FunctionalComponent,
        ElementKind::ExternalSystem,
        ElementKind::EntityClass,
        ElementKind::ClassMethod,
        ElementKind::HardwareNode,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::BusinessProcess => "BusinessProcess",
            ElementKind::BusinessFunction => "BusinessFunction",
            ElementKind::BusinessOperation => "BusinessOperation",
            ElementKind::AutomatedFunction => "AutomatedFunction",
            ElementKind::OperationalService => "OperationalService",
            ElementKind::Dialog => "Dialog",
            ElementKind::ViewFunction => "ViewFunction",
            ElementKind::DialogForm => "DialogForm",
            ElementKind::InformationObject => "InformationObject",
            ElementKind::SoftwareModule => "SoftwareModule",
            ElementKind::FunctionalComponent => "FunctionalComponent",
            ElementKind::ExternalSystem => "ExternalSystem",
            ElementKind::EntityClass => "EntityClass",
            ElementKind::ClassMethod => "ClassMethod",
            ElementKind::HardwareNode => "HardwareNode",
        }
    }

    pub fn layer(self) -> Layer {
        layer_of(self)
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ElementKind {
    type Err = Error;

    /// Accepts the canonical CamelCase token, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownToken {
                what: "element kind",
                token: s.to_string(),
            })
    }
}

/// Typed, directed relation between two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LinkKind {
    Decomposes,
    HasService,
    ContainsAutofn,
    SvcDialog,
    Implements,
    HasViewfn,
    Input,
    Output,
    HasForm,
    VfModule,
    OwnsModule,
    ModMethod,
    OwnsMethod,
    HostsClass,
    Deploys,
}

impl LinkKind {
    pub const ALL: [LinkKind; 15] = [
        LinkKind::Decomposes,
        LinkKind::HasService,
        LinkKind::ContainsAutofn,
        LinkKind::SvcDialog,
        LinkKind::Implements,
        LinkKind::HasViewfn,
        LinkKind::Input,
        LinkKind::Output,
        LinkKind::HasForm,
        LinkKind::VfModule,
        LinkKind::OwnsModule,
        LinkKind::ModMethod,
        LinkKind::OwnsMethod,
        LinkKind::HostsClass,
        LinkKind::Deploys,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LinkKind::Decomposes => "DECOMPOSES",
            LinkKind::HasService => "HAS_SERVICE",
            LinkKind::ContainsAutofn => "CONTAINS_AUTOFN",
            LinkKind::SvcDialog => "SVC_DIALOG",
            LinkKind::Implements => "IMPLEMENTS",
            LinkKind::HasViewfn => "HAS_VIEWFN",
            LinkKind::Input => "INPUT",
            LinkKind::Output => "OUTPUT",
            LinkKind::HasForm => "HAS_FORM",
            LinkKind::VfModule => "VF_MODULE",
            LinkKind::OwnsModule => "OWNS_MODULE",
            LinkKind::ModMethod => "MOD_METHOD",
            LinkKind::OwnsMethod => "OWNS_METHOD",
            LinkKind::HostsClass => "HOSTS_CLASS",
            LinkKind::Deploys => "DEPLOYS",
        }
    }

    /// Legal `(source, target)` kind pairs for this link kind.
    pub fn legal_pairs(self) -> &'static [(ElementKind, ElementKind)] {
        use ElementKind::*;
        match self {
            LinkKind::Decomposes => &[
                (BusinessProcess, BusinessFunction),
                (BusinessFunction, BusinessFunction),
                (BusinessFunction, BusinessOperation),
            ],
            LinkKind::HasService => &[(BusinessOperation, OperationalService)],
            LinkKind::ContainsAutofn => &[(OperationalService, AutomatedFunction)],
            LinkKind::SvcDialog => &[(OperationalService, Dialog)],
            LinkKind::Implements => &[(AutomatedFunction, Dialog)],
            LinkKind::HasViewfn => &[(Dialog, ViewFunction)],
            LinkKind::Input => &[(Dialog, InformationObject)],
            LinkKind::Output => &[(Dialog, InformationObject)],
            LinkKind::HasForm => &[(Dialog, DialogForm)],
            LinkKind::VfModule => &[(ViewFunction, SoftwareModule)],
            LinkKind::OwnsModule => &[(FunctionalComponent, SoftwareModule), (ExternalSystem, SoftwareModule)],
            LinkKind::ModMethod => &[(SoftwareModule, ClassMethod)],
            LinkKind::OwnsMethod => &[(EntityClass, ClassMethod)],
            LinkKind::HostsClass => &[(FunctionalComponent, EntityClass)],
            LinkKind::Deploys => &[(HardwareNode, FunctionalComponent), (HardwareNode, ExternalSystem)],
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LinkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LinkKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownToken {
                what: "link kind",
                token: s.to_string(),
            })
    }
}

/// Category of a view function within its dialog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViewFnCategory {
    Precondition,
    DataIO,
    Control,
    ErrorReaction,
    Postcondition,
}

impl ViewFnCategory {
    pub const ALL: [ViewFnCategory; 5] = [
        ViewFnCategory::Precondition,
        ViewFnCategory::DataIO,
        ViewFnCategory::Control,
        ViewFnCategory::ErrorReaction,
        ViewFnCategory::Postcondition,
    ];

    /// Token used in ADL text and in the `category` attribute.
    pub fn token(self) -> &'static str {
        match self {
            ViewFnCategory::Precondition => "precondition",
            ViewFnCategory::DataIO => "io",
            ViewFnCategory::Control => "control",
            ViewFnCategory::ErrorReaction => "error",
            ViewFnCategory::Postcondition => "postcondition",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        ViewFnCategory::ALL.into_iter().find(|c| c.token() == token)
    }
}

impl fmt::Display for ViewFnCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A boundary between two layers together with the element kind whose
/// decomposition crosses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seam {
    /// 1-based position in abstraction order; `seam<N>` on the command line.
    pub index: u8,
    pub name: &'static str,
    pub connecting_kind: ElementKind,
    pub realization_link: LinkKind,
    pub upstream_layer: Layer,
    pub downstream_layer: Layer,
    /// Rule code reporting unrealized elements of this seam.
    pub gap_rule: &'static str,
}

const SEAMS: [Seam; 4] = [
    Seam {
        index: 1,
        name: "service-dialog",
        connecting_kind: ElementKind::OperationalService,
        realization_link: LinkKind::SvcDialog,
        upstream_layer: Layer::Business,
        downstream_layer: Layer::Functional,
        gap_rule: "R-SVC-NODLG",
    },
    Seam {
        index: 2,
        name: "viewfn-module",
        connecting_kind: ElementKind::ViewFunction,
        realization_link: LinkKind::VfModule,
        upstream_layer: Layer::Functional,
        downstream_layer: Layer::Component,
        gap_rule: "R-VF-NOMOD",
    },
    Seam {
        index: 3,
        name: "module-method",
        connecting_kind: ElementKind::SoftwareModule,
        realization_link: LinkKind::ModMethod,
        upstream_layer: Layer::Component,
        downstream_layer: Layer::Data,
        gap_rule: "R-MOD-NOMETH",
    },
    Seam {
        index: 4,
        name: "node-component",
        connecting_kind: ElementKind::HardwareNode,
        realization_link: LinkKind::Deploys,
        upstream_layer: Layer::Component,
        downstream_layer: Layer::Technology,
        gap_rule: "R-COMP-NONODE",
    },
];

pub fn layer_of(kind: ElementKind) -> Layer {
    use ElementKind::*;
    match kind {
        BusinessProcess | BusinessFunction | BusinessOperation | AutomatedFunction | OperationalService => {
            Layer::Business
        }
        Dialog | ViewFunction | DialogForm | InformationObject => Layer::Functional,
        SoftwareModule | FunctionalComponent | ExternalSystem => Layer::Component,
        EntityClass | ClassMethod => Layer::Data,
        HardwareNode => Layer::Technology,
    }
}

pub fn allowed_link(src: ElementKind, link: LinkKind, dst: ElementKind) -> bool {
    link.legal_pairs().contains(&(src, dst))
}

/// Link kinds that are legal between `src` and `dst`, in declaration order.
pub fn link_kinds_between(src: ElementKind, dst: ElementKind) -> Vec<LinkKind> {
    LinkKind::ALL
        .into_iter()
        .filter(|&k| allowed_link(src, k, dst))
        .collect()
}

/// The four seams in abstraction order.
pub fn seam_catalog() -> &'static [Seam] {
    &SEAMS
}

pub fn seam(index: u8) -> Option<&'static Seam> {
    SEAMS.iter().find(|s| s.index == index)
}
