use crate::diagnostic::Severity;

pub const R_BF_LEAF: &str = "R-BF-LEAF";
pub const R_DECOMP_CYCLE: &str = "R-DECOMP-CYCLE";
pub const R_OP_NOSVC: &str = "R-OP-NOSVC";
pub const R_SVC_NOAF: &str = "R-SVC-NOAF";
pub const R_SVC_NODLG: &str = "R-SVC-NODLG";
pub const R_AF_NODLG: &str = "R-AF-NODLG";
pub const R_DLG_NOVF: &str = "R-DLG-NOVF";
pub const R_DLG_NOIO: &str = "R-DLG-NOIO";
pub const R_DLG_NOFORM: &str = "R-DLG-NOFORM";
pub const R_VF_NOMOD: &str = "R-VF-NOMOD";
pub const R_MOD_NOCOMP: &str = "R-MOD-NOCOMP";
pub const R_MOD_MULTICOMP: &str = "R-MOD-MULTICOMP";
pub const R_MOD_NOMETH: &str = "R-MOD-NOMETH";
pub const R_METH_NOCLASS: &str = "R-METH-NOCLASS";
pub const R_COMP_NONODE: &str = "R-COMP-NONODE";
pub const R_ORPHAN: &str = "R-ORPHAN";
pub const W_EMPTY_MODEL: &str = "W-EMPTY-MODEL";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleInfo {
    pub code: &'static str,
    pub severity: Severity,
    pub description: &'static str,
    /// The modelling relation the rule protects.
    pub concern: &'static str,
}

const fn rule(code: &'static str, severity: Severity, description: &'static str, concern: &'static str) -> RuleInfo {
    RuleInfo {
        code,
        severity,
        description,
        concern,
    }
}

use Severity::{Error, Warning};

static CATALOG: [RuleInfo; 17] = [
    rule(
        R_BF_LEAF,
        Error,
        "business function or process with no decomposition",
        "business decomposition",
    ),
    rule(
        R_DECOMP_CYCLE,
        Error,
        "cycle among DECOMPOSES links",
        "business decomposition",
    ),
    rule(
        R_OP_NOSVC,
        Error,
        "automated business operation without an operational service",
        "operational services",
    ),
    rule(
        R_SVC_NOAF,
        Warning,
        "operational service with no automated functions",
        "operational services",
    ),
    rule(
        R_SVC_NODLG,
        Error,
        "operational service not realized by any dialog",
        "seam 1: business to functional",
    ),
    rule(
        R_AF_NODLG,
        Warning,
        "automated function without a dialog while sibling functions have one",
        "operational services",
    ),
    rule(R_DLG_NOVF, Error, "dialog with no view functions", "dialog structure"),
    rule(
        R_DLG_NOIO,
        Warning,
        "dialog without a source resource or target product",
        "dialog structure",
    ),
    rule(R_DLG_NOFORM, Warning, "user dialog without a form", "dialog structure"),
    rule(
        R_VF_NOMOD,
        Error,
        "view function not decomposed into software modules",
        "seam 2: functional to component",
    ),
    rule(
        R_MOD_NOCOMP,
        Error,
        "software module not owned by a component",
        "component structure",
    ),
    rule(
        R_MOD_MULTICOMP,
        Error,
        "software module owned by more than one component",
        "component structure",
    ),
    rule(
        R_MOD_NOMETH,
        Error,
        "software module not decomposed into class methods",
        "seam 3: component to data",
    ),
    rule(
        R_METH_NOCLASS,
        Error,
        "class method not owned by exactly one entity class",
        "data structure",
    ),
    rule(
        R_COMP_NONODE,
        Error,
        "functional component not deployed on any hardware node",
        "seam 4: component to technology",
    ),
    rule(
        R_ORPHAN,
        Warning,
        "element not traceable to any business process",
        "excess functionality",
    ),
    rule(W_EMPTY_MODEL, Warning, "model has no business process", "model"),
];

/// All validator rules in evaluation and reporting order.
pub fn rule_catalog() -> &'static [RuleInfo] {
    &CATALOG
}

pub fn rule_info(code: &str) -> Option<&'static RuleInfo> {
    CATALOG.iter().find(|r| r.code == code)
}
