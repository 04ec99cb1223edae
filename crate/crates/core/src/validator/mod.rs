//! Rule catalog and validation over a frozen model.
//!
//! Every rule is a pure function of the model. [`validate`] runs the enabled
//! ones, applies severity overrides and sorts the findings by rule code, then
//! by subject id.

mod catalog;
mod config;

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graphmap::DiGraphMap;

pub use catalog::*;
pub use config::{RuleConfig, RuleSetting};

use crate::adl::ATTR_AGENT;
use crate::coverage::{is_external_module, is_realized, seam_coverage};
use crate::diagnostic::Diagnostic;
use crate::metamodel::{seam_catalog, ElementKind, Layer, LinkKind, Seam};
use crate::model::ArchitectureModel;
use crate::tracer::DEFAULT_TRACE_LINKS;

/// Kinds whose elements must be reachable from a business process through
/// the default trace links.
pub const ORPHAN_CHECKED_KINDS: [ElementKind; 4] = [
    ElementKind::Dialog,
    ElementKind::ViewFunction,
    ElementKind::SoftwareModule,
    ElementKind::ClassMethod,
];

struct Ctx<'m> {
    model: &'m ArchitectureModel,
    out: Vec<Diagnostic>,
}

impl<'m> Ctx<'m> {
    fn emit(&mut self, code: &str, subjects: &[&str], message: String) {
        let info = rule_info(code).expect("catalog code");
        let mut d = Diagnostic::new(code, info.severity, message).with_subjects(subjects.iter().copied());
        if let Some(first) = subjects.first().and_then(|id| self.model.element(id)) {
            d = d.at(first.location.clone());
        }
        self.out.push(d);
    }

    fn of_kind(&self, kind: ElementKind) -> Vec<&'m str> {
        self.model.elements_of_kind(kind)
    }

    fn out_deg(&self, id: &str, kind: LinkKind) -> usize {
        self.model.out_degree(id, kind)
    }

    fn in_deg(&self, id: &str, kind: LinkKind) -> usize {
        self.model.in_degree(id, kind)
    }
}

fn business_leaves(cx: &mut Ctx) {
    for p in cx.of_kind(ElementKind::BusinessProcess) {
        if cx.out_deg(p, LinkKind::Decomposes) == 0 {
            cx.emit(
                R_BF_LEAF,
                &[p],
                format!("business process `{p}` is not decomposed into business functions"),
            );
        }
    }
    for f in cx.of_kind(ElementKind::BusinessFunction) {
        if cx.out_deg(f, LinkKind::Decomposes) == 0 {
            cx.emit(
                R_BF_LEAF,
                &[f],
                format!("business function `{f}` is not decomposed into functions or operations"),
            );
        }
    }
}

fn decomposition_cycles(cx: &mut Ctx) {
    let mut graph: DiGraphMap<&str, ()> = DiGraphMap::new();
    for l in cx.model.links().iter().filter(|l| l.kind == LinkKind::Decomposes) {
        graph.add_edge(l.src.as_str(), l.dst.as_str(), ());
    }
    let mut cycles: Vec<Vec<&str>> = tarjan_scc(&graph)
        .into_iter()
        .filter(|scc| scc.len() > 1 || graph.contains_edge(scc[0], scc[0]))
        .map(|mut scc| {
            scc.sort_unstable();
            scc
        })
        .collect();
    cycles.sort();
    for cycle in cycles {
        cx.emit(
            R_DECOMP_CYCLE,
            &cycle,
            format!("decomposition cycle through {}", cycle.join(", ")),
        );
    }
}

fn operations_and_services(cx: &mut Ctx) {
    for o in cx.of_kind(ElementKind::BusinessOperation) {
        let automated = cx.model.element(o).is_some_and(|e| e.automated);
        if automated && cx.out_deg(o, LinkKind::HasService) == 0 {
            cx.emit(
                R_OP_NOSVC,
                &[o],
                format!("automated operation `{o}` has no operational service"),
            );
        }
    }
    let seam1 = &seam_catalog()[0];
    for s in cx.of_kind(ElementKind::OperationalService) {
        if cx.out_deg(s, LinkKind::ContainsAutofn) == 0 {
            cx.emit(
                R_SVC_NOAF,
                &[s],
                format!("operational service `{s}` lists no automated functions"),
            );
        }
        if !is_realized(cx.model, seam1, s) {
            cx.emit(
                R_SVC_NODLG,
                &[s],
                format!("operational service `{s}` is not decomposed into dialogs"),
            );
        }
        let fns: Vec<&str> = cx.model.out_of(s, LinkKind::ContainsAutofn).collect();
        let wired = fns.iter().any(|af| cx.out_deg(af, LinkKind::Implements) > 0);
        if wired {
            for af in fns {
                if cx.out_deg(af, LinkKind::Implements) == 0 {
                    cx.emit(
                        R_AF_NODLG,
                        &[af],
                        format!("automated function `{af}` of `{s}` is not implemented in any dialog"),
                    );
                }
            }
        }
    }
}

fn dialogs(cx: &mut Ctx) {
    for d in cx.of_kind(ElementKind::Dialog) {
        if cx.out_deg(d, LinkKind::HasViewfn) == 0 {
            cx.emit(R_DLG_NOVF, &[d], format!("dialog `{d}` defines no view functions"));
        }
        let missing: Vec<&str> = [
            (LinkKind::Input, "source resource"),
            (LinkKind::Output, "target product"),
        ]
        .into_iter()
        .filter(|(k, _)| cx.out_deg(d, *k) == 0)
        .map(|(_, what)| what)
        .collect();
        if !missing.is_empty() {
            cx.emit(
                R_DLG_NOIO,
                &[d],
                format!("dialog `{d}` has no {}", missing.join(" and no ")),
            );
        }
        let user = cx.model.element(d).and_then(|e| e.attr(ATTR_AGENT)) == Some("user");
        if user && cx.out_deg(d, LinkKind::HasForm) == 0 {
            cx.emit(R_DLG_NOFORM, &[d], format!("user dialog `{d}` has no form"));
        }
    }
}

fn view_functions(cx: &mut Ctx) {
    for v in cx.of_kind(ElementKind::ViewFunction) {
        if cx.out_deg(v, LinkKind::VfModule) == 0 {
            cx.emit(
                R_VF_NOMOD,
                &[v],
                format!("view function `{v}` is not decomposed into software modules"),
            );
        }
    }
}

fn modules(cx: &mut Ctx) {
    for m in cx.of_kind(ElementKind::SoftwareModule) {
        match cx.in_deg(m, LinkKind::OwnsModule) {
            0 => cx.emit(
                R_MOD_NOCOMP,
                &[m],
                format!("software module `{m}` belongs to no component"),
            ),
            1 => {}
            n => {
                let owners: Vec<&str> = cx.model.in_of(m, LinkKind::OwnsModule).collect();
                cx.emit(
                    R_MOD_MULTICOMP,
                    &[m],
                    format!(
                        "software module `{m}` is owned by {n} components ({})",
                        owners.join(", ")
                    ),
                );
            }
        }
        if !is_external_module(cx.model, m) && cx.out_deg(m, LinkKind::ModMethod) == 0 {
            cx.emit(
                R_MOD_NOMETH,
                &[m],
                format!("software module `{m}` is not decomposed into class methods"),
            );
        }
    }
    for mm in cx.of_kind(ElementKind::ClassMethod) {
        let n = cx.in_deg(mm, LinkKind::OwnsMethod);
        if n != 1 {
            cx.emit(
                R_METH_NOCLASS,
                &[mm],
                format!("class method `{mm}` is owned by {n} entity classes, expected 1"),
            );
        }
    }
}

fn deployment(cx: &mut Ctx) {
    for c in cx.of_kind(ElementKind::FunctionalComponent) {
        if cx.in_deg(c, LinkKind::Deploys) == 0 {
            cx.emit(
                R_COMP_NONODE,
                &[c],
                format!("functional component `{c}` is not deployed on any node"),
            );
        }
    }
}

/// Elements reachable from some business process along the default trace
/// links (multi-source forward closure).
pub(crate) fn business_reachable(model: &ArchitectureModel) -> BTreeSet<&str> {
    let mut seen: BTreeSet<&str> = model
        .elements_of_kind(ElementKind::BusinessProcess)
        .into_iter()
        .collect();
    let mut stack: Vec<&str> = seen.iter().copied().collect();
    while let Some(id) = stack.pop() {
        for kind in DEFAULT_TRACE_LINKS {
            for n in model.out_of(id, kind) {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
    }
    seen
}

fn orphans(cx: &mut Ctx) {
    let reachable = business_reachable(cx.model);
    let candidates: Vec<&str> = cx
        .model
        .elements()
        .filter(|e| e.layer() != Layer::Business && ORPHAN_CHECKED_KINDS.contains(&e.kind))
        .map(|e| e.id.as_str())
        .filter(|id| !reachable.contains(id))
        .collect();
    for id in candidates {
        let kind = cx.model.kind_of(id).expect("listed id");
        cx.emit(
            R_ORPHAN,
            &[id],
            format!("{kind} `{id}` is not traceable to any business process"),
        );
    }
}

fn empty_model(cx: &mut Ctx) {
    if cx.of_kind(ElementKind::BusinessProcess).is_empty() {
        cx.emit(W_EMPTY_MODEL, &[], "model has no business process".to_string());
    }
}

fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| (&a.code, &a.subjects, &a.message).cmp(&(&b.code, &b.subjects, &b.message)));
}

/// Runs every enabled rule. Findings are data: this never fails.
pub fn validate(model: &ArchitectureModel, config: &RuleConfig) -> Vec<Diagnostic> {
    let mut cx = Ctx { model, out: Vec::new() };
    business_leaves(&mut cx);
    decomposition_cycles(&mut cx);
    operations_and_services(&mut cx);
    dialogs(&mut cx);
    view_functions(&mut cx);
    modules(&mut cx);
    deployment(&mut cx);
    orphans(&mut cx);
    empty_model(&mut cx);

    let mut out: Vec<Diagnostic> = cx
        .out
        .into_iter()
        .filter_map(|mut d| {
            let default = rule_info(&d.code).expect("catalog code").severity;
            d.severity = config.severity(&d.code, default)?;
            Some(d)
        })
        .collect();
    sort_diagnostics(&mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeamGap {
    pub seam: &'static Seam,
    /// Findings of the seam's gap rule (empty when that rule is disabled).
    pub diagnostics: Vec<Diagnostic>,
    pub realized: usize,
    pub total: usize,
}

impl SeamGap {
    pub fn coverage(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.realized as f64 / self.total as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub seams: Vec<SeamGap>,
}

impl GapReport {
    pub fn has_errors(&self) -> bool {
        self.seams
            .iter()
            .any(|s| s.diagnostics.iter().any(Diagnostic::is_error))
    }
}

/// Gap-rule findings and coverage, grouped by seam.
pub fn gap_report(model: &ArchitectureModel, config: &RuleConfig) -> GapReport {
    let diags = validate(model, config);
    GapReport {
        seams: seam_catalog()
            .iter()
            .map(|seam| {
                let cov = seam_coverage(model, seam);
                SeamGap {
                    seam,
                    diagnostics: diags.iter().filter(|d| d.code == seam.gap_rule).cloned().collect(),
                    realized: cov.realized,
                    total: cov.total,
                }
            })
            .collect(),
    }
}
