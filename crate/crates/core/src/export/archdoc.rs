use std::collections::HashSet;
use std::fmt::Write;

use crate::adl::{ATTR_AGENT, ATTR_CATEGORY, ATTR_PERFORMER, ATTR_REQUIREMENTS};
use crate::coverage::CoverageReport;
use crate::diagnostic::{Diagnostic, Severity};
use crate::metamodel::{ElementKind, LinkKind};
use crate::model::ArchitectureModel;
use crate::tracer::{trace_matrix, TraceOptions};

const NONE: &str = "none\n";

struct Doc<'m> {
    model: &'m ArchitectureModel,
    out: String,
}

impl<'m> Doc<'m> {
    fn section(&mut self, title: &str) {
        let _ = write!(self.out, "\n## {title}\n\n");
    }

    fn name(&self, id: &str) -> &'m str {
        self.model.element(id).map_or("", |e| e.name.as_str())
    }

    fn outs(&self, id: &str, kind: LinkKind) -> Vec<&'m str> {
        self.model.out_of(id, kind).collect()
    }

    fn item(&mut self, depth: usize, id: &str, extra: &str) {
        let indent = "  ".repeat(depth);
        let name = self.name(id);
        let _ = writeln!(self.out, "{indent}- **{id}** {name}{extra}");
    }

    fn business_tree(&mut self, id: &'m str, depth: usize, seen: &mut HashSet<&'m str>) {
        if !seen.insert(id) {
            return;
        }
        for child in self.outs(id, LinkKind::Decomposes) {
            let e = self.model.element(child).expect("link endpoint");
            let extra = match e.kind {
                ElementKind::BusinessOperation => {
                    let mut notes = vec!["operation".to_string()];
                    if e.automated {
                        notes.push("automated".into());
                    }
                    if let Some(p) = e.attr(ATTR_PERFORMER) {
                        notes.push(format!("performer: {p}"));
                    }
                    format!(" ({})", notes.join("; "))
                }
                _ => String::new(),
            };
            self.item(depth, child, &extra);
            self.business_tree(child, depth + 1, seen);
        }
    }

    fn business(&mut self) {
        self.section("Business Architecture");
        let processes = self.model.elements_of_kind(ElementKind::BusinessProcess);
        if processes.is_empty() {
            self.out.push_str(NONE);
        }
        let mut seen = HashSet::new();
        for p in processes {
            self.item(0, p, " (process)");
            self.business_tree(p, 1, &mut seen);
        }
    }

    fn services(&mut self) {
        self.section("Operational Services");
        let mut any = false;
        for op in self.model.elements_of_kind(ElementKind::BusinessOperation) {
            for svc in self.outs(op, LinkKind::HasService) {
                any = true;
                let _ = writeln!(self.out, "- **{op}** {}: service **{svc}**", self.name(op));
                let fns = self.outs(svc, LinkKind::ContainsAutofn);
                if fns.is_empty() {
                    self.out.push_str("  - no automated functions\n");
                }
                for af in fns {
                    self.item(1, af, "");
                }
            }
        }
        if !any {
            self.out.push_str(NONE);
        }
    }

    fn list_line(&mut self, label: &str, ids: &[&str]) {
        let text = if ids.is_empty() {
            "none".to_string()
        } else {
            ids.iter()
                .map(|id| format!("{id} ({})", self.name(id)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(self.out, "- {label}: {text}");
    }

    fn functional(&mut self) {
        self.section("Functional Architecture");
        let dialogs = self.model.elements_of_kind(ElementKind::Dialog);
        if dialogs.is_empty() {
            self.out.push_str(NONE);
        }
        for (i, d) in dialogs.into_iter().enumerate() {
            let e = self.model.element(d).expect("listed id");
            if i > 0 {
                self.out.push('\n');
            }
            let _ = write!(self.out, "### {d} {}\n\n", e.name);
            let _ = writeln!(self.out, "- agent: {}", e.attr(ATTR_AGENT).unwrap_or("unspecified"));
            let mut realizes: Vec<&str> = self.model.in_of(d, LinkKind::SvcDialog).collect();
            realizes.extend(self.model.in_of(d, LinkKind::Implements));
            realizes.sort_unstable();
            let _ = writeln!(
                self.out,
                "- realizes: {}",
                if realizes.is_empty() {
                    "none".to_string()
                } else {
                    realizes.join(", ")
                }
            );
            self.list_line("source resources", &self.outs(d, LinkKind::Input));
            self.list_line("target products", &self.outs(d, LinkKind::Output));
            self.list_line("forms", &self.outs(d, LinkKind::HasForm));
            let vfs = self.outs(d, LinkKind::HasViewfn);
            if vfs.is_empty() {
                self.out.push_str("- view functions: none\n");
            } else {
                self.out.push_str("- view functions:\n");
            }
            for vf in vfs {
                let v = self.model.element(vf).expect("link endpoint");
                let modules = self.outs(vf, LinkKind::VfModule);
                let extra = format!(
                    " [{}] -> {}",
                    v.attr(ATTR_CATEGORY).unwrap_or("?"),
                    if modules.is_empty() {
                        "no modules".to_string()
                    } else {
                        modules.join(", ")
                    }
                );
                self.item(1, vf, &extra);
            }
        }
    }

    fn components(&mut self) {
        self.section("Component Architecture");
        let comps: Vec<&str> = self
            .model
            .elements()
            .filter(|e| matches!(e.kind, ElementKind::FunctionalComponent | ElementKind::ExternalSystem))
            .map(|e| e.id.as_str())
            .collect();
        if comps.is_empty() {
            self.out.push_str(NONE);
        }
        for c in comps {
            let external = self.model.kind_of(c) == Some(ElementKind::ExternalSystem);
            self.item(0, c, if external { " (external system)" } else { "" });
            for m in self.outs(c, LinkKind::OwnsModule) {
                let methods = self.outs(m, LinkKind::ModMethod);
                let extra = if methods.is_empty() {
                    String::new()
                } else {
                    format!(" -> {}", methods.join(", "))
                };
                self.item(1, m, &extra);
            }
        }
    }

    fn data(&mut self) {
        self.section("Data Architecture");
        let classes = self.model.elements_of_kind(ElementKind::EntityClass);
        if classes.is_empty() {
            self.out.push_str(NONE);
        }
        for k in classes {
            let hosts: Vec<&str> = self.model.in_of(k, LinkKind::HostsClass).collect();
            let extra = if hosts.is_empty() {
                String::new()
            } else {
                format!(" (hosted by {})", hosts.join(", "))
            };
            self.item(0, k, &extra);
            for mm in self.outs(k, LinkKind::OwnsMethod) {
                self.item(1, mm, "");
            }
        }
    }

    fn deployment(&mut self) {
        self.section("Deployment");
        let nodes = self.model.elements_of_kind(ElementKind::HardwareNode);
        if nodes.is_empty() {
            self.out.push_str(NONE);
        }
        for n in nodes {
            let req = self
                .model
                .element(n)
                .and_then(|e| e.attr(ATTR_REQUIREMENTS))
                .map(|r| format!(" (requirements: {r})"))
                .unwrap_or_default();
            self.item(0, n, &req);
            for c in self.outs(n, LinkKind::Deploys) {
                self.item(1, c, "");
            }
        }
    }

    fn traceability(&mut self) {
        self.section("Traceability");
        let pairs = trace_matrix(
            self.model,
            ElementKind::BusinessOperation,
            ElementKind::ClassMethod,
            &TraceOptions::default(),
        );
        if pairs.is_empty() {
            self.out.push_str(NONE);
            return;
        }
        self.out.push_str("| Operation | Class method |\n|---|---|\n");
        for (from, to) in pairs {
            let _ = writeln!(self.out, "| {from} | {to} |");
        }
    }

    fn summary(&mut self, diags: &[Diagnostic], coverage: &CoverageReport) {
        self.section("Validation Summary");
        self.out
            .push_str("| Seam | Realized | Total | Coverage |\n|---|---|---|---|\n");
        for s in &coverage.seams {
            let _ = writeln!(
                self.out,
                "| {} {} | {} | {} | {:.3} |",
                s.seam.index,
                s.seam.name,
                s.realized,
                s.total,
                s.ratio()
            );
        }
        let count = |sev| diags.iter().filter(|d| d.severity == sev).count();
        let _ = write!(
            self.out,
            "\nDiagnostics: {} errors, {} warnings, {} info\n",
            count(Severity::Error),
            count(Severity::Warning),
            count(Severity::Info)
        );
    }
}

/// Generated architecture document in Markdown.
pub fn render_archdoc(model: &ArchitectureModel, diags: &[Diagnostic], coverage: &CoverageReport) -> String {
    let mut doc = Doc {
        model,
        out: String::from("# Architecture Document\n"),
    };
    doc.business();
    doc.services();
    doc.functional();
    doc.components();
    doc.data();
    doc.deployment();
    doc.traceability();
    doc.summary(diags, coverage);
    doc.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::coverage;

    #[test]
    fn empty_model_sections() {
        let m = ArchitectureModel::empty();
        let doc = render_archdoc(&m, &[], &coverage(&m));
        let titles = [
            "Business Architecture",
            "Operational Services",
            "Functional Architecture",
            "Component Architecture",
            "Data Architecture",
            "Deployment",
            "Traceability",
            "Validation Summary",
        ];
        let mut last = 0;
        for t in titles {
            let at = doc
                .find(&format!("## {t}\n\nnone"))
                .or_else(|| doc.find(&format!("## {t}")));
            let at = at.unwrap_or_else(|| panic!("missing {t}"));
            assert!(at > last);
            last = at;
        }
        assert_eq!(doc.matches("\nnone\n").count(), 7);
    }
}
