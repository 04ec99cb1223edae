//! Canonical ADL output.
//!
//! Layout: processes, dialogs, components and external systems, classes,
//! nodes, then `bind` statements; each group ascending by id, nested entries
//! ascending by id, two-space indentation. Models produced by [`super::lower`]
//! survive a serialize/parse/lower round trip unchanged. Relations the text
//! format cannot express (a function with two parents, a form shared by two
//! dialogs, attributes other than the four known ones) are not preserved.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write;

use super::lexer::quote;
use super::lower::{synthesized_form_id, ATTR_AGENT, ATTR_CATEGORY, ATTR_PERFORMER, ATTR_REQUIREMENTS};
use crate::metamodel::{ElementKind, LinkKind};
use crate::model::{ArchitectureModel, Element};

pub fn serialize(model: &ArchitectureModel) -> String {
    let mut w = Writer {
        model,
        blocks: Vec::new(),
        visited: HashSet::new(),
    };
    w.run()
}

struct Writer<'m> {
    model: &'m ArchitectureModel,
    blocks: Vec<String>,
    visited: HashSet<&'m str>,
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

impl<'m> Writer<'m> {
    fn el(&self, id: &str) -> &'m Element {
        self.model.element(id).expect("model has referential integrity")
    }

    fn outs(&self, id: &str, kind: LinkKind) -> Vec<&'m str> {
        self.model.out_of(id, kind).collect()
    }

    fn ins(&self, id: &str, kind: LinkKind) -> Vec<&'m str> {
        self.model.in_of(id, kind).collect()
    }

    fn header(out: &mut String, depth: usize, keyword: &str, e: &Element) {
        indent(out, depth);
        let _ = write!(out, "{keyword} {} as {}", quote(&e.name), e.id);
    }

    /// Writes ` {` + body + `}` or ` {}` when the body is empty.
    fn body(out: &mut String, depth: usize, inner: String) {
        if inner.is_empty() {
            out.push_str(" {}\n");
        } else {
            out.push_str(" {\n");
            out.push_str(&inner);
            indent(out, depth);
            out.push_str("}\n");
        }
    }

    fn run(&mut self) -> String {
        let m = self.model;
        for id in m.elements_of_kind(ElementKind::BusinessProcess) {
            let mut out = String::new();
            Self::header(&mut out, 0, "process", self.el(id));
            let inner = self.decomposition(id, 1);
            Self::body(&mut out, 0, inner);
            self.blocks.push(out);
        }

        let mut defined_info: BTreeSet<&str> = BTreeSet::new();
        for id in m.elements_of_kind(ElementKind::Dialog) {
            let block = self.dialog(id, &mut defined_info);
            self.blocks.push(block);
        }

        let components: BTreeMap<&str, bool> = m
            .elements()
            .filter_map(|e| match e.kind {
                ElementKind::FunctionalComponent => Some((e.id.as_str(), false)),
                ElementKind::ExternalSystem => Some((e.id.as_str(), true)),
                _ => None,
            })
            .collect();
        for (id, external) in components {
            let keyword = if external { "external_system" } else { "component" };
            let mut out = String::new();
            Self::header(&mut out, 0, keyword, self.el(id));
            let mut inner = String::new();
            for module in self.outs(id, LinkKind::OwnsModule) {
                Self::header(&mut inner, 1, "module", self.el(module));
                inner.push('\n');
            }
            Self::body(&mut out, 0, inner);
            self.blocks.push(out);
        }

        for id in m.elements_of_kind(ElementKind::EntityClass) {
            let mut out = String::new();
            Self::header(&mut out, 0, "class", self.el(id));
            if let Some(host) = self.ins(id, LinkKind::HostsClass).first() {
                let _ = write!(out, " hosted_by {host}");
            }
            let mut inner = String::new();
            for method in self.outs(id, LinkKind::OwnsMethod) {
                Self::header(&mut inner, 1, "method", self.el(method));
                inner.push('\n');
            }
            Self::body(&mut out, 0, inner);
            self.blocks.push(out);
        }

        for id in m.elements_of_kind(ElementKind::HardwareNode) {
            let node = self.el(id);
            let mut out = String::new();
            Self::header(&mut out, 0, "node", node);
            let mut inner = String::new();
            if let Some(req) = node.attr(ATTR_REQUIREMENTS) {
                let _ = writeln!(inner, "  requirements {}", quote(req));
            }
            let deployed = self.outs(id, LinkKind::Deploys);
            if !deployed.is_empty() {
                let _ = writeln!(inner, "  deploys {}", deployed.join(", "));
            }
            Self::body(&mut out, 0, inner);
            self.blocks.push(out);
        }

        let mut binds = String::new();
        for (kind, src_kind) in [
            (LinkKind::VfModule, ElementKind::ViewFunction),
            (LinkKind::ModMethod, ElementKind::SoftwareModule),
        ] {
            for id in m.elements_of_kind(src_kind) {
                let targets = self.outs(id, kind);
                if !targets.is_empty() {
                    let _ = writeln!(binds, "bind {id} -> {}", targets.join(", "));
                }
            }
        }
        if !binds.is_empty() {
            self.blocks.push(binds);
        }

        self.blocks.join("\n")
    }

    fn decomposition(&mut self, id: &'m str, depth: usize) -> String {
        let mut inner = String::new();
        if !self.visited.insert(id) {
            return inner;
        }
        for child in self.outs(id, LinkKind::Decomposes) {
            let e = self.el(child);
            match e.kind {
                ElementKind::BusinessFunction => {
                    Self::header(&mut inner, depth, "function", e);
                    let sub = self.decomposition(child, depth + 1);
                    Self::body(&mut inner, depth, sub);
                }
                ElementKind::BusinessOperation => self.operation(&mut inner, e, depth),
                _ => {}
            }
        }
        inner
    }

    fn operation(&self, out: &mut String, op: &Element, depth: usize) {
        Self::header(out, depth, "operation", op);
        if op.automated {
            out.push_str(" automated");
        }
        let mut inner = String::new();
        if let Some(p) = op.attr(ATTR_PERFORMER) {
            indent(&mut inner, depth + 1);
            let _ = writeln!(inner, "performer {}", quote(p));
        }
        for svc in self.outs(&op.id, LinkKind::HasService) {
            let s = self.el(svc);
            indent(&mut inner, depth + 1);
            inner.push_str("service ");
            if !s.name.is_empty() {
                inner.push_str(&quote(&s.name));
                inner.push(' ');
            }
            let _ = write!(inner, "as {svc}");
            let mut fns = String::new();
            for af in self.outs(svc, LinkKind::ContainsAutofn) {
                Self::header(&mut fns, depth + 2, "auto_fn", self.el(af));
                fns.push('\n');
            }
            Self::body(&mut inner, depth + 1, fns);
        }
        Self::body(out, depth, inner);
    }

    fn dialog(&self, id: &'m str, defined_info: &mut BTreeSet<&'m str>) -> String {
        let d = self.el(id);
        let mut out = String::new();
        Self::header(&mut out, 0, "dialog", d);
        let mut inner = String::new();

        let mut realized: Vec<&str> = self.ins(id, LinkKind::SvcDialog);
        realized.extend(self.ins(id, LinkKind::Implements));
        realized.sort_unstable();
        if !realized.is_empty() {
            let _ = writeln!(inner, "  implements {}", realized.join(", "));
        }
        if let Some(agent) = d.attr(ATTR_AGENT) {
            let _ = writeln!(inner, "  agent {agent}");
        }
        for (kind, keyword, definer) in [
            (LinkKind::Input, "input", "resource"),
            (LinkKind::Output, "output", "product"),
        ] {
            for info in self.outs(id, kind) {
                if defined_info.insert(info) {
                    let _ = writeln!(inner, "  {keyword} {definer} {} as {info}", quote(&self.el(info).name));
                } else {
                    let _ = writeln!(inner, "  {keyword} {info}");
                }
            }
        }
        let mut anonymous = 0;
        for form in self.outs(id, LinkKind::HasForm) {
            let f = self.el(form);
            if form == synthesized_form_id(id, anonymous) {
                anonymous += 1;
                let _ = writeln!(inner, "  form {}", quote(&f.name));
            } else {
                let _ = writeln!(inner, "  form {} as {form}", quote(&f.name));
            }
        }
        for vf in self.outs(id, LinkKind::HasViewfn) {
            let v = self.el(vf);
            Self::header(&mut inner, 1, "view_fn", v);
            let _ = writeln!(inner, " category {}", v.attr(ATTR_CATEGORY).unwrap_or("io"));
        }
        Self::body(&mut out, 0, inner);
        out
    }
}
