//! AST to model lowering.
//!
//! Pass one registers every declared element and records the links implied
//! by nesting; pass two resolves cross-block references (`implements`,
//! `hosted_by`, `deploys`, `bind`, bare information-object references) now
//! that all ids are known. A declaration whose id is a duplicate is dropped
//! together with the links its nesting would have induced.

use super::ast::*;
use crate::diagnostic::{codes, Diagnostic, SourceLocation};
use crate::metamodel::{link_kinds_between, ElementKind, LinkKind};
use crate::model::{ArchitectureModel, Element, Link, LinkOutcome, ModelBuilder};

pub const ATTR_CATEGORY: &str = "category";
pub const ATTR_AGENT: &str = "agent";
pub const ATTR_PERFORMER: &str = "performer";
pub const ATTR_REQUIREMENTS: &str = "requirements";

/// Id given to the `n`-th (0-based) form declared without `as` in a dialog.
pub fn synthesized_form_id(dialog: &str, n: usize) -> String {
    if n == 0 {
        format!("{dialog}_form")
    } else {
        format!("{dialog}_form{}", n + 1)
    }
}

enum Pending {
    Fixed(Link),
    Implements {
        dialog: String,
        target: Ident,
    },
    Bind {
        from: Ident,
        to: Ident,
        location: SourceLocation,
    },
}

#[derive(Default)]
struct Lowerer {
    builder: ModelBuilder,
    pending: Vec<Pending>,
    diags: Vec<Diagnostic>,
}

impl Lowerer {
    /// Registers an element; false when the id was a duplicate.
    fn define(&mut self, id: &Ident, kind: ElementKind, name: &str) -> bool {
        self.define_element(Element::new(id.text.clone(), kind, name).at(id.location.clone()))
    }

    fn define_element(&mut self, element: Element) -> bool {
        match self.builder.add_element(element) {
            Ok(()) => true,
            Err(d) => {
                self.diags.push(d);
                false
            }
        }
    }

    fn nest(&mut self, live_parent: bool, kind: LinkKind, parent: &str, child: &Ident, live_child: bool) {
        if live_parent && live_child {
            self.pending.push(Pending::Fixed(
                Link::new(kind, parent, child.text.clone()).at(child.location.clone()),
            ));
        }
    }

    fn process(&mut self, p: &ProcessDecl) {
        let live = self.define(&p.id, ElementKind::BusinessProcess, &p.name);
        for f in &p.functions {
            let child = self.function(f);
            self.nest(live, LinkKind::Decomposes, &p.id.text, &f.id, child);
        }
    }

    fn function(&mut self, f: &FunctionDecl) -> bool {
        let live = self.define(&f.id, ElementKind::BusinessFunction, &f.name);
        for c in &f.children {
            let (id, child) = match c {
                FunctionChild::Function(sub) => (&sub.id, self.function(sub)),
                FunctionChild::Operation(op) => (&op.id, self.operation(op)),
            };
            self.nest(live, LinkKind::Decomposes, &f.id.text, id, child);
        }
        live
    }

    fn operation(&mut self, op: &OperationDecl) -> bool {
        let mut element = Element::new(op.id.text.clone(), ElementKind::BusinessOperation, &op.name)
            .automated(op.automated)
            .at(op.id.location.clone());
        if let Some(p) = &op.performer {
            element = element.with_attr(ATTR_PERFORMER, p.clone());
        }
        let live = self.define_element(element);
        if let Some(svc) = &op.service {
            let svc_live = self.define(
                &svc.id,
                ElementKind::OperationalService,
                svc.name.as_deref().unwrap_or(""),
            );
            self.nest(live, LinkKind::HasService, &op.id.text, &svc.id, svc_live);
            for af in &svc.auto_fns {
                let af_live = self.define(&af.id, ElementKind::AutomatedFunction, &af.name);
                self.nest(svc_live, LinkKind::ContainsAutofn, &svc.id.text, &af.id, af_live);
            }
        }
        live
    }

    fn info(&mut self, dialog: &str, live: bool, kind: LinkKind, r: &InfoRef) {
        match r {
            InfoRef::Define(entry) => {
                let child = self.define(&entry.id, ElementKind::InformationObject, &entry.name);
                self.nest(live, kind, dialog, &entry.id, child);
            }
            InfoRef::Reference(id) => {
                if live {
                    self.pending.push(Pending::Fixed(
                        Link::new(kind, dialog, id.text.clone()).at(id.location.clone()),
                    ));
                }
            }
        }
    }

    fn dialog(&mut self, d: &DialogDecl) {
        let mut element = Element::new(d.id.text.clone(), ElementKind::Dialog, &d.name).at(d.id.location.clone());
        for item in &d.items {
            if let DialogItem::Agent(agent, _) = item {
                element = element.with_attr(ATTR_AGENT, agent.token());
            }
        }
        let live = self.define_element(element);
        let dialog = d.id.text.as_str();
        let mut anonymous_forms = 0;
        for item in &d.items {
            match item {
                DialogItem::Agent(..) => {}
                DialogItem::Implements(targets) => {
                    if live {
                        for t in targets {
                            self.pending.push(Pending::Implements {
                                dialog: dialog.to_string(),
                                target: t.clone(),
                            });
                        }
                    }
                }
                DialogItem::Input(r) => self.info(dialog, live, LinkKind::Input, r),
                DialogItem::Output(r) => self.info(dialog, live, LinkKind::Output, r),
                DialogItem::Form { text, id, location } => {
                    let id = id.clone().unwrap_or_else(|| {
                        anonymous_forms += 1;
                        Ident {
                            text: synthesized_form_id(dialog, anonymous_forms - 1),
                            location: location.clone(),
                        }
                    });
                    let child = self.define(&id, ElementKind::DialogForm, text);
                    self.nest(live, LinkKind::HasForm, dialog, &id, child);
                }
                DialogItem::ViewFn { entry, category } => {
                    let child = self.define_element(
                        Element::new(entry.id.text.clone(), ElementKind::ViewFunction, &entry.name)
                            .with_attr(ATTR_CATEGORY, category.token())
                            .at(entry.id.location.clone()),
                    );
                    self.nest(live, LinkKind::HasViewfn, dialog, &entry.id, child);
                }
            }
        }
    }

    fn component(&mut self, c: &ComponentDecl) {
        let kind = if c.external {
            ElementKind::ExternalSystem
        } else {
            ElementKind::FunctionalComponent
        };
        let live = self.define(&c.id, kind, &c.name);
        for m in &c.modules {
            let child = self.define(&m.id, ElementKind::SoftwareModule, &m.name);
            self.nest(live, LinkKind::OwnsModule, &c.id.text, &m.id, child);
        }
    }

    fn class(&mut self, c: &ClassDecl) {
        let live = self.define(&c.id, ElementKind::EntityClass, &c.name);
        if let (true, Some(host)) = (live, &c.hosted_by) {
            self.pending.push(Pending::Fixed(
                Link::new(LinkKind::HostsClass, host.text.clone(), c.id.text.clone()).at(host.location.clone()),
            ));
        }
        for m in &c.methods {
            let child = self.define(&m.id, ElementKind::ClassMethod, &m.name);
            self.nest(live, LinkKind::OwnsMethod, &c.id.text, &m.id, child);
        }
    }

    fn node(&mut self, n: &NodeDecl) {
        let mut element = Element::new(n.id.text.clone(), ElementKind::HardwareNode, &n.name).at(n.id.location.clone());
        if let Some(r) = &n.requirements {
            element = element.with_attr(ATTR_REQUIREMENTS, r.clone());
        }
        if !self.define_element(element) {
            return;
        }
        for target in &n.deploys {
            self.pending.push(Pending::Fixed(
                Link::new(LinkKind::Deploys, n.id.text.clone(), target.text.clone()).at(target.location.clone()),
            ));
        }
    }

    fn link(&mut self, link: Link) {
        match self.builder.add_link(link) {
            Ok(LinkOutcome::Added) => {}
            Ok(LinkOutcome::Duplicate(d)) | Err(d) => self.diags.push(d),
        }
    }

    fn unresolved(&mut self, id: &Ident) {
        self.diags.push(
            Diagnostic::error(codes::E_REF_UNRES, format!("unresolved reference `{}`", id.text))
                .with_subject(id.text.clone())
                .at(id.location.clone()),
        );
    }

    fn resolve(&mut self, pending: Pending) {
        match pending {
            Pending::Fixed(link) => self.link(link),
            Pending::Implements { dialog, target } => {
                let kind = match self.builder.element(&target.text).map(|e| e.kind) {
                    None => return self.unresolved(&target),
                    Some(ElementKind::OperationalService) => LinkKind::SvcDialog,
                    // anything else is rejected by the metamodel check in add_link
                    Some(_) => LinkKind::Implements,
                };
                self.link(Link::new(kind, target.text, dialog).at(target.location));
            }
            Pending::Bind { from, to, location } => {
                let (Some(src), Some(dst)) = (
                    self.builder.element(&from.text).map(|e| e.kind),
                    self.builder.element(&to.text).map(|e| e.kind),
                ) else {
                    let missing = if self.builder.contains(&from.text) { &to } else { &from };
                    return self.unresolved(missing);
                };
                let bindable: Vec<LinkKind> = link_kinds_between(src, dst)
                    .into_iter()
                    .filter(|k| matches!(k, LinkKind::VfModule | LinkKind::ModMethod))
                    .collect();
                if let [kind] = bindable[..] {
                    self.link(Link::new(kind, from.text, to.text).at(to.location));
                } else {
                    self.diags.push(
                        Diagnostic::error(
                            codes::E_BIND_AMBIG,
                            format!("no link kind binds {src} `{}` to {dst} `{}`", from.text, to.text),
                        )
                        .with_subjects([from.text, to.text])
                        .at(location),
                    );
                }
            }
        }
    }
}

/// Lowers a parsed document. A model is always returned; declarations that
/// produced errors are left out of it.
pub fn lower(ast: &ModelAst) -> (ArchitectureModel, Vec<Diagnostic>) {
    let mut lw = Lowerer::default();
    for item in &ast.items {
        match item {
            TopLevel::Process(p) => lw.process(p),
            TopLevel::Dialog(d) => lw.dialog(d),
            TopLevel::Component(c) => lw.component(c),
            TopLevel::Class(c) => lw.class(c),
            TopLevel::Node(n) => lw.node(n),
            TopLevel::Bind(b) => {
                for to in &b.to {
                    lw.pending.push(Pending::Bind {
                        from: b.from.clone(),
                        to: to.clone(),
                        location: b.location.clone(),
                    });
                }
            }
        }
    }
    for p in std::mem::take(&mut lw.pending) {
        lw.resolve(p);
    }
    (lw.builder.freeze(), lw.diags)
}
