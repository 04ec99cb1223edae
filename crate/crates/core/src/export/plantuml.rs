use std::collections::BTreeSet;
use std::fmt::Write;

use crate::adl::ATTR_REQUIREMENTS;
use crate::metamodel::{ElementKind, LinkKind};
use crate::model::{ArchitectureModel, Element};

fn label(s: &str) -> String {
    s.replace('"', "'")
}

fn component_line(out: &mut String, indent: &str, e: &Element, alias: &str) {
    let _ = write!(out, "{indent}component \"{}\" as {alias}", label(&e.name));
    if e.kind == ElementKind::ExternalSystem {
        out.push_str(" <<external>>");
    }
    out.push('\n');
}

/// PlantUML deployment diagram: one `node` per hardware node with the
/// components it deploys nested inside; undeployed components are drawn at
/// top level. A component deployed on several nodes keeps its id as alias on
/// the first node and gets `<component>__<node>` on the others.
pub fn export_plantuml_deployment(model: &ArchitectureModel) -> String {
    let mut out = String::from("@startuml\n");
    let mut placed: BTreeSet<&str> = BTreeSet::new();
    let mut notes = String::new();
    for node_id in model.elements_of_kind(ElementKind::HardwareNode) {
        let node = model.element(node_id).expect("listed id");
        let deployed: Vec<&str> = model.out_of(node_id, LinkKind::Deploys).collect();
        let _ = write!(out, "node \"{}\" as {}", label(&node.name), node.id);
        if deployed.is_empty() {
            out.push('\n');
        } else {
            out.push_str(" {\n");
            for c in deployed {
                let comp = model.element(c).expect("link endpoint");
                let alias = if placed.insert(c) {
                    c.to_string()
                } else {
                    format!("{c}__{node_id}")
                };
                component_line(&mut out, "  ", comp, &alias);
            }
            out.push_str("}\n");
        }
        if let Some(req) = node.attr(ATTR_REQUIREMENTS) {
            let _ = writeln!(notes, "note right of {} : {}", node.id, label(req));
        }
    }
    for e in model.elements() {
        let component = matches!(e.kind, ElementKind::FunctionalComponent | ElementKind::ExternalSystem);
        if component && !placed.contains(e.id.as_str()) {
            component_line(&mut out, "", e, &e.id);
        }
    }
    out.push_str(&notes);
    out.push_str("@enduml\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_block() {
        assert_eq!(
            export_plantuml_deployment(&ArchitectureModel::empty()),
            "@startuml\n@enduml\n"
        );
    }
}
