use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{Diagnostic, SourceLocation};
use crate::error::{Error, Result};
use crate::metamodel::{ElementKind, LinkKind};
use crate::model::{ArchitectureModel, Element, Link, LinkOutcome, ModelBuilder};

#[derive(Serialize, Deserialize)]
struct JsonModel {
    elements: Vec<JsonElement>,
    links: Vec<JsonLink>,
}

#[derive(Serialize, Deserialize)]
struct JsonElement {
    id: String,
    kind: ElementKind,
    name: String,
    #[serde(default)]
    attributes: BTreeMap<String, String>,
    #[serde(default)]
    automated: bool,
    #[serde(default)]
    location: Option<SourceLocation>,
}

#[derive(Serialize, Deserialize)]
struct JsonLink {
    kind: LinkKind,
    src: String,
    dst: String,
    #[serde(default)]
    location: Option<SourceLocation>,
}

/// `{"elements":[...],"links":[...]}`, elements ascending by id and links
/// ascending by `(kind, src, dst)`.
pub fn model_to_json(model: &ArchitectureModel) -> String {
    let doc = JsonModel {
        elements: model
            .elements()
            .map(|e| JsonElement {
                id: e.id.clone(),
                kind: e.kind,
                name: e.name.clone(),
                attributes: e.attributes.clone(),
                automated: e.automated,
                location: Some(e.location.clone()),
            })
            .collect(),
        links: model
            .sorted_links()
            .into_iter()
            .map(|l| JsonLink {
                kind: l.kind,
                src: l.src.clone(),
                dst: l.dst.clone(),
                location: Some(l.location.clone()),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("model serializes")
}

/// Inverse of [`model_to_json`]. Elements and links go through the same
/// builder checks as ADL lowering; their diagnostics are returned alongside
/// the model. Malformed JSON is an error.
pub fn model_from_json(text: &str) -> Result<(ArchitectureModel, Vec<Diagnostic>)> {
    let doc: JsonModel = serde_json::from_str(text)?;
    let mut builder = ModelBuilder::new();
    let mut diags = Vec::new();
    for e in doc.elements {
        if !crate::adl::is_identifier(&e.id) {
            return Err(Error::Import(format!("`{}` is not a valid identifier", e.id)));
        }
        let mut element = Element::new(e.id, e.kind, e.name).automated(e.automated);
        element.attributes = e.attributes;
        if let Some(loc) = e.location {
            element = element.at(loc);
        }
        if let Err(d) = builder.add_element(element) {
            diags.push(d);
        }
    }
    for l in doc.links {
        let mut link = Link::new(l.kind, l.src, l.dst);
        if let Some(loc) = l.location {
            link = link.at(loc);
        }
        match builder.add_link(link) {
            Ok(LinkOutcome::Added) => {}
            Ok(LinkOutcome::Duplicate(d)) | Err(d) => diags.push(d),
        }
    }
    Ok((builder.freeze(), diags))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_model() {
        assert_eq!(
            model_to_json(&ArchitectureModel::empty()),
            r#"{"elements":[],"links":[]}"#
        );
        let (m, diags) = model_from_json(r#"{"elements":[],"links":[]}"#).unwrap();
        assert!(m.is_empty() && diags.is_empty());
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(model_from_json("{"), Err(Error::Json(_))));
        assert!(matches!(
            model_from_json(r#"{"elements":[{"id":"P1","kind":"Widget","name":""}],"links":[]}"#),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            model_from_json(r#"{"elements":[{"id":"1P","kind":"BusinessProcess","name":""}],"links":[]}"#),
            Err(Error::Import(_))
        ));
    }

    #[test]
    fn illegal_link_reported() {
        let (m, diags) = model_from_json(
            r#"{"elements":[{"id":"N1","kind":"HardwareNode","name":"n"},{"id":"MM1","kind":"ClassMethod","name":"m"}],
                "links":[{"kind":"DEPLOYS","src":"N1","dst":"MM1"}]}"#,
        )
        .unwrap();
        assert_eq!(m.link_count(), 0);
        assert_eq!(diags[0].code, "E-LINK-META");
    }
}
