//! Append-then-freeze model graph.
//!
//! A [`ModelBuilder`] accepts elements and links one at a time, rejecting
//! anything the metamodel does not admit. [`ModelBuilder::freeze`] produces an
//! immutable [`ArchitectureModel`] with adjacency indices in both directions.
//! All listings are ascending by element id (bytewise).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::diagnostic::{codes, Diagnostic, Severity, SourceLocation};
use crate::error::{Error, Result};
use crate::metamodel::{allowed_link, ElementKind, Layer, LinkKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub id: String,
    pub kind: ElementKind,
    pub name: String,
    pub attributes: BTreeMap<String, String>,
    /// Only meaningful for business operations.
    pub automated: bool,
    pub location: SourceLocation,
}

impl Element {
    pub fn new(id: impl Into<String>, kind: ElementKind, name: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind,
            name: name.into(),
            attributes: BTreeMap::new(),
            automated: false,
            location: SourceLocation::synthetic(),
        }
    }

    pub fn with_attr(mut self, key: &str, value: impl Into<String>) -> Self {
        self.attributes.insert(key.to_string(), value.into());
        self
    }

    pub fn automated(mut self, flag: bool) -> Self {
        self.automated = flag;
        self
    }

    pub fn at(mut self, location: SourceLocation) -> Self {
        self.location = location;
        self
    }

    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attributes.get(key).map(String::as_str)
    }

    pub fn layer(&self) -> Layer {
        self.kind.layer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub kind: LinkKind,
    pub src: String,
    pub dst: String,
    pub location: SourceLocation,
}

impl Link {
    pub fn new(kind: LinkKind, src: impl Into<String>, dst: impl Into<String>) -> Self {
        Self {
            kind,
            src: src.into(),
            dst: dst.into(),
            location: SourceLocation::synthetic(),
        }
    }

    pub fn at(mut self, location: SourceLocation) -> Self {
        self.location = location;
        self
    }

    pub fn key(&self) -> (LinkKind, &str, &str) {
        (self.kind, &self.src, &self.dst)
    }
}

/// Result of a successful [`ModelBuilder::add_link`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkOutcome {
    Added,
    /// The triple was already present; carries an I-DUP-LINK note.
    Duplicate(Diagnostic),
}

#[derive(Debug, Default)]
pub struct ModelBuilder {
    elements: BTreeMap<String, Element>,
    links: Vec<Link>,
    seen: HashSet<(LinkKind, String, String)>,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.elements.contains_key(id)
    }

    pub fn element(&self, id: &str) -> Option<&Element> {
        self.elements.get(id)
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn add_element(&mut self, element: Element) -> Result<(), Diagnostic> {
        if let Some(first) = self.elements.get(&element.id) {
            return Err(Diagnostic::error(
                codes::E_ID_DUP,
                format!("duplicate id `{}` (first defined at {})", element.id, first.location),
            )
            .with_subject(element.id.clone())
            .at(element.location));
        }
        self.elements.insert(element.id.clone(), element);
        Ok(())
    }

    pub fn add_link(&mut self, link: Link) -> Result<LinkOutcome, Diagnostic> {
        let (src, dst) = match (self.elements.get(&link.src), self.elements.get(&link.dst)) {
            (Some(s), Some(d)) => (s, d),
            (s, _) => {
                let missing = if s.is_none() { &link.src } else { &link.dst };
                return Err(Diagnostic::error(
                    codes::E_REF_UNRES,
                    format!("unresolved reference `{missing}` in {} link", link.kind),
                )
                .with_subject(missing.clone())
                .at(link.location));
            }
        };
        if !allowed_link(src.kind, link.kind, dst.kind) {
            return Err(Diagnostic::error(
                codes::E_LINK_META,
                format!(
                    "{} cannot link {} `{}` to {} `{}`",
                    link.kind, src.kind, src.id, dst.kind, dst.id
                ),
            )
            .with_subjects([link.src.clone(), link.dst.clone()])
            .at(link.location));
        }
        let key = (link.kind, link.src.clone(), link.dst.clone());
        if !self.seen.insert(key) {
            return Ok(LinkOutcome::Duplicate(
                Diagnostic::new(
                    codes::I_DUP_LINK,
                    Severity::Info,
                    format!("duplicate {} link {} -> {}", link.kind, link.src, link.dst),
                )
                .with_subjects([link.src.clone(), link.dst.clone()])
                .at(link.location),
            ));
        }
        self.links.push(link);
        Ok(LinkOutcome::Added)
    }

    pub fn freeze(self) -> ArchitectureModel {
        let mut out_index: BTreeMap<String, BTreeMap<LinkKind, BTreeSet<String>>> = BTreeMap::new();
        let mut in_index: BTreeMap<String, BTreeMap<LinkKind, BTreeSet<String>>> = BTreeMap::new();
        for link in &self.links {
            out_index
                .entry(link.src.clone())
                .or_default()
                .entry(link.kind)
                .or_default()
                .insert(link.dst.clone());
            in_index
                .entry(link.dst.clone())
                .or_default()
                .entry(link.kind)
                .or_default()
                .insert(link.src.clone());
        }
        let link_index = self
            .links
            .iter()
            .enumerate()
            .map(|(i, l)| ((l.kind, l.src.clone(), l.dst.clone()), i))
            .collect();
        ArchitectureModel {
            elements: self.elements,
            links: self.links,
            out_index,
            in_index,
            link_index,
        }
    }
}

type Adjacency = BTreeMap<String, BTreeMap<LinkKind, BTreeSet<String>>>;

/// Frozen, indexed model. Cloning is cheap enough for tests; analyses borrow.
#[derive(Debug, Clone, Default)]
pub struct ArchitectureModel {
    elements: BTreeMap<String, Element>,
    links: Vec<Link>,
    out_index: Adjacency,
    in_index: Adjacency,
    link_index: HashMap<(LinkKind, String, String), usize>,
}

impl ArchitectureModel {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn element(&self, id: &str) -> Option<&Element> {
        self.elements.get(id)
    }

    pub fn kind_of(&self, id: &str) -> Option<ElementKind> {
        self.elements.get(id).map(|e| e.kind)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.elements.contains_key(id)
    }

    /// Elements ascending by id.
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.elements.values()
    }

    /// Links in insertion order.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn link(&self, kind: LinkKind, src: &str, dst: &str) -> Option<&Link> {
        self.link_index
            .get(&(kind, src.to_string(), dst.to_string()))
            .map(|&i| &self.links[i])
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn require(&self, id: &str) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownId(id.to_string()))
        }
    }

    pub fn out_neighbors(&self, id: &str, kind: Option<LinkKind>) -> Result<Vec<&str>> {
        self.require(id)?;
        Ok(Self::neighbors(&self.out_index, id, kind))
    }

    pub fn in_neighbors(&self, id: &str, kind: Option<LinkKind>) -> Result<Vec<&str>> {
        self.require(id)?;
        Ok(Self::neighbors(&self.in_index, id, kind))
    }

    fn neighbors<'a>(index: &'a Adjacency, id: &str, kind: Option<LinkKind>) -> Vec<&'a str> {
        let Some(by_kind) = index.get(id) else {
            return Vec::new();
        };
        match kind {
            Some(k) => by_kind
                .get(&k)
                .map(|s| s.iter().map(String::as_str).collect())
                .unwrap_or_default(),
            None => by_kind
                .values()
                .flatten()
                .map(String::as_str)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }

    /// Out-neighbors through one link kind; empty for unknown ids.
    pub(crate) fn out_of(&self, id: &str, kind: LinkKind) -> impl Iterator<Item = &str> {
        self.out_index
            .get(id)
            .and_then(|m| m.get(&kind))
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    pub(crate) fn in_of(&self, id: &str, kind: LinkKind) -> impl Iterator<Item = &str> {
        self.in_index
            .get(id)
            .and_then(|m| m.get(&kind))
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    pub(crate) fn out_degree(&self, id: &str, kind: LinkKind) -> usize {
        self.out_of(id, kind).count()
    }

    pub(crate) fn in_degree(&self, id: &str, kind: LinkKind) -> usize {
        self.in_of(id, kind).count()
    }

    pub fn elements_of_kind(&self, kind: ElementKind) -> Vec<&str> {
        self.elements
            .values()
            .filter(|e| e.kind == kind)
            .map(|e| e.id.as_str())
            .collect()
    }

    /// Link triples sorted by `(kind, src, dst)`.
    pub fn sorted_links(&self) -> Vec<&Link> {
        let mut links: Vec<&Link> = self.links.iter().collect();
        links.sort_by(|a, b| a.key().cmp(&b.key()));
        links
    }

    /// Same elements (ignoring locations) and same link set.
    pub fn structurally_eq(&self, other: &ArchitectureModel) -> bool {
        self.structural_difference(other).is_none()
    }

    /// First structural difference found, for test failure messages.
    pub fn structural_difference(&self, other: &ArchitectureModel) -> Option<String> {
        if self.elements.len() != other.elements.len() {
            return Some(format!(
                "element count {} vs {}",
                self.elements.len(),
                other.elements.len()
            ));
        }
        for (a, b) in self.elements.values().zip(other.elements.values()) {
            if a.id != b.id
                || a.kind != b.kind
                || a.name != b.name
                || a.attributes != b.attributes
                || a.automated != b.automated
            {
                return Some(format!("element {a:?} vs {b:?}"));
            }
        }
        let mine: Vec<_> = self.sorted_links().into_iter().map(Link::key).collect();
        let theirs: Vec<_> = other.sorted_links().into_iter().map(Link::key).collect();
        if mine != theirs {
            let missing: Vec<_> = mine.iter().filter(|k| !theirs.contains(k)).collect();
            let extra: Vec<_> = theirs.iter().filter(|k| !mine.contains(k)).collect();
            return Some(format!("links differ: missing {missing:?}, extra {extra:?}"));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ElementKind::*;

    fn builder_with(elements: &[(&str, ElementKind)]) -> ModelBuilder {
        let mut b = ModelBuilder::new();
        for (id, kind) in elements {
            b.add_element(Element::new(*id, *kind, *id)).unwrap();
        }
        b
    }

    #[test]
    fn add_element_and_duplicate() {
        let mut b = ModelBuilder::new();
        b.add_element(Element::new("P1", BusinessProcess, "X")).unwrap();
        assert_eq!(b.element_count(), 1);
        let err = b.add_element(Element::new("P1", BusinessProcess, "Y")).unwrap_err();
        assert_eq!(err.code, codes::E_ID_DUP);
        assert_eq!(b.element_count(), 1);
        assert_eq!(b.element("P1").unwrap().name, "X");
    }

    #[test]
    fn add_link_checks() {
        let mut b = builder_with(&[
            ("P1", BusinessProcess),
            ("F1", BusinessFunction),
            ("N1", HardwareNode),
            ("MM1", ClassMethod),
            ("VF2", ViewFunction),
        ]);
        assert_eq!(
            b.add_link(Link::new(LinkKind::Decomposes, "P1", "F1")),
            Ok(LinkOutcome::Added)
        );
        let meta = b.add_link(Link::new(LinkKind::Deploys, "N1", "MM1")).unwrap_err();
        assert_eq!(meta.code, codes::E_LINK_META);
        let unres = b.add_link(Link::new(LinkKind::VfModule, "VF2", "M9")).unwrap_err();
        assert_eq!(unres.code, codes::E_REF_UNRES);
        assert_eq!(unres.subjects, vec!["M9"]);
        match b.add_link(Link::new(LinkKind::Decomposes, "P1", "F1")) {
            Ok(LinkOutcome::Duplicate(d)) => {
                assert_eq!(d.code, codes::I_DUP_LINK);
                assert_eq!(d.severity, Severity::Info);
            }
            other => panic!("expected duplicate, got {other:?}"),
        }
        assert_eq!(b.link_count(), 1);
    }

    #[test]
    fn neighbors_and_kinds() {
        let mut b = builder_with(&[
            ("VF2", ViewFunction),
            ("M2", SoftwareModule),
            ("M1", SoftwareModule),
            ("C1", FunctionalComponent),
        ]);
        b.add_link(Link::new(LinkKind::VfModule, "VF2", "M2")).unwrap();
        b.add_link(Link::new(LinkKind::VfModule, "VF2", "M1")).unwrap();
        b.add_link(Link::new(LinkKind::OwnsModule, "C1", "M1")).unwrap();
        let m = b.freeze();
        assert_eq!(m.out_neighbors("VF2", Some(LinkKind::VfModule)).unwrap(), ["M1", "M2"]);
        assert_eq!(m.in_neighbors("M1", None).unwrap(), ["C1", "VF2"]);
        assert!(m.in_neighbors("VF2", None).unwrap().is_empty());
        assert!(matches!(m.out_neighbors("X", None), Err(Error::UnknownId(_))));
        assert_eq!(m.elements_of_kind(SoftwareModule), ["M1", "M2"]);
        assert!(ArchitectureModel::empty().elements_of_kind(Dialog).is_empty());
    }

    #[test]
    fn structural_equality_ignores_locations() {
        let mut a = ModelBuilder::new();
        a.add_element(Element::new("P1", BusinessProcess, "X").at(SourceLocation::new("a", 3, 4)))
            .unwrap();
        let mut b = ModelBuilder::new();
        b.add_element(Element::new("P1", BusinessProcess, "X")).unwrap();
        assert!(a.freeze().structurally_eq(&b.freeze()));
    }
}
