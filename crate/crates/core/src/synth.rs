//! Seeded generator of random layered models.
//!
//! Generated models respect the relation table and only use structure the
//! ADL can express (nesting trees, single class host, `bind` for m:n seams),
//! so they survive a text round trip. `defect_rate` is the probability of
//! each injected omission (missing service, unbound view function,
//! undeployed component, ...); with 0.0 the model validates cleanly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adl::{synthesized_form_id, ATTR_AGENT, ATTR_CATEGORY, ATTR_PERFORMER, ATTR_REQUIREMENTS};
use crate::metamodel::{ElementKind, LinkKind, ViewFnCategory};
use crate::model::{ArchitectureModel, Element, Link, ModelBuilder};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    /// Approximate element count; generation stops once it is reached.
    pub target_elements: usize,
    pub defect_rate: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            target_elements: 60,
            defect_rate: 0.0,
        }
    }
}

/// Below this target only a business decomposition is generated.
const BUSINESS_ONLY_BELOW: usize = 36;

/// Most elements one slice step can add after the budget check passes,
/// plus the nodes added at the end.
const OVERSHOOT: usize = 20;

struct Gen {
    rng: ChaCha8Rng,
    b: ModelBuilder,
    defect_rate: f64,
    budget: usize,
    counters: std::collections::HashMap<&'static str, usize>,
    components: Vec<String>,
    externals: Vec<String>,
    modules: Vec<String>,
    classes: Vec<String>,
    methods: Vec<String>,
    infos: Vec<String>,
}

impl Gen {
    fn next_id(&mut self, prefix: &'static str) -> String {
        let n = self.counters.entry(prefix).or_insert(0);
        *n += 1;
        format!("{prefix}{n}")
    }

    fn defect(&mut self) -> bool {
        self.defect_rate > 0.0 && self.rng.gen_bool(self.defect_rate)
    }

    fn name(&mut self, what: &str, id: &str) -> String {
        if self.rng.gen_ratio(1, 12) {
            format!("{what} \"{id}\"")
        } else {
            format!("{what} {id}")
        }
    }

    fn add(&mut self, prefix: &'static str, kind: ElementKind, what: &str) -> String {
        let id = self.next_id(prefix);
        let name = self.name(what, &id);
        self.b
            .add_element(Element::new(id.clone(), kind, name))
            .expect("fresh id");
        id
    }

    fn add_element(&mut self, element: Element) {
        self.b.add_element(element).expect("fresh id");
    }

    fn link(&mut self, kind: LinkKind, src: &str, dst: &str) {
        self.b
            .add_link(Link::new(kind, src, dst))
            .expect("generator only emits legal links");
    }

    fn count(&self) -> usize {
        self.b.element_count()
    }

    fn full(&self) -> bool {
        self.count() >= self.budget
    }

    fn business_only(&mut self, target: usize) {
        let p = self.add("P", ElementKind::BusinessProcess, "Process");
        let f = self.add("F", ElementKind::BusinessFunction, "Function");
        self.link(LinkKind::Decomposes, &p, &f);
        let mut parent = f;
        while self.count() < target {
            if self.count() + 2 <= target && self.rng.gen_ratio(1, 4) {
                let sub = self.add("F", ElementKind::BusinessFunction, "Function");
                self.link(LinkKind::Decomposes, &parent, &sub);
                parent = sub;
            }
            let o = self.add("O", ElementKind::BusinessOperation, "Operation");
            self.link(LinkKind::Decomposes, &parent, &o);
        }
    }

    fn infrastructure(&mut self) {
        for _ in 0..self.rng.gen_range(1..=3) {
            let c = self.add("C", ElementKind::FunctionalComponent, "Component");
            self.components.push(c);
        }
        if self.rng.gen_bool(0.4) {
            let e = self.add("E", ElementKind::ExternalSystem, "External");
            self.externals.push(e);
        }
        for _ in 0..self.rng.gen_range(1..=2) {
            self.new_class();
        }
    }

    fn new_class(&mut self) -> String {
        let k = self.add("K", ElementKind::EntityClass, "Class");
        let host = self.components.choose(&mut self.rng).cloned();
        if let Some(host) = host {
            self.link(LinkKind::HostsClass, &host, &k);
        }
        self.classes.push(k.clone());
        k
    }

    fn new_method(&mut self) -> String {
        let class = if self.classes.is_empty() || (!self.full() && self.rng.gen_ratio(1, 6)) {
            self.new_class()
        } else {
            self.classes.choose(&mut self.rng).cloned().expect("non-empty")
        };
        let mm = self.add("MM", ElementKind::ClassMethod, "method");
        self.link(LinkKind::OwnsMethod, &class, &mm);
        self.methods.push(mm.clone());
        mm
    }

    fn new_module(&mut self) -> String {
        let external = !self.externals.is_empty() && self.rng.gen_ratio(1, 5);
        let owner = if external {
            self.externals.choose(&mut self.rng)
        } else {
            self.components.choose(&mut self.rng)
        }
        .cloned()
        .expect("infrastructure exists");
        let m = self.add("M", ElementKind::SoftwareModule, "module");
        self.link(LinkKind::OwnsModule, &owner, &m);
        // External systems model their interface methods too.
        if external || !self.defect() {
            for i in 0..self.rng.gen_range(1..=2) {
                if i > 0 && self.full() {
                    break;
                }
                let mm = if !self.methods.is_empty() && (self.full() || self.rng.gen_bool(0.4)) {
                    self.methods.choose(&mut self.rng).cloned().expect("non-empty")
                } else {
                    self.new_method()
                };
                if self.b.element(&mm).is_some() {
                    let _ = self.b.add_link(Link::new(LinkKind::ModMethod, &m, &mm));
                }
            }
        }
        self.modules.push(m.clone());
        m
    }

    fn dialog(&mut self, service: &str, auto_fns: &[String]) {
        let d = self.next_id("D");
        let name = self.name("Dialog", &d);
        let agent = ["user", "user", "system", "external"]
            .choose(&mut self.rng)
            .copied()
            .expect("non-empty");
        self.add_element(Element::new(d.clone(), ElementKind::Dialog, name).with_attr(ATTR_AGENT, agent));

        if !self.defect() {
            let mode = self.rng.gen_range(0..3);
            if mode != 1 || auto_fns.is_empty() {
                self.link(LinkKind::SvcDialog, service, &d);
            }
            if mode != 0 {
                for af in auto_fns {
                    self.link(LinkKind::Implements, af, &d);
                }
            }
        }

        if !self.infos.is_empty() && self.rng.gen_bool(0.3) {
            let r = self.infos.choose(&mut self.rng).cloned().expect("non-empty");
            self.link(LinkKind::Input, &d, &r);
        } else {
            let r = self.add("R", ElementKind::InformationObject, "resource");
            self.link(LinkKind::Input, &d, &r);
            self.infos.push(r);
        }
        if !self.defect() {
            let r = self.add("R", ElementKind::InformationObject, "product");
            self.link(LinkKind::Output, &d, &r);
            self.infos.push(r);
        }
        if agent == "user" && !self.defect() {
            let f = synthesized_form_id(&d, 0);
            self.add_element(Element::new(f.clone(), ElementKind::DialogForm, format!("form of {d}")));
            self.link(LinkKind::HasForm, &d, &f);
        }

        for i in 0..self.rng.gen_range(1..=3) {
            if i > 0 && self.full() {
                break;
            }
            let vf = self.next_id("VF");
            let category = *ViewFnCategory::ALL.choose(&mut self.rng).expect("non-empty");
            let name = self.name("view", &vf);
            self.add_element(
                Element::new(vf.clone(), ElementKind::ViewFunction, name).with_attr(ATTR_CATEGORY, category.token()),
            );
            self.link(LinkKind::HasViewfn, &d, &vf);
            if self.defect() {
                continue;
            }
            for j in 0..self.rng.gen_range(1..=2) {
                if j > 0 && self.full() {
                    break;
                }
                let m = if !self.modules.is_empty() && (self.full() || self.rng.gen_bool(0.35)) {
                    self.modules.choose(&mut self.rng).cloned().expect("non-empty")
                } else {
                    self.new_module()
                };
                let _ = self.b.add_link(Link::new(LinkKind::VfModule, &vf, &m));
            }
        }
    }

    fn operation(&mut self, parent: &str) {
        let o = self.next_id("O");
        let automated = self.rng.gen_bool(0.7);
        let name = self.name("Operation", &o);
        let mut element = Element::new(o.clone(), ElementKind::BusinessOperation, name).automated(automated);
        if self.rng.gen_bool(0.5) {
            element = element.with_attr(ATTR_PERFORMER, "Clerk");
        }
        self.add_element(element);
        self.link(LinkKind::Decomposes, parent, &o);
        if !automated || self.defect() {
            return;
        }
        let s = self.add("S", ElementKind::OperationalService, "");
        self.link(LinkKind::HasService, &o, &s);
        let mut fns = Vec::new();
        if !self.defect() {
            for _ in 0..self.rng.gen_range(1..=2) {
                let a = self.add("A", ElementKind::AutomatedFunction, "auto fn");
                self.link(LinkKind::ContainsAutofn, &s, &a);
                fns.push(a);
            }
        }
        for i in 0..self.rng.gen_range(1..=2) {
            if i > 0 && self.full() {
                break;
            }
            self.dialog(&s, &fns);
        }
    }

    fn slice(&mut self) {
        let p = self.add("P", ElementKind::BusinessProcess, "Process");
        for i in 0..self.rng.gen_range(1..=2) {
            if i > 0 && self.full() {
                break;
            }
            let f = self.add("F", ElementKind::BusinessFunction, "Function");
            self.link(LinkKind::Decomposes, &p, &f);
            let parent = if self.rng.gen_ratio(1, 3) {
                let sub = self.add("F", ElementKind::BusinessFunction, "Function");
                self.link(LinkKind::Decomposes, &f, &sub);
                sub
            } else {
                f
            };
            self.operation(&parent);
            while !self.full() && self.rng.gen_bool(0.3) {
                self.operation(&parent);
            }
        }
    }

    fn deploy(&mut self) {
        let mut nodes = Vec::new();
        for _ in 0..self.rng.gen_range(1..=2) {
            let n = self.next_id("N");
            let name = self.name("Node", &n);
            let mut e = Element::new(n.clone(), ElementKind::HardwareNode, name);
            if self.rng.gen_bool(0.6) {
                e = e.with_attr(ATTR_REQUIREMENTS, "8GB RAM");
            }
            self.add_element(e);
            nodes.push(n);
        }
        let targets: Vec<String> = self.components.iter().chain(&self.externals).cloned().collect();
        for c in targets {
            if self.defect() {
                continue;
            }
            let node = nodes.choose(&mut self.rng).cloned().expect("non-empty");
            self.link(LinkKind::Deploys, &node, &c);
            if self.rng.gen_ratio(1, 8) {
                let other = nodes.choose(&mut self.rng).cloned().expect("non-empty");
                let _ = self.b.add_link(Link::new(LinkKind::Deploys, &other, &c));
            }
        }
    }
}

/// Generates a model from `seed`. Identical arguments give identical models.
/// The element count never exceeds `target_elements` (nor drops below 5).
pub fn generate(seed: u64, config: &SynthConfig) -> ArchitectureModel {
    let target = config.target_elements.max(5);
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        b: ModelBuilder::new(),
        defect_rate: config.defect_rate.clamp(0.0, 1.0),
        budget: target.saturating_sub(OVERSHOOT),
        counters: Default::default(),
        components: Vec::new(),
        externals: Vec::new(),
        modules: Vec::new(),
        classes: Vec::new(),
        methods: Vec::new(),
        infos: Vec::new(),
    };
    if target < BUSINESS_ONLY_BELOW {
        g.business_only(target);
        return g.b.freeze();
    }
    g.infrastructure();
    while !g.full() {
        g.slice();
    }
    g.deploy();
    g.b.freeze()
}
