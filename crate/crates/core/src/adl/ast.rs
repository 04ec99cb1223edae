//! Syntax tree for ADL documents. Comments are dropped; declaration order is
//! kept.

use crate::diagnostic::SourceLocation;
use crate::metamodel::ViewFnCategory;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub location: SourceLocation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ModelAst {
    pub items: Vec<TopLevel>,
}

impl ModelAst {
    pub fn processes(&self) -> impl Iterator<Item = &ProcessDecl> {
        self.items.iter().filter_map(|i| match i {
            TopLevel::Process(p) => Some(p),
            _ => None,
        })
    }

    pub fn binds(&self) -> impl Iterator<Item = &BindDecl> {
        self.items.iter().filter_map(|i| match i {
            TopLevel::Bind(b) => Some(b),
            _ => None,
        })
    }

    /// Number of items with the given top-level keyword.
    pub fn count_keyword(&self, keyword: &str) -> usize {
        self.items.iter().filter(|i| i.keyword() == keyword).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopLevel {
    Process(ProcessDecl),
    Dialog(DialogDecl),
    Component(ComponentDecl),
    Class(ClassDecl),
    Node(NodeDecl),
    Bind(BindDecl),
}

impl TopLevel {
    pub fn keyword(&self) -> &'static str {
        match self {
            TopLevel::Process(_) => "process",
            TopLevel::Dialog(_) => "dialog",
            TopLevel::Component(c) if c.external => "external_system",
            TopLevel::Component(_) => "component",
            TopLevel::Class(_) => "class",
            TopLevel::Node(_) => "node",
            TopLevel::Bind(_) => "bind",
        }
    }
}

/// `<keyword> "<name>" as <ID>` entry without a body of its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub id: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessDecl {
    pub name: String,
    pub id: Ident,
    pub functions: Vec<FunctionDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: String,
    pub id: Ident,
    pub children: Vec<FunctionChild>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionChild {
    Function(FunctionDecl),
    Operation(OperationDecl),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationDecl {
    pub name: String,
    pub id: Ident,
    pub automated: bool,
    pub performer: Option<String>,
    pub service: Option<ServiceDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceDecl {
    pub name: Option<String>,
    pub id: Ident,
    pub auto_fns: Vec<Entry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agent {
    User,
    System,
    External,
}

impl Agent {
    pub fn token(self) -> &'static str {
        match self {
            Agent::User => "user",
            Agent::System => "system",
            Agent::External => "external",
        }
    }

    pub fn from_token(s: &str) -> Option<Agent> {
        match s {
            "user" => Some(Agent::User),
            "system" => Some(Agent::System),
            "external" => Some(Agent::External),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialogDecl {
    pub name: String,
    pub id: Ident,
    pub items: Vec<DialogItem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfoRef {
    /// `resource "<name>" as <ID>` / `product "<name>" as <ID>`
    Define(Entry),
    /// Bare `<ID>` naming an information object defined elsewhere.
    Reference(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DialogItem {
    Implements(Vec<Ident>),
    Agent(Agent, SourceLocation),
    Input(InfoRef),
    Output(InfoRef),
    Form {
        text: String,
        id: Option<Ident>,
        location: SourceLocation,
    },
    ViewFn {
        entry: Entry,
        category: ViewFnCategory,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecl {
    pub external: bool,
    pub name: String,
    pub id: Ident,
    pub modules: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: String,
    pub id: Ident,
    pub hosted_by: Option<Ident>,
    pub methods: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeDecl {
    pub name: String,
    pub id: Ident,
    pub requirements: Option<String>,
    pub deploys: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindDecl {
    pub from: Ident,
    pub to: Vec<Ident>,
    pub location: SourceLocation,
}
