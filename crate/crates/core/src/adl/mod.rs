//! The textual architecture description language.
//!
//! ```text
//! process "Order Fulfillment" as P1 {
//!   function "Accept Order" as F1 {
//!     operation "Register Order" as O1 automated {
//!       performer "Sales Clerk"
//!       service as S1 { auto_fn "Create order record" as A1 }
//!     }
//!   }
//! }
//! dialog "Order Entry" as D1 {
//!   implements S1
//!   agent user
//!   view_fn "Enter order lines" as VF1 category io
//! }
//! component "Ordering" as C1 { module "OrderService.create" as M1 }
//! bind VF1 -> M1
//! ```

pub mod ast;
mod lexer;
mod lower;
mod parser;
mod serialize;

pub use ast::ModelAst;
pub use lower::{lower, synthesized_form_id, ATTR_AGENT, ATTR_CATEGORY, ATTR_PERFORMER, ATTR_REQUIREMENTS};
pub use parser::{parse, parse_bytes};
pub use serialize::serialize;

pub(crate) use lexer::is_identifier;

use crate::diagnostic::{codes, Diagnostic};
use crate::model::ArchitectureModel;

/// Output of [`load`]: the model plus every parse and lowering diagnostic,
/// in that order.
#[derive(Debug)]
pub struct Loaded {
    pub ast: ModelAst,
    pub model: ArchitectureModel,
    pub diagnostics: Vec<Diagnostic>,
}

impl Loaded {
    /// True when the input was not UTF-8 and nothing could be parsed.
    pub fn encoding_failed(&self) -> bool {
        self.diagnostics.iter().any(|d| d.code == codes::E_ENCODING)
    }
}

/// Parses and lowers a document in one step.
pub fn load(bytes: &[u8], source_name: &str) -> Loaded {
    let (ast, mut diagnostics) = parse_bytes(bytes, source_name);
    let (model, lowering) = lower(&ast);
    diagnostics.extend(lowering);
    Loaded {
        ast,
        model,
        diagnostics,
    }
}
