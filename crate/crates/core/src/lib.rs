//! Layered enterprise architecture models: a textual description language,
//! an indexed model store, seam-aware validation, cross-layer tracing and
//! exporters.
//!
//! ```
//! use archseam_core::{adl, validate, RuleConfig};
//!
//! let loaded = adl::load(b"process \"Sell\" as P1 { function \"Order\" as F1 { operation \"Take\" as O1 {} } }", "demo.adl");
//! assert!(loaded.diagnostics.is_empty());
//! assert!(validate(&loaded.model, &RuleConfig::default()).is_empty());
//! ```

pub mod adl;
mod coverage;
pub mod diagnostic;
pub mod error;
pub mod export;
pub mod metamodel;
pub mod model;
pub mod synth;
pub mod tracer;
pub mod validator;

pub use diagnostic::{has_errors, Diagnostic, Severity, SourceLocation};
pub use error::{Error, Result};
pub use metamodel::{allowed_link, layer_of, seam, seam_catalog, ElementKind, Layer, LinkKind, Seam, ViewFnCategory};
pub use model::{ArchitectureModel, Element, Link, LinkOutcome, ModelBuilder};
pub use tracer::{
    coverage, impact, trace, trace_matrix, CoverageReport, Direction, LinkSet, SeamCoverage, TraceOptions, TraceResult,
};
pub use validator::{gap_report, rule_catalog, validate, GapReport, RuleConfig, SeamGap};
