//! Renderers: diagnostics, DOT, PlantUML deployment, Markdown document and
//! the JSON interchange format. All output is deterministic.

mod archdoc;
mod diagnostics;
mod dot;
mod json;
mod plantuml;

use std::fmt;
use std::str::FromStr;

pub use archdoc::render_archdoc;
pub use diagnostics::render_diagnostics;
pub use dot::{export_dot, trace_to_dot, DotScope};
pub use json::{model_from_json, model_to_json};
pub use plantuml::export_plantuml_deployment;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Json,
    Dot,
    PlantUml,
    Markdown,
}

impl RenderFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            RenderFormat::Text => "text",
            RenderFormat::Json => "json",
            RenderFormat::Dot => "dot",
            RenderFormat::PlantUml => "plantuml",
            RenderFormat::Markdown => "markdown",
        }
    }
}

impl fmt::Display for RenderFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        [
            RenderFormat::Text,
            RenderFormat::Json,
            RenderFormat::Dot,
            RenderFormat::PlantUml,
            RenderFormat::Markdown,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| Error::UnknownToken {
            what: "format",
            token: s.to_string(),
        })
    }
}
