use std::fmt::Write;

use super::RenderFormat;
use crate::diagnostic::Diagnostic;

/// Renders diagnostics as text lines or a JSON array, keeping input order.
///
/// Text lines look like `error R-VF-NOMOD VF1: message [file:line:col]`.
/// Formats other than text and json fall back to text.
pub fn render_diagnostics(diags: &[Diagnostic], format: RenderFormat) -> String {
    match format {
        RenderFormat::Json => serde_json::to_string(diags).expect("diagnostics serialize"),
        _ => {
            let mut out = String::new();
            for d in diags {
                let _ = write!(out, "{} {}", d.severity, d.code);
                if !d.subjects.is_empty() {
                    let _ = write!(out, " {}", d.subjects.join(","));
                }
                let _ = write!(out, ": {}", d.message);
                if let Some(loc) = &d.location {
                    let _ = write!(out, " [{loc}]");
                }
                out.push('\n');
            }
            out
        }
    }
}
