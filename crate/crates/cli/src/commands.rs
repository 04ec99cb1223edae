use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use archseam_core::adl::{self, Loaded};
use archseam_core::export::{
    export_dot, export_plantuml_deployment, model_to_json, render_archdoc, render_diagnostics, trace_to_dot,
    RenderFormat,
};
use archseam_core::{
    coverage, gap_report, has_errors, impact, trace, trace_matrix, validate, CoverageReport, Diagnostic, LinkSet,
    RuleConfig, TraceOptions,
};
use serde_json::json;

use crate::{Command, ExportFormat, ReportFormat, TraceFormat};

pub struct Outcome {
    pub stdout: String,
    /// Non-fatal notes about the input, shown on the error stream.
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String, stderr: String) -> Self {
        Self {
            stdout,
            stderr,
            code: 0,
        }
    }
}

/// Anything that ends the run with exit code 2.
pub struct Fatal {
    pub message: String,
    /// Diagnostics that explain the failure, already rendered.
    pub details: String,
}

impl Fatal {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            details: String::new(),
        }
    }
}

impl From<archseam_core::Error> for Fatal {
    fn from(e: archseam_core::Error) -> Self {
        Fatal::new(e.to_string())
    }
}

fn render_format(f: ReportFormat) -> RenderFormat {
    match f {
        ReportFormat::Text => RenderFormat::Text,
        ReportFormat::Json => RenderFormat::Json,
    }
}

fn read(path: &Path) -> Result<Loaded, Fatal> {
    let bytes = fs::read(path).map_err(|e| Fatal::new(format!("cannot read {}: {e}", path.display())))?;
    let loaded = adl::load(&bytes, &path.display().to_string());
    if loaded.encoding_failed() {
        return Err(Fatal {
            message: format!("{} is not valid UTF-8", path.display()),
            details: render_diagnostics(&loaded.diagnostics, RenderFormat::Text),
        });
    }
    Ok(loaded)
}

/// Loads a model that analyses can trust: any error diagnostic is fatal,
/// lesser ones are passed on for the error stream.
fn read_clean(path: &Path) -> Result<(Loaded, String), Fatal> {
    let loaded = read(path)?;
    let notes = render_diagnostics(&loaded.diagnostics, RenderFormat::Text);
    if has_errors(&loaded.diagnostics) {
        return Err(Fatal {
            message: format!("{} has errors; run `archseam check` for details", path.display()),
            details: notes,
        });
    }
    Ok((loaded, notes))
}

fn rule_config(path: Option<&Path>) -> Result<RuleConfig, Fatal> {
    match path {
        Some(p) => RuleConfig::load(p).map_err(Fatal::from),
        None => Ok(RuleConfig::default()),
    }
}

fn options(extended: bool, depth: Option<usize>) -> TraceOptions {
    TraceOptions {
        links: if extended { LinkSet::Extended } else { LinkSet::Default },
        depth,
    }
}

fn exit_for(diags: &[Diagnostic]) -> u8 {
    u8::from(has_errors(diags))
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json values serialize")
}

fn coverage_text(report: &CoverageReport) -> String {
    let mut out = String::new();
    for s in &report.seams {
        let _ = write!(
            out,
            "seam {} {}: {}/{} realized ({:.3})",
            s.seam.index,
            s.seam.name,
            s.realized,
            s.total,
            s.ratio()
        );
        if !s.unrealized.is_empty() {
            let _ = write!(out, " missing {}", s.unrealized.join(","));
        }
        out.push('\n');
    }
    out
}

fn coverage_json(report: &CoverageReport) -> serde_json::Value {
    json!(report
        .seams
        .iter()
        .map(|s| json!({
            "seam": s.seam.index,
            "name": s.seam.name,
            "realized": s.realized,
            "total": s.total,
            "coverage": s.ratio(),
            "unrealized": s.unrealized,
        }))
        .collect::<Vec<_>>())
}

pub fn run(command: &Command) -> Result<Outcome, Fatal> {
    match command {
        Command::Check { input, report } => {
            let loaded = read(&input.file)?;
            Ok(Outcome {
                stdout: render_diagnostics(&loaded.diagnostics, render_format(report.format)),
                stderr: String::new(),
                code: exit_for(&loaded.diagnostics),
            })
        }
        Command::Validate { input, rules, report } => {
            let config = rule_config(rules.as_deref())?;
            let loaded = read(&input.file)?;
            let mut diags = loaded.diagnostics;
            diags.extend(validate(&loaded.model, &config));
            Ok(Outcome {
                stdout: render_diagnostics(&diags, render_format(report.format)),
                stderr: String::new(),
                code: exit_for(&diags),
            })
        }
        Command::Gaps { input, rules, report } => {
            let config = rule_config(rules.as_deref())?;
            let loaded = read(&input.file)?;
            let gaps = gap_report(&loaded.model, &config);
            let load_failed = has_errors(&loaded.diagnostics);
            let stdout = match report.format {
                ReportFormat::Text => {
                    let mut out = String::new();
                    for g in &gaps.seams {
                        let _ = writeln!(
                            out,
                            "seam {} {}: {}/{} realized ({:.3})",
                            g.seam.index,
                            g.seam.name,
                            g.realized,
                            g.total,
                            g.coverage()
                        );
                        for line in render_diagnostics(&g.diagnostics, RenderFormat::Text).lines() {
                            let _ = writeln!(out, "  {line}");
                        }
                    }
                    out
                }
                ReportFormat::Json => pretty(&json!(gaps
                    .seams
                    .iter()
                    .map(|g| json!({
                        "seam": g.seam.index,
                        "name": g.seam.name,
                        "gap_rule": g.seam.gap_rule,
                        "realized": g.realized,
                        "total": g.total,
                        "coverage": g.coverage(),
                        "diagnostics": g.diagnostics,
                    }))
                    .collect::<Vec<_>>())),
            };
            Ok(Outcome {
                stdout,
                stderr: render_diagnostics(&loaded.diagnostics, RenderFormat::Text),
                code: u8::from(gaps.has_errors() || load_failed),
            })
        }
        Command::Trace {
            input,
            from,
            direction,
            extended,
            depth,
            format,
        } => {
            let (loaded, notes) = read_clean(&input.file)?;
            let result = trace(&loaded.model, from, *direction, &options(*extended, *depth))?;
            let stdout = match format {
                TraceFormat::Text => {
                    let mut out = format!("trace {} {}\n", result.root, result.direction);
                    for (layer, ids) in &result.reached {
                        let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
                        let _ = writeln!(out, "{layer}: {}", ids.join(" "));
                    }
                    out
                }
                TraceFormat::Json => pretty(&json!({
                    "root": result.root,
                    "direction": result.direction,
                    "reached": result.reached.iter().map(|(l, ids)| (l.as_str(), ids)).collect::<std::collections::BTreeMap<_, _>>(),
                    "edges": result.edges.iter().map(|e| json!({"kind": e.kind, "src": e.src, "dst": e.dst})).collect::<Vec<_>>(),
                })),
                TraceFormat::Dot => trace_to_dot(&loaded.model, &result),
            };
            Ok(Outcome::ok(stdout, notes))
        }
        Command::Impact {
            input,
            on,
            extended,
            report,
        } => {
            let (loaded, notes) = read_clean(&input.file)?;
            let set = impact(&loaded.model, on, &options(*extended, None))?;
            let stdout = match report.format {
                ReportFormat::Text => set
                    .iter()
                    .map(|id| format!("{id} {}\n", loaded.model.kind_of(id).expect("reached ids exist")))
                    .collect(),
                ReportFormat::Json => pretty(&json!({ "on": on, "impacted": set })),
            };
            Ok(Outcome::ok(stdout, notes))
        }
        Command::Matrix {
            input,
            from_kind,
            to_kind,
            extended,
            report,
        } => {
            let (loaded, notes) = read_clean(&input.file)?;
            let pairs = trace_matrix(&loaded.model, *from_kind, *to_kind, &options(*extended, None));
            let stdout = match report.format {
                ReportFormat::Text => pairs.iter().map(|(a, b)| format!("{a} {b}\n")).collect(),
                ReportFormat::Json => pretty(&json!({
                    "from_kind": from_kind.as_str(),
                    "to_kind": to_kind.as_str(),
                    "pairs": pairs,
                })),
            };
            Ok(Outcome::ok(stdout, notes))
        }
        Command::Coverage { input, report } => {
            let (loaded, notes) = read_clean(&input.file)?;
            let cov = coverage(&loaded.model);
            let stdout = match report.format {
                ReportFormat::Text => coverage_text(&cov),
                ReportFormat::Json => pretty(&coverage_json(&cov)),
            };
            Ok(Outcome::ok(stdout, notes))
        }
        Command::Export { input, format, scope } => {
            let (loaded, notes) = read_clean(&input.file)?;
            let stdout = match format {
                ExportFormat::Dot => export_dot(&loaded.model, *scope),
                ExportFormat::Plantuml => export_plantuml_deployment(&loaded.model),
                ExportFormat::Json => model_to_json(&loaded.model),
            };
            Ok(Outcome::ok(stdout, notes))
        }
        Command::Doc { input } => {
            let (loaded, notes) = read_clean(&input.file)?;
            let diags = validate(&loaded.model, &RuleConfig::default());
            Ok(Outcome::ok(render_archdoc(&loaded.model, &diags, &coverage(&loaded.model)), notes))
        }
        Command::Fmt { input } => {
            let (loaded, notes) = read_clean(&input.file)?;
            Ok(Outcome::ok(adl::serialize(&loaded.model), notes))
        }
    }
    .map(|mut outcome| {
        if !outcome.stdout.is_empty() && !outcome.stdout.ends_with('\n') {
            outcome.stdout.push('\n');
        }
        outcome
    })
}

/// Writes the artifact to `path`, or to standard output.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), String> {
    use std::io::Write;
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| format!("cannot write output: {e}"))
        }
    }
}
