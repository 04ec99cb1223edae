//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use archseam_core::export::{export_dot, export_plantuml_deployment, model_from_json, model_to_json, DotScope};
use archseam_core::synth::{generate, SynthConfig};
use archseam_core::tracer::{DEFAULT_TRACE_LINKS, OWNERSHIP_TRACE_LINKS};
use archseam_core::{
    adl, allowed_link, has_errors, trace, validate, ArchitectureModel, Direction, ElementKind, LinkKind, LinkSet,
    ModelBuilder, RuleConfig, TraceOptions,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn m0_path() -> PathBuf {
    fixtures().join("m0.adl")
}

fn m0() -> ArchitectureModel {
    let text = std::fs::read(m0_path()).expect("fixture present");
    let loaded = adl::load(&text, "m0.adl");
    assert!(loaded.diagnostics.is_empty(), "{:?}", loaded.diagnostics);
    loaded.model
}

fn archseam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_archseam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn corpus() -> Vec<(u64, ArchitectureModel)> {
    (0..50u64)
        .map(|seed| {
            let config = SynthConfig {
                target_elements: 5 + (seed as usize * 37) % 196,
                defect_rate: if seed % 2 == 0 { 0.0 } else { 0.15 },
            };
            (seed, generate(seed, &config))
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ms(d: Duration) -> String {
    format!("{} ms", d.as_millis())
}

fn clean_fixture() -> Verdict {
    let start = Instant::now();
    let path = m0_path();
    let path = path.to_str().unwrap();
    let v = archseam(&["validate", path]);
    let c = archseam(&["coverage", path, "--format", "json"]);
    let elapsed = start.elapsed();
    ensure(v.status.code() == Some(0), || {
        format!("validate exit {:?}", v.status.code())
    })?;
    ensure(v.stdout.is_empty(), || {
        format!("diagnostics: {}", String::from_utf8_lossy(&v.stdout))
    })?;
    let cov: serde_json::Value = serde_json::from_slice(&c.stdout).map_err(|e| e.to_string())?;
    let seams = cov.as_array().ok_or("coverage is not a list")?;
    ensure(seams.len() == 4, || format!("{} seams", seams.len()))?;
    for s in seams {
        ensure(s["coverage"] == 1.0, || {
            format!("seam {} at {}", s["seam"], s["coverage"])
        })?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {}", ms(elapsed)))?;
    Ok(format!("0 diagnostics, 4 seams at 1.0, {}", ms(elapsed)))
}

const MUTATED_KINDS: [LinkKind; 7] = [
    LinkKind::SvcDialog,
    LinkKind::VfModule,
    LinkKind::ModMethod,
    LinkKind::Deploys,
    LinkKind::OwnsModule,
    LinkKind::OwnsMethod,
    LinkKind::HostsClass,
];

fn rebuild(model: &ArchitectureModel, skip: Option<usize>) -> ArchitectureModel {
    let mut b = ModelBuilder::new();
    for e in model.elements() {
        b.add_element(e.clone()).expect("unique ids");
    }
    for (i, l) in model.links().iter().enumerate() {
        if Some(i) != skip {
            b.add_link(l.clone()).expect("legal link");
        }
    }
    b.freeze()
}

fn mutation_suite() -> Verdict {
    let start = Instant::now();
    let base = m0();
    let config = RuleConfig::default();
    let mut checked = 0;
    let mut missed = Vec::new();
    for (i, link) in base.links().iter().enumerate() {
        let mutant = rebuild(&base, Some(i));
        let diags = validate(&mutant, &config);
        if MUTATED_KINDS.contains(&link.kind) {
            checked += 1;
            let named = diags
                .iter()
                .any(|d| d.subjects.iter().any(|s| *s == link.src || *s == link.dst));
            if !named {
                missed.push(format!("{} {}->{}", link.kind, link.src, link.dst));
            }
        }
        let restored = mutant_with(&mutant, link);
        if !validate(&restored, &config).is_empty() {
            missed.push(format!(
                "restoring {} {}->{} left diagnostics",
                link.kind, link.src, link.dst
            ));
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {}", ms(elapsed)))?;
    let total = base.link_count();
    if missed.is_empty() {
        Ok(format!(
            "{total} deletions, {checked} checked, all detected, {}",
            ms(elapsed)
        ))
    } else {
        Err(format!(
            "{total} deletions, {checked} checked, {} undetected: {}",
            missed.len(),
            missed.join("; ")
        ))
    }
}

/// The mutant with `link` appended again.
fn mutant_with(mutant: &ArchitectureModel, link: &archseam_core::Link) -> ArchitectureModel {
    let mut b = ModelBuilder::new();
    for e in mutant.elements() {
        b.add_element(e.clone()).expect("unique ids");
    }
    for l in mutant.links().iter().chain(std::iter::once(link)) {
        b.add_link(l.clone()).expect("legal link");
    }
    b.freeze()
}

/// Naive depth-first closure over the step relation of a forward trace.
fn dfs_closure(model: &ArchitectureModel, links: LinkSet) -> BTreeMap<String, BTreeSet<String>> {
    let mut step: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for l in model.links() {
        if DEFAULT_TRACE_LINKS.contains(&l.kind) {
            step.entry(&l.src).or_default().push(&l.dst);
        } else if links == LinkSet::Extended && OWNERSHIP_TRACE_LINKS.contains(&l.kind) {
            step.entry(&l.dst).or_default().push(&l.src);
        }
    }
    let mut closure = BTreeMap::new();
    for e in model.elements() {
        let mut seen = BTreeSet::from([e.id.clone()]);
        let mut stack = vec![e.id.as_str()];
        while let Some(x) = stack.pop() {
            for &y in step.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(y.to_string()) {
                    stack.push(y);
                }
            }
        }
        closure.insert(e.id.clone(), seen);
    }
    closure
}

fn trace_oracle() -> Verdict {
    let model = m0();
    let ids: Vec<String> = model.elements().map(|e| e.id.clone()).collect();
    let mut pairs = 0;
    for links in [LinkSet::Default, LinkSet::Extended] {
        let oracle = dfs_closure(&model, links);
        let opts = TraceOptions { links, depth: None };
        let mut fwd = BTreeMap::new();
        let mut back = BTreeMap::new();
        for id in &ids {
            let f = trace(&model, id, Direction::Forward, &opts)
                .map_err(|e| e.to_string())?
                .ids();
            let b = trace(&model, id, Direction::Backward, &opts)
                .map_err(|e| e.to_string())?
                .ids();
            ensure(f == oracle[id], || {
                format!("forward {id} ({links:?}) differs from oracle")
            })?;
            let expected: BTreeSet<String> = ids.iter().filter(|x| oracle[*x].contains(id)).cloned().collect();
            ensure(b == expected, || {
                format!("backward {id} ({links:?}) differs from oracle")
            })?;
            fwd.insert(id, f);
            back.insert(id, b);
        }
        for x in &ids {
            for y in &ids {
                ensure(fwd[x].contains(y) == back[y].contains(x), || {
                    format!("adjointness fails for {x}, {y} ({links:?})")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} roots x 2 link sets agree with DFS oracle, adjointness on {pairs} pairs",
        ids.len()
    ))
}

fn round_trips() -> Verdict {
    let mut models = vec![(u64::MAX, m0())];
    models.extend(corpus());
    let (mut min, mut max) = (usize::MAX, 0);
    for (seed, model) in &models {
        let label = if *seed == u64::MAX {
            "M0".to_string()
        } else {
            format!("seed {seed}")
        };
        min = min.min(model.element_count());
        max = max.max(model.element_count());
        let text = adl::serialize(model);
        let loaded = adl::load(text.as_bytes(), "roundtrip.adl");
        ensure(loaded.diagnostics.is_empty(), || {
            format!("{label}: reparse diagnostics")
        })?;
        if let Some(diff) = model.structural_difference(&loaded.model) {
            return Err(format!("{label}: text round trip: {diff}"));
        }
        let (back, diags) = model_from_json(&model_to_json(model)).map_err(|e| format!("{label}: {e}"))?;
        ensure(diags.is_empty(), || format!("{label}: import diagnostics"))?;
        if let Some(diff) = model.structural_difference(&back) {
            return Err(format!("{label}: JSON round trip: {diff}"));
        }
    }
    ensure(min >= 5 && max <= 200, || format!("corpus sizes {min}..{max}"))?;
    Ok(format!(
        "M0 + {} generated models ({min}..{max} elements), text and JSON",
        models.len() - 1
    ))
}

fn determinism() -> Verdict {
    let path = m0_path();
    let p = path.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["check", p],
        vec!["validate", p],
        vec!["validate", p, "--format", "json"],
        vec!["gaps", p],
        vec!["gaps", p, "--format", "json"],
        vec!["trace", p, "--from", "O1"],
        vec![
            "trace",
            p,
            "--from",
            "MM1",
            "--direction",
            "backward",
            "--extended",
            "--format",
            "json",
        ],
        vec!["trace", p, "--from", "P1", "--format", "dot"],
        vec!["impact", p, "--on", "M2"],
        vec![
            "matrix",
            p,
            "--from-kind",
            "BusinessOperation",
            "--to-kind",
            "ClassMethod",
        ],
        vec!["coverage", p],
        vec!["export", p, "--format", "dot"],
        vec!["export", p, "--format", "dot", "--scope", "seam2"],
        vec!["export", p, "--format", "plantuml"],
        vec!["export", p, "--format", "json"],
        vec!["doc", p],
        vec!["fmt", p],
    ];
    for args in &invocations {
        let a = archseam(args);
        let b = archseam(args);
        ensure(a.status.code() == Some(0), || {
            format!("{} exit {:?}", args[0], a.status.code())
        })?;
        ensure(a.stdout == b.stdout, || format!("{args:?} output differs between runs"))?;
    }
    Ok(format!(
        "{} invocations over 10 subcommands byte-identical",
        invocations.len()
    ))
}

fn metamodel_totality() -> Verdict {
    let golden_text = std::fs::read_to_string(fixtures().join("allowed_links.golden")).map_err(|e| e.to_string())?;
    let mut golden = BTreeSet::new();
    for line in golden_text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let p: Vec<&str> = line.split_whitespace().collect();
        let triple: (ElementKind, LinkKind, ElementKind) = (
            p[0].parse().map_err(|_| format!("bad golden line {line}"))?,
            p[1].parse().map_err(|_| format!("bad golden line {line}"))?,
            p[2].parse().map_err(|_| format!("bad golden line {line}"))?,
        );
        golden.insert(triple);
    }
    let mut admitted = BTreeSet::new();
    let mut evaluated = 0;
    for s in ElementKind::ALL {
        for l in LinkKind::ALL {
            for d in ElementKind::ALL {
                let ok =
                    std::panic::catch_unwind(|| allowed_link(s, l, d)).map_err(|_| format!("panic on {s} {l} {d}"))?;
                evaluated += 1;
                if ok {
                    admitted.insert((s, l, d));
                }
            }
        }
    }
    ensure(admitted == golden, || {
        format!("admitted {} triples, golden has {}", admitted.len(), golden.len())
    })?;
    Ok(format!(
        "{evaluated} triples evaluated, {} admitted, matches golden table",
        admitted.len()
    ))
}

fn completeness() -> Verdict {
    let config = RuleConfig::default();
    let mut clean = 0;
    let mut ops = 0;
    let mut components = 0;
    for (seed, m) in corpus() {
        if has_errors(&validate(&m, &config)) {
            continue;
        }
        clean += 1;
        for op in m
            .elements()
            .filter(|e| e.kind == ElementKind::BusinessOperation && e.automated)
        {
            ops += 1;
            let t = trace(&m, &op.id, Direction::Forward, &TraceOptions::default()).map_err(|e| e.to_string())?;
            ensure(
                t.ids().iter().any(|id| m.kind_of(id) == Some(ElementKind::ClassMethod)),
                || format!("seed {seed}: {} reaches no class method", op.id),
            )?;
        }
        for c in m.elements_of_kind(ElementKind::FunctionalComponent) {
            components += 1;
            let nodes = m.in_neighbors(c, Some(LinkKind::Deploys)).map_err(|e| e.to_string())?;
            ensure(!nodes.is_empty(), || format!("seed {seed}: {c} is not deployed"))?;
        }
    }
    ensure(clean > 0 && ops > 0, || {
        "no error-free model exercises the property".into()
    })?;
    Ok(format!(
        "{clean}/50 error-free models, {ops} automated operations and {components} components checked"
    ))
}

fn figures() -> Verdict {
    let model = m0();
    let dot = export_dot(&model, DotScope::Seam(2));
    let node_lines: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains(" -> "))
        .collect();
    let edge_lines: Vec<&str> = dot.lines().filter(|l| l.contains(" -> ")).collect();
    let vfs = node_lines.iter().filter(|l| l.contains("ViewFunction:")).count();
    let mods = node_lines.iter().filter(|l| l.contains("SoftwareModule:")).count();
    ensure(node_lines.len() == 4 && vfs == 2 && mods == 2, || {
        format!(
            "seam2 nodes: {vfs} view functions, {mods} modules, {} total",
            node_lines.len()
        )
    })?;
    ensure(
        edge_lines.len() == 3 && edge_lines.iter().all(|l| l.contains("VF_MODULE")),
        || format!("seam2 edges: {edge_lines:?}"),
    )?;

    let cli = archseam(&[
        "export",
        m0_path().to_str().unwrap(),
        "--format",
        "dot",
        "--scope",
        "seam2",
    ]);
    ensure(cli.stdout == dot.as_bytes(), || {
        "CLI seam2 export differs from library".into()
    })?;

    let uml = export_plantuml_deployment(&model);
    let nodes = uml.lines().filter(|l| l.starts_with("node ")).count();
    let comps = uml.lines().filter(|l| l.trim_start().starts_with("component ")).count();
    ensure(nodes == 1 && comps == 1, || {
        format!("plantuml: {nodes} nodes, {comps} components")
    })?;
    ensure(
        uml.contains("node \"App Server\" as N1 {\n  component \"Ordering\" as C1\n}"),
        || format!("N1 does not contain C1:\n{uml}"),
    )?;
    Ok("seam2: 2 view functions, 2 modules, 3 edges; deployment: N1 contains C1".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("clean fixture", clean_fixture),
        ("mutation suite", mutation_suite),
        ("trace oracle equivalence", trace_oracle),
        ("round trips", round_trips),
        ("determinism", determinism),
        ("metamodel totality", metamodel_totality),
        ("completeness property", completeness),
        ("figure reproduction", figures),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
