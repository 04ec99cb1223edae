use archseam_core::synth::{generate, SynthConfig};
use archseam_core::{has_errors, trace, validate, Direction, ElementKind, LinkKind, RuleConfig, TraceOptions};

fn corpus() -> Vec<archseam_core::ArchitectureModel> {
    (0..50u64)
        .map(|i| {
            generate(
                i,
                &SynthConfig {
                    target_elements: 5 + (i as usize * 37) % 190,
                    defect_rate: if i % 3 == 0 { 0.15 } else { 0.0 },
                },
            )
        })
        .collect()
}

#[test]
fn sizes_stay_in_range() {
    for m in corpus() {
        assert!((5..=200).contains(&m.element_count()), "{}", m.element_count());
    }
}

#[test]
fn defect_free_models_have_no_errors() {
    for seed in 0..40 {
        let m = generate(
            seed,
            &SynthConfig {
                target_elements: 120,
                defect_rate: 0.0,
            },
        );
        let diags = validate(&m, &RuleConfig::default());
        assert!(!has_errors(&diags), "seed {seed}: {diags:?}");
    }
}

#[test]
fn defects_are_detected() {
    let flagged = (0..20)
        .filter(|&seed| {
            let m = generate(
                seed,
                &SynthConfig {
                    target_elements: 120,
                    defect_rate: 0.3,
                },
            );
            has_errors(&validate(&m, &RuleConfig::default()))
        })
        .count();
    assert!(flagged >= 15, "{flagged}");
}

#[test]
fn error_free_models_are_complete() {
    for m in corpus() {
        if has_errors(&validate(&m, &RuleConfig::default())) {
            continue;
        }
        for op in m
            .elements()
            .filter(|e| e.kind == ElementKind::BusinessOperation && e.automated)
        {
            let t = trace(&m, &op.id, Direction::Forward, &TraceOptions::default()).unwrap();
            assert!(
                t.ids().iter().any(|id| m.kind_of(id) == Some(ElementKind::ClassMethod)),
                "{}",
                op.id
            );
        }
        for c in m.elements_of_kind(ElementKind::FunctionalComponent) {
            assert!(!m.in_neighbors(c, Some(LinkKind::Deploys)).unwrap().is_empty(), "{c}");
        }
    }
}
