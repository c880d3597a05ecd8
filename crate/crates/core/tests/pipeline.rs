use std::collections::BTreeMap;
use std::sync::Arc;

use computads::counterexample::{
    run_counterexample, run_counterexample_empty_target_variant, Verdict,
};
use computads::format::{parse_computad, parse_morphism};
use computads::{Computad, Error};

#[test]
fn artifacts_round_trip_through_files() {
    let report = run_counterexample().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let written = report.artifacts.write_to(dir.path()).unwrap();
    assert_eq!(
        written.len(),
        report.artifacts.objects.len() + report.artifacts.morphisms.len()
    );

    let mut objects: BTreeMap<String, Arc<Computad>> = BTreeMap::new();
    for o in &report.artifacts.objects {
        let text = std::fs::read_to_string(dir.path().join(format!("{}.cpd", o.name()))).unwrap();
        let parsed = parse_computad(&text).unwrap();
        assert_eq!(parsed, **o);
        assert_eq!(parsed.name(), o.name());
        objects.insert(o.name().to_string(), Arc::new(parsed));
    }
    for (name, m) in &report.artifacts.morphisms {
        let text = std::fs::read_to_string(dir.path().join(format!("{name}.mor"))).unwrap();
        let (parsed_name, parsed) = parse_morphism(&text, |n| objects.get(n).cloned()).unwrap();
        assert_eq!(&parsed_name, name);
        assert_eq!(parsed.map2_table(), m.map2_table());
        assert_eq!(parsed.map3_table(), m.map3_table());
    }
}

#[test]
fn comparison_map_properties() {
    for report in [
        run_counterexample().unwrap(),
        run_counterexample_empty_target_variant().unwrap(),
    ] {
        let art = &report.artifacts;
        let c = &art.comparison;
        assert!(c.validate().is_empty());
        assert!(c.is_surjective2() && c.is_surjective3());
        assert!(!c.is_injective3());
        let q_p = art.morphism("qP").unwrap();
        let beta_x1 = art.morphism("betax1").unwrap();
        assert_eq!(&c.compose(q_p).unwrap(), beta_x1);
        assert_eq!(report.verdict, Verdict::NotPreserved);
        assert!(report.witness.is_some());
        assert!(report.all_checks_passed());
    }
}

#[test]
fn report_notes_the_six_cell_product() {
    let report = run_counterexample().unwrap();
    let cb = report.artifacts.object("CxB").unwrap();
    assert_eq!(cb.num_cells2(), 6);
    assert!(report.notes.iter().any(|n| n.contains("6 2-cells")));
}

#[test]
fn json_has_one_record_per_step() {
    let report = run_counterexample().unwrap();
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    let steps = json["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 9);
    assert_eq!(
        steps
            .iter()
            .map(|s| s["step"].as_u64().unwrap())
            .collect::<Vec<_>>(),
        (1..=9).collect::<Vec<_>>()
    );
    assert_eq!(json["verdict"], "not-preserved");
}

#[test]
fn wrong_morphism_endpoint_is_reported() {
    let err = parse_morphism("morphism m : E -> A\n", |_| None).unwrap_err();
    assert_eq!(err, Error::UnknownObject("E".into()));
}
