use std::collections::BTreeMap;
use std::path::PathBuf;

use engel_core::catalog::{family, FamilyId};
use engel_core::engelcheck::Status;
use engel_core::framecalc::{ComplexStructure, CoordSpec, FramedSpace, Manifest, VecField};
use engel_core::report::{
    emit_report, parse_suite, resolve_target, run_verify, Check, Format, Report, ReportError,
    RunOptions,
};
use engel_core::trigring::TrigScalar;

fn repo_file(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn verify(target: &str, suite: &str) -> Report {
    let t = resolve_target(target, &BTreeMap::new()).unwrap();
    run_verify(&t, &parse_suite(suite).unwrap(), &RunOptions::default()).unwrap()
}

#[test]
fn hopf_is_k_engel() {
    let r = verify("hopf_s3r", "all");
    assert_eq!(r.record("kengel").unwrap().status, Status::Pass);
    assert_eq!(r.status, Status::Pass);
    let dev = r.record("printed.[A,[A,JA]]").unwrap();
    assert_eq!(dev.status, Status::Deviation);
    assert_eq!(dev.details["computed"], "-2*X2");
    assert_eq!(dev.details["printed"], "X2");
}

#[test]
fn inoue_s0_is_not_k_engel() {
    let r = verify("inoue_s0", "kengel");
    let k = r.record("kengel").unwrap();
    assert_eq!(k.status, Status::Fail);
    assert_eq!(k.details["a_XR"], "3");
    assert!(k.notes.iter().any(|n| n.contains("agrees")));
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn kodaira_deviation_lists_both_brackets() {
    let r = verify("kodaira_primary", "engel");
    let dev = r.record("printed.[A,JA]").unwrap();
    assert_eq!(dev.status, Status::Deviation);
    assert_eq!(dev.details["computed"], "(-sin(t))*X1 + (cos(t))*X2 - X3");
    assert_eq!(dev.details["printed"], "(-sin(t))*X1 + (cos(t))*X2 + X3");
}

#[test]
fn deviations_appear_only_on_flagged_brackets() {
    let mut seen = Vec::new();
    for id in FamilyId::ALL {
        let r = verify(id.as_str(), "engel");
        for rec in r.records.iter().filter(|r| r.status == Status::Deviation) {
            seen.push(format!("{id} {}", rec.name));
        }
    }
    assert_eq!(
        seen,
        [
            "kodaira_primary printed.[A,JA]",
            "hopf_s3r printed.[A,[A,JA]]",
            "elliptic_sl2r printed.[A,[A,JA]]"
        ]
    );
}

fn write_abelian_manifest() -> PathBuf {
    let coords = ["x", "y", "z", "w"]
        .iter()
        .map(|n| CoordSpec::new(n, None))
        .collect();
    let mut sp = FramedSpace::new(["E1", "E2", "E3", "E4"], coords).unwrap();
    for i in 0..4 {
        sp.set_derivation(i, i, TrigScalar::one()).unwrap();
    }
    let d = [VecField::frame(0), VecField::frame(1)];
    let m = Manifest::from_parts(
        "abelian",
        &sp,
        &ComplexStructure::standard(),
        Some(&d),
        &BTreeMap::new(),
        &BTreeMap::new(),
    );
    let path = std::env::temp_dir().join(format!("engel-abelian-{}.json", std::process::id()));
    std::fs::write(&path, m.to_json()).unwrap();
    path
}

#[test]
fn abelian_fixture_fails_with_a_rank_witness() {
    let path = write_abelian_manifest();
    let r = verify(path.to_str().unwrap(), "engel");
    let rec = r.record("engel.rank(E) = 3").unwrap();
    assert_eq!(rec.status, Status::Fail);
    let cert = rec.certificate.as_ref().unwrap();
    assert_eq!(cert.constant.as_deref(), Some("0"));
    assert_eq!(r.status, Status::Fail);
    std::fs::remove_file(path).ok();
}

#[test]
fn json_is_byte_stable() {
    for id in ["hopf_s3r", "inoue_spm", "torus_trig"] {
        let t = resolve_target(id, &BTreeMap::new()).unwrap();
        let suite = parse_suite("all").unwrap();
        let opts = RunOptions {
            seed: 7,
            ..RunOptions::default()
        };
        let a = emit_report(&run_verify(&t, &suite, &opts).unwrap(), Format::Json);
        let b = emit_report(&run_verify(&t, &suite, &opts).unwrap(), Format::Json);
        assert_eq!(a, b, "{id}");
        assert!(!a.contains("timings_ms"));
    }
}

#[test]
fn timings_are_opt_in() {
    let t = resolve_target("hopf_s3r", &BTreeMap::new()).unwrap();
    let opts = RunOptions {
        timings: true,
        ..RunOptions::default()
    };
    let r = run_verify(&t, &[Check::Engel], &opts).unwrap();
    assert!(r
        .timings_ms
        .as_ref()
        .is_some_and(|t| t.contains_key("engel")));
}

#[test]
fn json_keys_are_sorted_and_statuses_known() {
    let r = verify("inoue_s0", "all");
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let obj = v.as_object().unwrap();
    let keys: Vec<&String> = obj.keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(obj["version"], "1");
    assert_eq!(obj["parameters"]["a"], "1/1");
    for rec in obj["records"].as_array().unwrap() {
        let s = rec["status"].as_str().unwrap();
        assert!(
            ["PASS", "FAIL", "REJECTED", "DEVIATION"].contains(&s),
            "{s}"
        );
    }
}

#[test]
fn text_report_has_the_flag_summary() {
    let r = verify("hyperelliptic_solv", "engel,forms");
    let text = emit_report(&r, Format::Text);
    assert!(text.contains("Engel flag W < D < E:"));
    assert!(text.contains("  W  = <"));
    assert!(text.trim_end().ends_with("overall: PASS"));
}

#[test]
fn suites_run_in_dependency_order() {
    assert_eq!(
        parse_suite("kengel, engel,kengel").unwrap(),
        vec![Check::Engel, Check::Kengel]
    );
    assert!(matches!(parse_suite(""), Err(ReportError::EmptySuite)));
    assert!(matches!(parse_suite(" , "), Err(ReportError::EmptySuite)));
    assert!(matches!(
        parse_suite("engel,nope"),
        Err(ReportError::UnknownCheck(_))
    ));
}

#[test]
fn unresolvable_targets() {
    let none = BTreeMap::new();
    assert!(matches!(
        resolve_target("no_such_family", &none),
        Err(ReportError::UnknownTarget(_))
    ));
    let path = repo_file("manifests/flat_t4.json");
    let mut p = BTreeMap::new();
    p.insert(
        "a".to_string(),
        num_rational::BigRational::from_integer(1.into()),
    );
    assert!(matches!(
        resolve_target(path.to_str().unwrap(), &p),
        Err(ReportError::ManifestParameters)
    ));
    let bad = std::env::temp_dir().join(format!("engel-bad-{}.json", std::process::id()));
    std::fs::write(&bad, "{\"id\": \"x\", \"frame\": [\"A\"]}").unwrap();
    let err = resolve_target(bad.to_str().unwrap(), &none).unwrap_err();
    assert!(matches!(err, ReportError::Frame(_)), "{err}");
    std::fs::remove_file(bad).ok();
}

#[test]
fn geiges_suite_on_the_committed_manifests() {
    let flat = verify(
        repo_file("manifests/flat_t4.json").to_str().unwrap(),
        "geiges",
    );
    assert_eq!(flat.record("geiges.minimal_n").unwrap().details["n*"], "1");
    let solv = verify(
        repo_file("manifests/solvable_torus.json").to_str().unwrap(),
        "geiges",
    );
    assert_eq!(solv.record("geiges.minimal_n").unwrap().details["n*"], "2");
    let lead = solv.record("geiges.leading_order").unwrap();
    assert_eq!(lead.status, Status::Pass);
    assert_eq!(lead.details["slope_first"], "-1.0000");
    // families have no mapping-torus data
    let fam = verify("hopf_s3r", "geiges");
    assert_eq!(fam.records[0].status, Status::Rejected);
    assert_eq!(fam.status, Status::Pass);
}

#[test]
fn equivariance_suite_only_for_the_product_family() {
    let r = verify("hyperelliptic_product", "equivariance");
    assert!(r.records.iter().all(|r| r.status == Status::Pass));
    assert_eq!(r.records.len(), 4);
    let other = verify("hopf_s3r", "equivariance");
    assert_eq!(other.records[0].status, Status::Rejected);
}

#[test]
fn elliptic_jofreeb_is_rejected() {
    let r = verify("elliptic_sl2r", "jofreeb");
    assert_eq!(r.record("jofreeb").unwrap().status, Status::Rejected);
    assert_eq!(r.record("jofreeb.c_WX != 0").unwrap().status, Status::Pass);
    let spec = family(FamilyId::EllipticSl2R);
    assert!(spec
        .j
        .nijenhuis_table(&spec.space)
        .iter()
        .any(|(_, v)| !v.is_zero()));
}
