//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Built with `harness = false` so the lines print in order and unfiltered.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::strategies::*;
use engel_core::catalog::{build_family, FamilyId};
use engel_core::engelcheck::{j_invariance_check, verify_engel, Status};
use engel_core::framecalc::{CertificateKind, GridSpec, VecField};
use engel_core::geiges::{check_level, MappingTorusInput, Variant};
use engel_core::report::{
    emit_report, parse_suite, resolve_target, run_verify, Format, Report, RunOptions, Target,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const CATALOG_BUDGET: Duration = Duration::from_secs(60);
const SPLIT_TOL: f64 = 1e-9;
const N_MAX: u32 = 16;
const SLOPE_RANGE: (f64, f64) = (-1.3, -0.7);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grid() -> GridSpec {
    GridSpec::default()
}

fn samples() -> impl Iterator<Item = (FamilyId, BTreeMap<String, num_rational::BigRational>)> {
    FamilyId::ALL
        .into_iter()
        .flat_map(|id| id.sample_parameters().into_iter().map(move |p| (id, p)))
}

fn verify(id: FamilyId, suite: &str) -> Report {
    let t = resolve_target(id.as_str(), &BTreeMap::new()).unwrap();
    run_verify(&t, &parse_suite(suite).unwrap(), &RunOptions::default()).unwrap()
}

fn status(r: &Report, name: &str) -> Option<Status> {
    r.record(name).map(|r| r.status)
}

fn catalog_soundness() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for (id, p) in samples() {
        count += 1;
        let spec = build_family(id, &p).map_err(|e| format!("{id}: {e}"))?;
        let sp = &spec.space;
        if !sp.jacobiators().iter().all(|(_, v)| v.is_zero()) {
            bad.push(format!("{id}: Jacobi"));
        }
        if !sp
            .derivation_defects()
            .iter()
            .all(|(_, s)| s.is_identically_zero())
        {
            bad.push(format!("{id}: derivation law"));
        }
        if !spec.j.square_defect().iter().all(VecField::is_zero) {
            bad.push(format!("{id}: J^2 != -1"));
        }
        let names = sp.frame_names();
        for ((i, k), v) in spec.j.nijenhuis_table(sp) {
            if !v.is_zero() {
                let f = v.display(names, sp.coord_names());
                bad.push(format!("{id}: N({},{}) = {f}", names[i], names[k]));
            }
        }
        let flag = verify_engel(&spec.d, sp, &grid());
        if let Some((stage, _)) = flag.failure() {
            bad.push(format!("{id}: {stage}"));
        }
        if !j_invariance_check(&spec.d, &spec.j, sp, &grid()).passed() {
            bad.push(format!("{id}: JD != D"));
        }
    }
    let took = start.elapsed();
    if took > CATALOG_BUDGET {
        bad.push(format!("took {took:?}, budget {CATALOG_BUDGET:?}"));
    }
    bad.dedup();
    if bad.is_empty() {
        Ok(format!(
            "{count} samples sound in {:.1}s",
            took.as_secs_f64()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn printed_brackets() -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for id in FamilyId::ALL {
        let r = verify(id, "engel");
        for rec in r.records.iter().filter(|r| r.name.starts_with("printed.")) {
            total += 1;
            if rec.status == Status::Pass {
                continue;
            }
            let spans = rec.certificate.as_ref().is_some_and(|c| c.passed());
            bad.push(format!(
                "{id} {} computed {} printed {} ({}{})",
                rec.name,
                rec.details["computed"],
                rec.details["printed"],
                rec.status.as_str(),
                if spans {
                    ", spanning holds with the printed value"
                } else {
                    ""
                },
            ));
        }
    }
    if bad.is_empty() {
        Ok(format!("{total} printed brackets match"))
    } else {
        Err(bad.join("; "))
    }
}

fn jofreeb_symbolic() -> Outcome {
    let mut bad = Vec::new();
    for id in [FamilyId::HopfS3R, FamilyId::HyperellipticSolv] {
        let r = verify(id, "jofreeb");
        for name in [
            "jofreeb.c_WX != 0",
            "jofreeb.JT",
            "jofreeb.JR",
            "jofreeb.dalpha^2",
        ] {
            match r.record(name) {
                Some(rec) if rec.status == Status::Pass => {
                    let kind = rec.certificate.as_ref().map(|c| c.kind);
                    if name != "jofreeb.c_WX != 0" && kind != Some(CertificateKind::Symbolic) {
                        bad.push(format!("{id} {name}: not symbolic ({kind:?})"));
                    }
                }
                Some(rec) => bad.push(format!("{id} {name}: {}", rec.status.as_str())),
                None => bad.push(format!("{id} {name}: missing")),
            }
        }
    }
    if bad.is_empty() {
        Ok("J(Reeb) and dalpha^2 certified symbolically on hopf_s3r, hyperelliptic_solv".into())
    } else {
        Err(bad.join("; "))
    }
}

fn k_engel() -> Outcome {
    let mut bad = Vec::new();
    for id in [FamilyId::HopfS3R, FamilyId::HyperellipticSolv] {
        let r = verify(id, "forms,kengel");
        if status(&r, "kengel") != Some(Status::Pass) {
            bad.push(format!("{id}: kengel {:?}", status(&r, "kengel")));
        }
        if status(&r, "printed.alpha, beta") != Some(Status::Pass) {
            bad.push(format!(
                "{id}: alpha is not a constant multiple of the printed form"
            ));
        }
    }
    let mut witness = String::new();
    for (id, p) in samples().filter(|(id, _)| *id == FamilyId::InoueS0) {
        let t = Target::Family(Box::new(build_family(id, &p).unwrap()));
        let r = run_verify(&t, &parse_suite("kengel").unwrap(), &RunOptions::default()).unwrap();
        let rec = r.record("kengel").unwrap();
        let nonzero = rec
            .details
            .iter()
            .find(|(k, _)| (k.starts_with("a_") || k.starts_with("b_")) && !k.contains(' '));
        match (rec.status, nonzero) {
            (Status::Fail, Some((k, v))) => {
                if witness.is_empty() {
                    witness = format!("inoue_s0 fails with {k} = {v}");
                }
            }
            (s, _) => bad.push(format!(
                "inoue_s0 {p:?}: {} without a nonzero coefficient",
                s.as_str()
            )),
        }
    }
    if bad.is_empty() {
        Ok(format!("hopf_s3r, hyperelliptic_solv K-Engel; {witness}"))
    } else {
        Err(bad.join("; "))
    }
}

fn splitting() -> Outcome {
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for (id, p) in samples() {
        let t = Target::Family(Box::new(build_family(id, &p).unwrap()));
        let r = run_verify(
            &t,
            &parse_suite("splitting").unwrap(),
            &RunOptions::default(),
        )
        .unwrap();
        if r.records.is_empty() {
            bad.push(format!("{id}: no records"));
        }
        for rec in &r.records {
            if let Some(m) = rec.residual_max {
                worst = worst.max(m);
                if m >= SPLIT_TOL {
                    bad.push(format!("{id} {}: residual {m:e}", rec.name));
                }
            }
            if rec.status != Status::Pass {
                bad.push(format!("{id} {}: {}", rec.name, rec.status.as_str()));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "all samples split, max residual {worst:e} < {SPLIT_TOL:e}"
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn flat_torus() -> Outcome {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests/flat_t4.json");
    let t = resolve_target(path.to_str().unwrap(), &BTreeMap::new()).map_err(|e| e.to_string())?;
    let opts = RunOptions {
        n_max: N_MAX,
        ..RunOptions::default()
    };
    let r = run_verify(&t, &parse_suite("geiges").unwrap(), &opts).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    let n_star = r
        .record("geiges.minimal_n")
        .and_then(|r| r.details.get("n*").cloned());
    match &n_star {
        Some(n) => {
            if status(&r, "geiges.totally_real.JD∩D = 0 at n*") != Some(Status::Pass) {
                bad.push(format!("totally real variant fails at n* = {n}"));
            }
        }
        None => bad.push(format!("no level up to {N_MAX}")),
    }
    let Target::Manifest(m) = &t else {
        unreachable!()
    };
    let input =
        MappingTorusInput::from_manifest((**m).clone(), &grid()).map_err(|e| e.to_string())?;
    for n in 1..=N_MAX {
        let (trace, _) =
            check_level(&input, n, Variant::TotallyReal, &grid()).map_err(|e| e.to_string())?;
        if trace.j_invariant {
            bad.push(format!("totally real level {n} is J-invariant"));
        }
    }
    let lead = r.record("geiges.leading_order").unwrap();
    let slope = &lead.details["slope_first"];
    match slope.parse::<f64>() {
        Ok(s) if (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&s) => {}
        _ => bad.push(format!(
            "slope {slope}, required in [{}, {}]",
            SLOPE_RANGE.0, SLOPE_RANGE.1
        )),
    }
    if bad.is_empty() {
        Ok(format!("n* = {}, slope {slope}", n_star.unwrap()))
    } else {
        Err(bad.join("; "))
    }
}

fn equivariance() -> Outcome {
    let mut bad = Vec::new();
    for k in ["2", "3", "4", "6"] {
        let p = BTreeMap::from([("k".to_string(), k.parse().unwrap())]);
        let t = resolve_target("hyperelliptic_product", &p).map_err(|e| e.to_string())?;
        let r = run_verify(
            &t,
            &parse_suite("equivariance").unwrap(),
            &RunOptions::default(),
        )
        .map_err(|e| e.to_string())?;
        if r.records.len() != 4 || r.status != Status::Pass {
            bad.push(format!("k = {k}: {}", r.status.as_str()));
        }
    }
    if bad.is_empty() {
        Ok("k in {2, 3, 4, 6}".into())
    } else {
        Err(bad.join("; "))
    }
}

fn run_law<S: Strategy>(
    name: &str,
    strategy: S,
    law: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    TestRunner::new_with_rng(config, rng)
        .run(&strategy, law)
        .map_err(|e| format!("{name}: {e}"))
}

fn laws_and_stability() -> Outcome {
    let fields3 = || (field(), field(), field());
    let laws = [
        run_law(
            "normalize",
            (raw(2), -3.0f64..3.0, -3.0f64..3.0),
            |(e, x, y)| evaluate_normalize(&e, [x, y]),
        ),
        run_law(
            "bilinear",
            (fields3(), -5i64..=5, 1i64..=3, point()),
            |((u, v, w), a, b, t)| bilinear(&u, &v, &w, (a, b), t),
        ),
        run_law("antisymmetric", (field(), field()), |(u, v)| {
            antisymmetric(&u, &v)
        }),
        run_law(
            "leibniz",
            (field(), field(), scalar(), point()),
            |(u, v, f, t)| leibniz(&u, &v, &f, t),
        ),
        run_law("jacobi", fields3(), |(u, v, w)| jacobi(&u, &v, &w)),
        run_law(
            "derivation",
            (field(), scalar(), scalar(), point()),
            |(u, f, g, t)| derivation(&u, &f, &g, t),
        ),
        run_law(
            "d^2",
            (scalar(), [scalar(), scalar(), scalar(), scalar()]),
            |(f, c)| d_squared(&f, &c),
        ),
    ];
    let mut bad: Vec<String> = laws.into_iter().filter_map(Result::err).collect();
    let suite = parse_suite("all").unwrap();
    let opts = RunOptions {
        seed: 7,
        ..RunOptions::default()
    };
    for id in FamilyId::ALL {
        let t = resolve_target(id.as_str(), &BTreeMap::new()).unwrap();
        let a = emit_report(&run_verify(&t, &suite, &opts).unwrap(), Format::Json);
        let b = emit_report(&run_verify(&t, &suite, &opts).unwrap(), Format::Json);
        if a != b {
            bad.push(format!("{id}: report is not byte-stable"));
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "7 laws x {CASES} cases within {TOL:e}; reports byte-stable"
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("catalog soundness", catalog_soundness),
        ("printed brackets", printed_brackets),
        ("J(Reeb) and dalpha^2", jofreeb_symbolic),
        ("K-Engel", k_engel),
        ("J-Engel splitting", splitting),
        ("flat T^4 construction", flat_torus),
        ("hyperelliptic equivariance", equivariance),
        ("algebraic laws and determinism", laws_and_stability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
