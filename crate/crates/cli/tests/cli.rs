use std::path::Path;
use std::process::{Command, Output};

const A: &str = "computad A\n2cells a1 a2 a3\n3cell f : a1 * a2 -> a3\n";
const B: &str = "computad B\n2cells b1 b2 b3\n3cell g : b1 * b2 -> b3\n";
const E: &str = "computad E\n2cells x y\n";
const ALPHA1: &str = "morphism alpha1 : E -> A\n2 x -> a1\n2 y -> a3\n";
const ALPHA2: &str = "morphism alpha2 : E -> A\n2 x -> a2\n2 y -> a3\n";

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_computads"))
        .args(args)
        .current_dir(dir)
        .env_remove("COMPUTADS_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("A.cpd", A),
        ("B.cpd", B),
        ("E.cpd", E),
        ("alpha1.mor", ALPHA1),
        ("alpha2.mor", ALPHA2),
    ] {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

/// Runs a command and compares status and standard output with a transcript.
fn transcript(dir: &Path, args: &[&str], status: i32, expected: &str) {
    let out = run_in(dir, args);
    assert_eq!(
        out.status.code(),
        Some(status),
        "{args:?}: stderr {}",
        stderr(&out)
    );
    assert_eq!(stdout(&out), expected, "{args:?}");
}

#[test]
fn paper_matches_golden_report() {
    let dir = tempfile::tempdir().unwrap();
    transcript(dir.path(), &["paper"], 0, include_str!("golden/paper.txt"));
    transcript(
        dir.path(),
        &["paper-empty-target"],
        0,
        include_str!("golden/paper-empty-target.txt"),
    );
}

#[test]
fn paper_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = run_in(dir.path(), &["paper"]);
    let second = run_in(dir.path(), &["paper"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).ends_with("VERDICT: coequaliser NOT preserved by - x B\n"));
    let json1 = run_in(dir.path(), &["paper", "--json"]);
    let json2 = run_in(dir.path(), &["paper", "--json"]);
    assert_eq!(json1.stdout, json2.stdout);
    assert!(stdout(&json1).contains("\"verdict\": \"not-preserved\""));
}

#[test]
fn pipeline_dumps_are_not_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["paper", "--out-dir", "dump"]);
    assert_eq!(out.status.code(), Some(0));
    transcript(
        dir.path(),
        &["iso", "dump/P.cpd", "dump/CxB.cpd"],
        1,
        "NOT-ISOMORPHIC\n",
    );
    for f in ["P.cpd", "CxB.cpd", "AxB.cpd", "comparison.mor", "qP.mor"] {
        let path = format!("dump/{f}");
        transcript(
            dir.path(),
            &["validate", &path],
            0,
            &format!("{path}: valid\n"),
        );
    }
    // The dumped pair reproduces C.
    let c = std::fs::read_to_string(dir.path().join("dump/C.cpd")).unwrap();
    let out = run_in(dir.path(), &["coeq", "dump/alpha1.mor", "dump/alpha2.mor"]);
    assert_eq!(stdout(&out).replacen("computad A_coeq", "computad C", 1), c);
}

#[test]
fn pairings_transcript() {
    let dir = tempfile::tempdir().unwrap();
    transcript(
        dir.path(),
        &["pairings", "a1*a2", "b1*b2"],
        0,
        "(a1,b1) * (a2,b2)\n(a1,b2) * (a2,b1)\n2 pairings\n",
    );
    transcript(
        dir.path(),
        &["pairings", "a*a", "b1*b2"],
        0,
        "(a,b1) * (a,b2)\n1 pairing\n",
    );
    transcript(
        dir.path(),
        &["pairings", "a", "b1*b2", "--count"],
        0,
        "0 pairings\n",
    );
    transcript(dir.path(), &["pairings", "1", "1"], 0, "1\n1 pairing\n");
}

#[test]
fn product_round_trips_through_validate() {
    let dir = fixtures();
    let out = run_in(
        dir.path(),
        &["product", "A.cpd", "B.cpd", "-o", "AxB.cpd", "-v"],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "");
    transcript(dir.path(), &["validate", "AxB.cpd"], 0, "AxB.cpd: valid\n");
    transcript(
        dir.path(),
        &["product", "A.cpd", "B.cpd", "-v"],
        0,
        "computad AxB\n\
         2cells (a1,b1) (a1,b2) (a1,b3) (a2,b1) (a2,b2) (a2,b3) (a3,b1) (a3,b2) (a3,b3)\n\
         3cell (f,g)#1 : (a1,b1) * (a2,b2) -> (a3,b3)\n\
         3cell (f,g)#2 : (a1,b2) * (a2,b1) -> (a3,b3)\n\
         # provenance\n\
         # (f,g)#1 = (f, g, (a1,b1) * (a2,b2), (a3,b3))\n\
         # (f,g)#2 = (f, g, (a1,b2) * (a2,b1), (a3,b3))\n",
    );
    // Products of generated-looking inputs also round-trip.
    std::fs::write(
        dir.path().join("X.cpd"),
        "computad X\n2cells c1 c2\n3cell e1 : c1 * c1 -> 1\n3cell e2 : 1 -> c2\n",
    )
    .unwrap();
    run_in(dir.path(), &["product", "X.cpd", "X.cpd", "-o", "XxX.cpd"]);
    transcript(dir.path(), &["validate", "XxX.cpd"], 0, "XxX.cpd: valid\n");
}

#[test]
fn coeq_transcript() {
    let dir = fixtures();
    transcript(
        dir.path(),
        &["coeq", "alpha1.mor", "alpha2.mor", "-v"],
        0,
        "computad A_coeq\n2cells [a1|a2] a3\n3cell f : [a1|a2] * [a1|a2] -> a3\n\
         # provenance\n# 2 [a1|a2] = {a1, a2}\n# 2 a3 = {a3}\n# 3 f = {f}\n",
    );
}

#[test]
fn iso_and_homs_transcripts() {
    let dir = fixtures();
    transcript(
        dir.path(),
        &["iso", "A.cpd", "B.cpd"],
        0,
        "morphism iso : A -> B\n2 a1 -> b1\n2 a2 -> b2\n2 a3 -> b3\n3 f -> g\n",
    );
    transcript(
        dir.path(),
        &["iso", "A.cpd", "E.cpd"],
        1,
        "NOT-ISOMORPHIC\n",
    );
    transcript(
        dir.path(),
        &["homs", "A.cpd", "B.cpd"],
        0,
        "morphism h1 : A -> B\n2 a1 -> b1\n2 a2 -> b2\n2 a3 -> b3\n3 f -> g\n\n\
         morphism h2 : A -> B\n2 a1 -> b2\n2 a2 -> b1\n2 a3 -> b3\n3 f -> g\n\n\
         2 morphisms A -> B\n",
    );
    transcript(
        dir.path(),
        &["homs", "E.cpd", "A.cpd", "--count"],
        0,
        "9 morphisms E -> A\n",
    );
}

#[test]
fn check_transcripts() {
    let dir = fixtures();
    transcript(
        dir.path(),
        &["check-product", "A.cpd", "B.cpd"],
        0,
        "product AxB = A x B bounds=(3,1,2) objects=59\nPASS cones=824\n",
    );
    transcript(
        dir.path(),
        &[
            "check-coeq",
            "alpha1.mor",
            "alpha2.mor",
            "--bounds",
            "3,2,2",
        ],
        0,
        "coequaliser A_coeq of E => A bounds=(3,2,2) objects=1382\nPASS cones=255\n",
    );
}

#[test]
fn validate_reports_violations() {
    let dir = fixtures();
    std::fs::write(
        dir.path().join("bad.cpd"),
        "computad Q\n2cells a a\n3cell f : a * b -> a\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["validate", "bad.cpd"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.ends_with("2 violations\n"), "{text}");
    assert!(text.contains("undeclared 2-cell `b`"), "{text}");

    std::fs::write(
        dir.path().join("swap.mor"),
        "morphism swap : A -> A\n2 a1 -> a3\n2 a2 -> a2\n2 a3 -> a1\n3 f -> f\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["validate", "swap.mor"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).ends_with("2 violations\n"));
}

#[test]
fn input_errors_exit_2_and_name_the_location() {
    let dir = fixtures();
    std::fs::write(
        dir.path().join("broken.cpd"),
        "computad Q\n2cells a\n\n3cell f : a -> a b\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["validate", "broken.cpd"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("broken.cpd:4: expected"), "{err}");

    let out = run_in(dir.path(), &["iso", "A.cpd", "missing.cpd"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("missing.cpd"));

    let out = run_in(dir.path(), &["frobnicate", "A.cpd"]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(
        dir.path().join("orphan.mor"),
        "morphism m : E -> Nowhere\n2 x -> y\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["coeq", "orphan.mor", "orphan.mor"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Nowhere"));

    let out = run_in(
        dir.path(),
        &["coeq", "alpha1.mor", "alpha1.mor", "--objects", "nowhere"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = fixtures();
    let out = run_in(dir.path(), &["--budget", "5", "homs", "A.cpd", "B.cpd"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("budget of 5"));

    let out = Command::new(env!("CARGO_BIN_EXE_computads"))
        .args(["check-product", "A.cpd", "B.cpd"])
        .current_dir(dir.path())
        .env("COMPUTADS_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
