use std::path::PathBuf;
use std::process::{Command, Output};

use qcat_core::io::Document;

const FIXTURES: &[&str] = &[
    "q2",
    "c3",
    "diamond",
    "l2",
    "l3",
    "l4",
    "pz2",
    "pz3",
    "dl3",
    "pz3cat",
    "ab",
    "twopoint",
    "all1",
    "wordspace-2",
    "terminal-3",
];

/// `(golden name, arguments, expected exit code)`. Inputs are paths relative to the crate root.
const REPORTS: &[(&str, &[&str], i32)] = &[
    ("analyze-l3", &["analyze", "--in", "tests/golden/fixtures/l3.json"], 0),
    ("analyze-pz3", &["analyze", "--in", "tests/golden/fixtures/pz3.json"], 0),
    ("analyze-dl3", &["analyze", "--in", "fixture:dl3"], 0),
    ("diagonals-l2", &["diagonals", "--in", "fixture:l2"], 0),
    (
        "closure-pz3cat",
        &["closure", "--in", "tests/golden/fixtures/pz3cat.json", "--set", "i"],
        0,
    ),
    (
        "symcompare-pz3cat",
        &["symcompare", "--in", "tests/golden/fixtures/pz3cat.json", "--set", "i"],
        1,
    ),
    ("complete-ab", &["complete", "--in", "fixture:ab"], 0),
    ("complete-pz3cat", &["complete", "--in", "fixture:pz3cat"], 0),
    ("hausdorff-ab", &["hausdorff", "--in", "fixture:ab"], 0),
    (
        "hausdorff-ab-untyped",
        &[
            "hausdorff",
            "--in",
            "fixture:ab",
            "--set",
            "a",
            "--set",
            "a,b",
            "--set",
            "b",
        ],
        1,
    ),
    ("closure-ab", &["closure", "--in", "fixture:ab", "--set", "a"], 0),
    (
        "exponentiable-twopoint",
        &[
            "exponentiable",
            "--in",
            "tests/golden/fixtures/twopoint.json",
            "--step",
            "1/2",
            "--cap",
            "3",
        ],
        1,
    ),
    (
        "exponentiable-empty",
        &[
            "exponentiable",
            "--in",
            "tests/data/empty.json",
            "--step",
            "1/2",
            "--cap",
            "3",
        ],
        0,
    ),
    (
        "converge-alternating",
        &["converge", "--in", "tests/data/ab-alternating.json"],
        1,
    ),
    (
        "converge-eventually-b",
        &["converge", "--in", "tests/data/ab-eventually-b.json"],
        0,
    ),
    ("validate-wordspace", &["validate", "--in", "fixture:wordspace-2"], 0),
];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn qcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("qcat runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// Compares against a committed golden file; `BLESS=1` rewrites it instead.
fn golden(rel: &str, actual: &str) {
    let path = root().join("tests/golden").join(rel);
    if std::env::var_os("BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, want, "{rel} differs from its golden file");
}

fn without_timing(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn fixture_documents_match_goldens() {
    for name in FIXTURES {
        let o = qcat(&["fixtures", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        golden(&format!("fixtures/{name}.json"), &stdout(&o));
    }
}

#[test]
fn golden_fixture_files_round_trip_byte_identically() {
    for name in FIXTURES {
        let path = root().join(format!("tests/golden/fixtures/{name}.json"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(Document::parse(&text).unwrap().emit(), text, "{name}");
    }
}

#[test]
fn reports_match_goldens_and_exit_codes() {
    for (name, args, code) in REPORTS {
        let o = qcat(args);
        assert_eq!(
            o.status.code(),
            Some(*code),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        golden(&format!("reports/{name}.txt"), &stdout(&o));
    }
}

#[test]
fn every_fixture_validates() {
    for name in FIXTURES {
        let o = qcat(&["validate", "--in", &format!("fixture:{name}")]);
        assert_eq!(o.status.code(), Some(0), "{name}");
    }
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    for (name, args, _) in REPORTS {
        let mut args = args.to_vec();
        args.push("--json");
        let a = without_timing(&stdout(&qcat(&args)));
        let b = without_timing(&stdout(&qcat(&args)));
        assert_eq!(a, b, "{name}");
        assert_eq!(a["command"], args[0]);
    }
}

#[test]
fn negative_verdicts_carry_witnesses() {
    for (name, args, code) in REPORTS {
        if *code != 1 {
            continue;
        }
        let mut args = args.to_vec();
        args.push("--json");
        let v = without_timing(&stdout(&qcat(&args)));
        let checks = v["verdicts"]["checks"].as_array().unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| c["ok"] == false).collect();
        assert!(!failed.is_empty(), "{name}");
        assert!(failed.iter().all(|c| c["witness"].is_array()), "{name}");
    }
}

#[test]
fn exponentiable_witness_is_one_one_one() {
    let o = qcat(&[
        "exponentiable",
        "--in",
        "fixture:twopoint",
        "--step",
        "1/2",
        "--cap",
        "3",
        "--json",
    ]);
    let v = without_timing(&stdout(&o));
    let w = v["verdicts"]["checks"][0]["witness"].as_array().unwrap();
    let get = |role: &str| w.iter().find(|e| e["role"] == role).unwrap()["text"].clone();
    assert_eq!((get("u"), get("v"), get("w")), ("1".into(), "1".into(), "1".into()));
}

#[test]
fn usage_and_structural_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["bogus"],
        &["analyze", "--bogus"],
        &["analyze"],
        &["analyze", "--in", "tests/data/does-not-exist.json"],
        &["analyze", "--in", "fixture:ab"],
        &["exponentiable", "--in", "fixture:twopoint", "--step", "x"],
        &["fixtures", "l9"],
        &["closure", "--in", "fixture:pz3cat", "--set", "nope"],
    ];
    for args in cases {
        let o = qcat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn fixture_listing_names_every_fixture() {
    let out = stdout(&qcat(&["fixtures"]));
    for name in ["q2", "dl3", "wordspace-k", "terminal-k", "twopoint", "all1"] {
        assert!(out.lines().any(|l| l == name), "{name}");
    }
}
