//! Byte-for-byte comparison of CLI output against `tests/golden/*.out`.
//! Run with `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &[&str], i32)] = &[
    ("classify-cable", &["classify", "--knot", "C(2,3;T(2,3))"], 0),
    ("classify-cable-json", &["--json", "classify", "--knot", "C(2,3;T(2,3))"], 0),
    ("classify-trefoil", &["classify", "--knot", "T(2,3)"], 0),
    ("classify-unknown", &["classify", "--knot", "no such knot"], 2),
    ("expand-3", &["expand", "--tb", "-1", "--rot", "0", "--coeff", "3"], 0),
    ("expand-3-json", &["--json", "expand", "--tb", "-1", "--rot", "0", "--coeff", "3"], 0),
    ("expand-neg", &["expand", "--tb", "-2", "--rot", "1", "--coeff", "-5/2"], 0),
    ("expand-seven-thirds", &["expand", "--tb", "-1", "--rot", "0", "--coeff", "7/3"], 0),
    ("expand-zero", &["expand", "--tb", "-1", "--rot", "0", "--coeff", "0"], 2),
    ("expand-half", &["expand", "--tb", "-1", "--rot", "0", "--coeff", "1/2"], 1),
    ("d3-unknot-n2", &["d3", "--file", "fixtures/unknot-n2.json"], 0),
    ("d3-unknot-n2-json", &["--json", "d3", "--file", "fixtures/unknot-n2.json"], 0),
    ("d3-singular", &["d3", "--file", "fixtures/s1xs2.json"], 1),
    ("d3-zero-coeff", &["d3", "--file", "fixtures/zero-coeff.json"], 2),
    ("d3-broken", &["d3", "--file", "fixtures/broken.json"], 2),
    ("homology-unknot-n2", &["homology", "--file", "fixtures/unknot-n2.json"], 0),
    ("homology-unknot-n2-json", &["--json", "homology", "--file", "fixtures/unknot-n2.json"], 0),
    ("homology-singular", &["homology", "--file", "fixtures/s1xs2.json"], 0),
    (
        "ledger-cable",
        &["ledger", "--knot", "C(2,3;T(2,3))", "--tb", "6", "--rot", "-1", "--binding"],
        0,
    ),
    (
        "ledger-cable-json",
        &["--json", "ledger", "--knot", "C(2,3;T(2,3))", "--tb", "6", "--rot", "-1", "--binding", "--from", "6", "--to", "8"],
        0,
    ),
    (
        "ledger-positive-stabilization",
        &["ledger", "--knot", "T(2,3)", "--tb", "0", "--rot", "1", "--positive-stabilization", "--from", "-1", "--to", "2"],
        0,
    ),
    (
        "ledger-contradiction",
        &["ledger", "--tb", "3", "--rot", "0", "--facts", "fixtures/facts.json"],
        3,
    ),
    ("openbook-pipeline", &["openbook", "--pipeline", "2"], 0),
    ("openbook-pipeline-json", &["--json", "openbook", "--pipeline", "1"], 0),
    (
        "openbook-lantern",
        &["openbook", "--model", "lantern", "--lantern", "d1,d2,d3,d4,d12,d13,d23", "--action"],
        0,
    ),
    (
        "openbook-file",
        &[
            "openbook",
            "--file",
            "fixtures/twice-stabilized.json",
            "--xi-minus",
            "k-,k--,3",
            "--lantern",
            "k--,s2,s1,k,k-,d13,d23",
        ],
        0,
    ),
    ("openbook-cap", &["openbook", "--model", "once", "--xi-minus", "k,k-,2", "--cap", "outer"], 0),
    ("openbook-cap-unknown", &["openbook", "--model", "annulus", "--cap", "nowhere"], 2),
    ("catalog-trefoil", &["catalog", "T(2,3)"], 0),
    ("catalog-trefoil-json", &["--json", "catalog", "T(2,3)"], 0),
];

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

#[test]
fn golden_outputs() {
    let root = workspace();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, args, code) in CASES {
        let out = Command::new(env!("CARGO_BIN_EXE_csurg"))
            .args(*args)
            .current_dir(&root)
            .output()
            .unwrap();
        let mut got = String::from_utf8(out.stdout).unwrap();
        let err = String::from_utf8(out.stderr).unwrap();
        if !err.is_empty() {
            got.push_str("--- stderr\n");
            got.push_str(&err);
        }
        if out.status.code() != Some(*code) {
            failures.push(format!("{name}: exit {:?}, expected {code}\n{got}", out.status.code()));
            continue;
        }
        let path = dir.join(format!("{name}.out"));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if got != want {
            failures.push(format!("{name}: output differs\n--- expected\n{want}--- got\n{got}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_csurg"))
            .args(["--json", "expand", "--tb", "-3", "--rot", "0", "--coeff", "-7/3"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn expansions_parse_back() {
    let out = Command::new(env!("CARGO_BIN_EXE_csurg"))
        .args(["--json", "expand", "--tb", "-2", "--rot", "1", "--coeff", "9/4"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let pres = v["presentations"].as_array().unwrap();
    assert!(!pres.is_empty());
    for p in pres {
        let parsed = contact_surgery::parse_diagram(&p.to_string()).unwrap();
        assert_eq!(contact_surgery::DiagramFile::from_presentation(&parsed), serde_json::from_value(p.clone()).unwrap());
    }
}

#[test]
fn selftest_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_csurg")).arg("selftest").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains(" PASS ")).count(), 10);
}
