use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn steinkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = steinkit(&full);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// `key=value` pairs from a table line.
fn field<'a>(table: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}=");
    table
        .split_whitespace()
        .find_map(|w| w.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no {key} in {table:?}"))
}

#[test]
fn brieskorn_invariants_table() {
    let o = steinkit(&["brieskorn", "invariants", "2", "3", "5"]);
    assert!(o.status.success());
    let t = stdout(&o);
    for (k, v) in [("b2", "8"), ("chi", "9"), ("sigma", "-8"), ("theta", "6")] {
        assert_eq!(field(&t, k), v);
    }
}

#[test]
fn table_and_json_agree() {
    for triple in [
        ["2", "3", "5"],
        ["2", "3", "7"],
        ["3", "4", "11"],
        ["2", "7", "13"],
    ] {
        let mut args = vec!["brieskorn", "invariants"];
        args.extend_from_slice(&triple);
        let t = stdout(&steinkit(&args));
        let j = json(&args);
        assert_eq!(field(&t, "b2"), j["b2"].to_string());
        assert_eq!(field(&t, "chi"), j["chi"].to_string());
        assert_eq!(field(&t, "sigma"), j["sigma"].to_string());
        assert_eq!(field(&t, "theta"), j["theta_boundary"].to_string());
    }
    let t = stdout(&steinkit(&["nucleus", "3", "5", "2"]));
    let j = json(&["nucleus", "3", "5", "2"]);
    assert_eq!(field(&t, "c1_squared"), j["c1_squared"].to_string());
    assert_eq!(field(&t, "det"), j["analysis"]["det"].to_string());
    assert_eq!(
        field(&t, "theta"),
        j["analysis"]["theta_boundary"].to_string()
    );
}

#[test]
fn json_is_canonical_and_deterministic() {
    let args = [
        "--format",
        "json",
        "brieskorn",
        "sigma-sweep",
        "--pmax",
        "6",
        "--nmax",
        "3",
    ];
    let a = steinkit(&args);
    let b = steinkit(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["all_agree"], Value::Bool(true));
    let keys: Vec<_> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["p"].as_i64().unwrap(),
                r["q"].as_i64().unwrap(),
                r["n"].as_i64().unwrap(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // compact output with keys in sorted order
    let text = stdout(&a);
    assert!(
        text.starts_with("{\"all_agree\":true,\"rows\":[{\"agree\":true,\"n\":1,\"p\":2"),
        "{text}"
    );
}

#[test]
fn rationals_serialize_as_num_den() {
    let j = json(&["nucleus", "2", "3", "2"]);
    assert_eq!(
        j["analysis"]["c1_squared"],
        serde_json::json!({"den": 1, "num": 0})
    );
    let k = scratch("third.kirby", "1-handles 0\nhandle tb=7 r=2 framing=6\n");
    let j = json(&["handlebody", "analyze", k.to_str().unwrap()]);
    assert_eq!(j["c1_squared"], serde_json::json!({"den": 3, "num": 2}));
    let k = scratch("one.kirby", "1-handles 0\nhandle tb=3 r=2 framing=2\n");
    let j = json(&["handlebody", "analyze", k.to_str().unwrap()]);
    assert_eq!(j["c1_squared"], serde_json::json!({"den": 1, "num": 2}));
    assert_eq!(j["theta_boundary"], Value::Null);
}

#[test]
fn torus_knot_prints_word_and_invariants() {
    let o = steinkit(&["torus-knot", "2", "3"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.lines().any(|l| l == "tb=1 r=0"), "{t}");
    assert!(t.lines().any(|l| l.starts_with("L 0; L 1;")), "{t}");

    let j = json(&["torus-knot", "3", "4", "--stabilize", "2,1"]);
    // max tb is (2l-1, 0) with l = 3; two up and one down give (2, -1)
    assert_eq!((j["tb"].as_i64(), j["r"].as_i64()), (Some(2), Some(-1)));
}

#[test]
fn stabilize_then_stats_round_trips() {
    let base = scratch(
        "trefoil.front",
        &stdout(&steinkit(&["torus-knot", "2", "3"]))
            .lines()
            .nth(1)
            .unwrap()
            .replace("; ", "\n"),
    );
    let before = json(&["front", "stats", base.to_str().unwrap()]);
    assert_eq!(before["components"][0]["tb"], 1);
    let mut path = base;
    let mut expect = (1i64, 0i64);
    for (i, dir) in ["up", "down", "down", "up", "down"].iter().enumerate() {
        let o = steinkit(&[
            "front",
            "stabilize",
            path.to_str().unwrap(),
            "--component",
            "0",
            "--dir",
            dir,
            "--at",
            "1",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        path = scratch(&format!("trefoil-{i}.front"), &stdout(&o));
        expect = if *dir == "up" {
            (expect.0 - 1, expect.1 - 1)
        } else {
            (expect.0 - 1, expect.1 + 1)
        };
        let s = json(&["front", "stats", path.to_str().unwrap()]);
        let c = &s["components"][0];
        assert_eq!(
            (c["tb"].as_i64().unwrap(), c["r"].as_i64().unwrap()),
            expect
        );
    }
}

#[test]
fn two_component_stats() {
    let f = scratch("hopf.front", "# Hopf link\nL 0\nL 1\nX 0\nX 0\nR 1\nR 0\n");
    let j = json(&["front", "stats", f.to_str().unwrap()]);
    assert_eq!(j["components"].as_array().unwrap().len(), 2);
    assert_eq!(j["linking"], serde_json::json!([{"i": 0, "j": 1, "lk": 1}]));
    let t = stdout(&steinkit(&["front", "stats", f.to_str().unwrap()]));
    assert!(t.contains("lk(0,1)=1"), "{t}");
}

#[test]
fn domain_errors_exit_one_with_typed_name() {
    let cases: &[(&[&str], &str)] = &[
        (&["check", "embed", "2", "5", "-1"], "ExcludedCase"),
        (&["check", "embed", "2", "3", "-1"], "ExcludedCase"),
        (&["check", "prop-theta", "2", "3", "2"], "InvalidEpsilon"),
        (&["nucleus", "2", "3", "1"], "ExcludedCase"),
        (&["brieskorn", "invariants", "2", "4", "5"], "InvalidTriple"),
        (&["torus-knot", "2", "4"], "InvalidParams"),
    ];
    for (args, name) in cases {
        let o = steinkit(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(
            stderr(&o).starts_with(&format!("{name}:")),
            "{args:?}: {}",
            stderr(&o)
        );
        assert!(o.stdout.is_empty());
    }
    let bad = scratch("bad.front", "L 0\nR 1\n");
    let o = steinkit(&["front", "stats", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("InvalidPosition:"), "{}", stderr(&o));
    let bad = scratch("bad.kirby", "1-handles 0\nhandle tb=1 r=0 framing=3\n");
    let o = steinkit(&["handlebody", "analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("FramingMismatch:"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["bogus"],
        &["brieskorn", "invariants", "2", "3"],
        &["check", "hirz", "--tb", "1"],
        &["front", "stats", "/definitely/not/here.front"],
        &["torus-knot", "2", "3", "--stabilize", "1"],
        &["brieskorn", "surgery", "2", "3", "1", "x"],
        &["--format", "yaml", "nucleus", "2", "3", "2"],
        &[
            "check", "slice", "--tb", "1", "--r", "0", "--g", "1", "--extra",
        ],
    ];
    for args in cases {
        let o = steinkit(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(
            stderr(&o).starts_with("UsageError:"),
            "{args:?}: {}",
            stderr(&o)
        );
    }
    assert_eq!(steinkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn checks_report_schedules() {
    let j = json(&["check", "embed", "3", "4", "1"]);
    // l = 3: schedule (l-1, l) reaching (0, 1)
    assert_eq!(j["schedule"], serde_json::json!({"down": 3, "up": 2}));
    assert_eq!(j["target"], serde_json::json!({"r": 1, "tb": 0}));
    let j = json(&[
        "check", "flip", "--r0", "-3", "--up", "2", "--down", "1", "--target", "1",
    ]);
    assert_eq!(j, serde_json::json!({"feasible": true, "flips": 2}));
    let j = json(&["check", "slice", "--tb", "5", "--r", "0", "--g", "3"]);
    assert_eq!(j["satisfied"], true);
    let j = json(&["check", "slice", "--tb", "5", "--r", "-1", "--g", "3"]);
    assert_eq!(j["satisfied"], false);
    let j = json(&["brieskorn", "surgery", "2", "3", "1", "-"]);
    assert_eq!(
        j["result"],
        serde_json::json!({"sign": "+", "triple": [2, 3, 7]})
    );
    let j = json(&["brieskorn", "seifert", "2", "3", "5"]);
    assert_eq!(
        (j["q1"].as_i64(), j["q2"].as_i64(), j["q3"].as_i64()),
        (Some(1), Some(1), Some(-4))
    );
}
