use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use frechet_edit::io::{parse_curve_csv, script_from_json, ScriptOp};
use frechet_edit_core::frechet::{decide_continuous, decide_discrete};
use frechet_edit_core::EPS;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_frechet-edit"));
    c.env_remove("FRECHET_EDIT_ENUM_CAP");
    c
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn replayed(sigma: &Path, script: &Value) -> frechet_edit_core::Curve {
    let ops: Vec<ScriptOp> = serde_json::from_value(script.clone()).unwrap();
    let script = script_from_json(&ops).unwrap();
    let text = std::fs::read_to_string(sigma).unwrap();
    script
        .apply(&parse_curve_csv(&text, sigma).unwrap())
        .unwrap()
}

#[test]
fn discrete_delete_example() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0\n10\n");
    let sigma = put(d.path(), "sigma.csv", "0\n5\n10\n");
    let o = run(&[
        "decide",
        s(&pi),
        s(&sigma),
        "--delta",
        "1",
        "--ops",
        "delete",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["answer"], true);
    assert_eq!(r["cost"], 1);
    assert_eq!(r["variant"], "discrete");
    let edited = replayed(&sigma, &r["script"]);
    let pic = parse_curve_csv("0\n10\n", &pi).unwrap();
    assert!(decide_discrete(&pic, &edited, 1.0 + EPS).unwrap());
}

#[test]
fn budget_below_cost_is_infeasible() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0\n10\n");
    let sigma = put(d.path(), "sigma.csv", "0\n5\n10\n");
    let o = run(&[
        "decide",
        s(&pi),
        s(&sigma),
        "--delta",
        "1",
        "--ops",
        "delete",
        "--k",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o)["answer"], false);
    let o = run(&["decide", s(&pi), s(&sigma), "--delta", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn weak_needs_oracle() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0\n10\n");
    let o = run(&["decide", s(&pi), s(&pi), "--delta", "1", "--mode", "weak"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "decide",
        s(&pi),
        s(&pi),
        "--delta",
        "1",
        "--mode",
        "weak",
        "--oracle",
        "--ops",
        "delete",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["cost"], 0);
}

#[test]
fn enum_cap_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0\n10\n");
    let sigma = put(d.path(), "sigma.csv", "0\n50\n60\n70\n10\n");
    let args = [
        "decide",
        s(&pi),
        s(&sigma),
        "--delta",
        "1",
        "--mode",
        "weak",
        "--oracle",
        "--ops",
        "delete",
    ];
    let o = bin().args(args).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["cost"], 3);
    let o = bin()
        .args(args)
        .env("FRECHET_EDIT_ENUM_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn shortcut_has_no_cost() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0,0\n10,0\n");
    let sigma = put(d.path(), "sigma.csv", "0,0\n5,50\n10,0\n");
    let o = run(&[
        "decide",
        s(&pi),
        s(&sigma),
        "--delta",
        "1",
        "--variant",
        "continuous",
        "--ops",
        "shortcut",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["answer"], true);
    assert!(r.get("cost").is_none());
}

#[test]
fn continuous_reports_replay() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0,0\n5,6\n10,0\n");
    let sigma = put(d.path(), "sigma.csv", "0,0\n10,0\n");
    let o = run(&[
        "decide",
        s(&pi),
        s(&sigma),
        "--delta",
        "1",
        "--variant",
        "continuous",
        "--ops",
        "insert",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["cost"], 1);
    let edited = replayed(&sigma, &r["script"]);
    let pic = parse_curve_csv("0,0\n5,6\n10,0\n", &pi).unwrap();
    assert!(decide_continuous(&pic, &edited, 1.0 + EPS).unwrap());

    let o = run(&[
        "decide",
        s(&pi),
        s(&sigma),
        "--delta",
        "1",
        "--variant",
        "continuous",
        "--ops",
        "delete",
        "--two-sided",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["cost"], 1);
    assert_eq!(r["pi_script"][0]["index"], 2);
}

#[test]
fn planar_requirement_and_format_errors() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0\n10\n");
    let o = run(&[
        "decide",
        s(&pi),
        s(&pi),
        "--delta",
        "1",
        "--variant",
        "continuous",
        "--ops",
        "insert",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let bad = put(d.path(), "bad.csv", "0,0\n1,1\n2\n");
    let o = run(&["decide", s(&pi), s(&bad), "--delta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.csv:3"), "{err}");

    let plane = put(
        d.path(),
        "plane.json",
        r#"{"dim": 2, "vertices": [[0, 0], [1, 1]]}"#,
    );
    let o = run(&["decide", s(&pi), s(&plane), "--delta", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["decide", s(&plane), s(&plane), "--delta", "0"]);
    assert_eq!(o.status.code(), Some(0));
}

fn gen(cnf: &Path, kind: &str, lift: bool, out: &Path) -> Output {
    let mut args = vec!["gen-hardness", s(cnf), "--kind", kind, "--out", s(out)];
    if lift {
        args.push("--lift");
    }
    run(&args)
}

#[test]
fn gen_hardness_deletion_sigma() {
    let d = tempfile::tempdir().unwrap();
    let cnf = put(d.path(), "f.cnf", "c single clause\np cnf 1 1\n1 1 1 0\n");
    let out = d.path().join("a");
    assert_eq!(
        gen(&cnf, "delete-unlimited", false, &out).status.code(),
        Some(0)
    );
    let sigma = std::fs::read_to_string(out.join("sigma.csv")).unwrap();
    assert_eq!(sigma, "0\n9\n15\n20\n16\n14\n11\n15\n20\n30\n");
    let m: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["kind"], "delete-unlimited");
    assert!(m["budget"].is_null());
    assert!(!m["layers"].as_array().unwrap().is_empty());
}

#[test]
fn gen_hardness_is_deterministic_and_lifts() {
    let d = tempfile::tempdir().unwrap();
    let cnf = put(d.path(), "f.cnf", "p cnf 2 2\n1 -2 1 0\n-1 2 2 0\n");
    for kind in [
        "delete-unlimited",
        "delete-budget",
        "insert-budget",
        "edit-budget",
    ] {
        let (a, b) = (
            d.path().join(format!("{kind}-a")),
            d.path().join(format!("{kind}-b")),
        );
        assert_eq!(gen(&cnf, kind, false, &a).status.code(), Some(0));
        assert_eq!(gen(&cnf, kind, false, &b).status.code(), Some(0));
        for f in ["pi.csv", "sigma.csv", "manifest.json"] {
            assert_eq!(
                std::fs::read(a.join(f)).unwrap(),
                std::fs::read(b.join(f)).unwrap(),
                "{kind} {f}"
            );
        }
        let l = d.path().join(format!("{kind}-lift"));
        assert_eq!(gen(&cnf, kind, true, &l).status.code(), Some(0));
        let sigma = std::fs::read_to_string(l.join("sigma.csv")).unwrap();
        let lifted = parse_curve_csv(&sigma, &l).unwrap();
        assert_eq!(lifted.dim(), 2);
        assert!(lifted.vertices().iter().any(|p| p.coords()[1] == 1e6));
        let m: Value =
            serde_json::from_str(&std::fs::read_to_string(l.join("manifest.json")).unwrap())
                .unwrap();
        assert_eq!(m["dim"], 2);
        assert_eq!(m["lift"], 1e6);
    }
}

#[test]
fn gen_hardness_rejects_malformed_cnf() {
    let d = tempfile::tempdir().unwrap();
    for (i, text) in [
        "p cnf 1 1\n1 1 0\n",
        "1 1 1 0\n",
        "p cnf 1 1\n1 1 x 0\n",
        "p cnf 1 1\n",
    ]
    .iter()
    .enumerate()
    {
        let cnf = put(d.path(), &format!("bad{i}.cnf"), text);
        let o = gen(&cnf, "delete-unlimited", false, &d.path().join("o"));
        assert_eq!(o.status.code(), Some(2), "{text:?}");
    }
}

#[test]
fn render_matches_library() {
    let d = tempfile::tempdir().unwrap();
    let pi = put(d.path(), "pi.csv", "0\n1\n");
    let svg = d.path().join("a.svg");
    let o = run(&["render", s(&pi), s(&pi), "--delta", "10", "--out", s(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("class=\"cell\"").count(), 1);
    let o = run(&["render", s(&pi), s(&pi), "--delta", "10"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), text);
}
