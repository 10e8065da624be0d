use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(args)
        .output()
        .expect("spawn");
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (out.status.code().expect("exit code"), report)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn sl2_casimir_is_central() {
    let (code, r) = run(&["verify", "--builtin", "sl2", "--op", "Omega", "--mode", "central"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["algebra"]["name"], "sl2");
    let item = &r["results"]["items"][0];
    assert_eq!(item["element"]["text"], "h + 2*f*e + 1/2*h^2");
    assert_eq!(item["report"]["checked_against"], serde_json::json!(["f", "h", "e"]));
    assert!(item["report"]["residuals"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["zero"] == true));
}

#[test]
fn gelfand_with_lagrange_points_is_central() {
    let (code, r) = run(&[
        "verify",
        "--builtin",
        "gl:2,1",
        "--op",
        "T[2](p1;p2)",
        "--points",
        "1,2",
        "--mode",
        "central",
    ]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn anti_invariant_residuals_are_reported() {
    let (code, r) = run(&["verify", "--builtin", "gl:2,1", "--op", "D[1]", "--mode", "anti"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    let residuals = r["results"]["items"][0]["report"]["residuals"].as_array().unwrap();
    assert_eq!(residuals.len(), 9);
    let e13 = residuals.iter().find(|x| x["generator"] == "E[1,3]").unwrap();
    assert_eq!(
        e13["residual"]["text"],
        "-2*E[1,3] + 2*E[1,1]*E[1,3] + 2*E[2,2]*E[1,3] - 2*E[3,3]*E[1,3]"
    );
    // even generators act by the plain commutator
    let e11 = residuals.iter().find(|x| x["generator"] == "E[1,1]").unwrap();
    assert_eq!(e11["zero"], true);
}

#[test]
fn anti_invariant_needs_rank_three_unless_overridden() {
    let (code, r) = run(&["verify", "--builtin", "gl:1,1", "--op", "D[2]", "--mode", "anti"]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("M+N >= 3"));
    let (code, _) = run(&[
        "verify",
        "--builtin",
        "gl:1,1",
        "--op",
        "D[2]",
        "--mode",
        "anti",
        "--allow-small",
    ]);
    assert!(code == 0 || code == 1);
}

#[test]
fn highest_weight_vector_of_natural_square() {
    let (code, r) = run(&[
        "module",
        "hwv",
        "--builtin",
        "gl:2,1",
        "--factors",
        "natural,natural",
        "--points",
        "1,2",
        "--weight",
        "2,0,0",
    ]);
    assert_eq!(code, 0);
    let module = &r["results"]["module"];
    assert_eq!(module["dimension"], 9);
    assert_eq!(module["basis"][0], "v1⊗v1");
    let hwv = &r["results"]["result"]["hwv"][0];
    assert_eq!(hwv["weight"], serde_json::json!(["2", "0", "0"]));
    let basis = hwv["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0][0], "1");
    assert!(basis[0].as_array().unwrap()[1..].iter().all(|x| x == "0"));
}

#[test]
fn module_suite_commands() {
    let base = ["--builtin", "gl:2,1", "--factors", "natural,natural", "--points", "1,2"];
    let with = |extra: &[&str]| -> Vec<String> {
        let mut v: Vec<String> = extra[..2].iter().map(|s| s.to_string()).collect();
        v.extend(base.iter().map(|s| s.to_string()));
        v.extend(extra[2..].iter().map(|s| s.to_string()));
        v
    };
    for (args, expect) in [
        (with(&["module", "stability", "--k", "2"]), 0),
        (with(&["module", "stability", "--k", "2", "--tuple", "2,1"]), 0),
        (with(&["module", "gelfand-sum", "--k", "2"]), 0),
        (with(&["module", "weights"]), 0),
        (with(&["module", "even-hwv"]), 0),
        (with(&["module", "act", "--op", "E[1,2](t^2)"]), 0),
        (with(&["module", "stability", "--k", "2", "--tuple", "1"]), 2),
    ] {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, r) = run(&refs);
        assert_eq!(code, expect, "{args:?}: {r}");
    }
}

#[test]
fn act_scales_by_point_powers() {
    let (code, r) = run(&[
        "module",
        "act",
        "--builtin",
        "gl:2,1",
        "--factors",
        "natural",
        "--points",
        "3",
        "--op",
        "E[1,2](t^2)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        r["results"]["result"]["matrix"]["entries"],
        serde_json::json!([[0, 1, "9"]])
    );
}

#[test]
fn module_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "m.json",
        r#"{"factors": ["natural", "natural"], "points": ["1", "-1/2"]}"#,
    );
    let (code, r) = run(&[
        "module",
        "gelfand-sum",
        "--builtin",
        "gl:2,1",
        "--module",
        &spec,
        "--k",
        "2",
    ]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"]["module"]["points"], serde_json::json!(["1", "-1/2"]));
}

#[test]
fn repeated_points_are_input_errors() {
    let (code, r) = run(&[
        "module",
        "weights",
        "--builtin",
        "gl:2,1",
        "--factors",
        "natural,natural",
        "--points",
        "1,1",
    ]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
}

#[test]
fn batch_file_reports_each_line() {
    let dir = tempfile::tempdir().unwrap();
    let batch = write(
        dir.path(),
        "ops.txt",
        "# casimirs\nOmega\n\nOmegaC - Omega\nOmega(t; t^-1)\n",
    );
    let (code, r) = run(&["eval", "--builtin", "osp12", "--batch", &batch]);
    assert_eq!(code, 0);
    let items = r["results"]["items"].as_array().unwrap();
    assert_eq!(items.iter().map(|i| i["line"].clone()).collect::<Vec<_>>(), [2, 4, 5]);
    assert_eq!(items[1]["element"]["text"], "0");

    let bad = write(dir.path(), "bad.txt", "Omega\nE[1,2] +\n");
    let (code, r) = run(&["eval", "--builtin", "gl:2,1", "--batch", &bad]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("line 2"), "{r}");
}

#[test]
fn algebra_file_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(["algebra", "export", "--builtin", "osp12"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let good = write(dir.path(), "osp.json", &text);

    let (code, from_file) = run(&["algebra", "info", "--algebra", &good]);
    assert_eq!(code, 0);
    let (_, builtin) = run(&["algebra", "info", "--builtin", "osp12"]);
    assert_eq!(from_file["algebra"], builtin["algebra"]);
    assert_eq!(from_file["results"], builtin["results"]);

    // flip the sign of one form entry: (e', f') = 1/4 -> -1/4 breaks invariance
    let mut doc: Value = serde_json::from_str(&text).unwrap();
    let form = doc["form"].as_array_mut().unwrap();
    let entry = form.iter_mut().find(|e| e[2] == "1/4").unwrap();
    entry[2] = Value::String("-1/4".into());
    let bad = write(dir.path(), "bad.json", &doc.to_string());
    let (code, r) = run(&["algebra", "validate", "--algebra", &bad]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    assert!(!r["results"]["violations"].as_array().unwrap().is_empty());
    let (code, r) = run(&["algebra", "info", "--algebra", &bad]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");

    let garbage = write(dir.path(), "garbage.json", "{\"name\": 3}");
    assert_eq!(run(&["algebra", "info", "--algebra", &garbage]).0, 2);
    assert_eq!(run(&["algebra", "info", "--algebra", "/nonexistent/x.json"]).0, 2);
}

#[test]
fn algebra_info_reports_rho_checks() {
    let (code, r) = run(&["algebra", "info", "--builtin", "gl11"]);
    assert_eq!(code, 0);
    let res = &r["results"];
    assert_eq!(res["h_rho"], "-1/2*h1 - 1/2*h2");
    assert!(res["rho_checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    assert_eq!(res["positive_roots"][0]["norm"], "0");
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["verify", "--builtin", "sl3", "--op", "Omega", "--mode", "central"],
        vec!["verify", "--builtin", "sl2", "--op", "Omega +", "--mode", "central"],
        vec!["verify", "--builtin", "sl2", "--op", "T[2]", "--mode", "central"],
        vec!["verify", "--builtin", "sl2", "--op", "x", "--mode", "central"],
        vec!["eval", "--builtin", "gl:2,1", "--op", "T[2](p1;p3)", "--points", "1,2"],
        vec!["eval", "--builtin", "sl2"],
    ] {
        let (code, r) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(r["status"], "error");
        assert!(r["error"].is_string());
    }
}

#[test]
fn even_central_reports_odd_residuals_informationally() {
    let (code, r) = run(&[
        "verify",
        "--builtin",
        "gl:2,1",
        "--op",
        "S[2]",
        "--mode",
        "even-central",
    ]);
    assert_eq!(code, 0);
    let rep = &r["results"]["items"][0]["report"];
    assert_eq!(rep["residuals"].as_array().unwrap().len(), 5);
    assert!(rep["informational"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["zero"] == false));
}

#[test]
fn json_file_matches_stdout_and_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = [
        "verify",
        "--builtin",
        "gl:2,2",
        "--op",
        "T[3]",
        "--mode",
        "central",
        "--json",
        path.to_str().unwrap(),
    ];
    let a = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(args)
        .output()
        .unwrap();
    let file = std::fs::read(&path).unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_superlie"))
        .args(args)
        .env("SUPERLIE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, file);
    assert_eq!(a.stdout, b.stdout);
}
