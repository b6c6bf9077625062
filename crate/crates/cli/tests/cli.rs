use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn holokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holokit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON report")
}

fn build_metric(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let o = holokit(&[
        "catalog",
        "build-metric",
        name,
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn n0_row4_meets_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metric(dir.path(), "n0-row4");
    let o = holokit(&["holonomy", m.to_str().unwrap(), "--expect", "n0-gamma:0:0"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["data"]["dim"], 1);
    assert_eq!(r["data"]["stabilized"], true);
    assert_eq!(r["results"][0]["pass"], true);
}

#[test]
fn wrong_expectation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metric(dir.path(), "n0-row1");
    let o = holokit(&["holonomy", m.to_str().unwrap(), "--expect", "n0-2"]);
    assert_eq!(code(&o), 2);
    assert_eq!(report(&o)["results"][0]["pass"], false);
}

#[test]
fn flat_metric_has_trivial_holonomy() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat.json");
    std::fs::write(
        &path,
        r#"{"dim": 2, "basepoint": ["0", "0"], "g": [[[], [{"coef": "1", "exps": [0, 0]}]], [[{"coef": "1", "exps": [0, 0]}], []]]}"#,
    )
    .unwrap();
    let o = holokit(&["holonomy", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["data"]["dim"], 0);
}

#[test]
fn ikemakhen_metric_is_lorentz2() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metric(dir.path(), "ikemakhen");
    let o = holokit(&["holonomy", m.to_str().unwrap(), "--expect", "lorentz2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["data"]["dim"], 8);
}

#[test]
fn catalog_list_names_families() {
    let o = holokit(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    let ids: Vec<String> = report(&o)["data"]["families"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids.len(), 23);
    assert!(ids.iter().any(|i| i == "hol-n0-gamma"));
    assert!(ids.iter().any(|i| i == "lorentz4"));
}

#[test]
fn build_algebra_checks_constraints() {
    let bad = holokit(&[
        "catalog",
        "build-algebra",
        "n-u-psi-k-l",
        "--n",
        "2",
        "--k",
        "2",
        "--l",
        "1",
    ]);
    assert_eq!(code(&bad), 1);
    let good = holokit(&[
        "catalog",
        "build-algebra",
        "n-u-psi-k-l",
        "--n",
        "2",
        "--k",
        "1",
        "--l",
        "1",
        "--u",
        "j",
        "--psi",
        "1",
    ]);
    assert_eq!(code(&good), 0, "{}", String::from_utf8_lossy(&good.stderr));
    assert_eq!(report(&good)["data"]["dim"], 5);
}

#[test]
fn built_algebra_round_trips_through_algebra_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let o = holokit(&[
        "catalog",
        "build-algebra",
        "n0-2",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let b = holokit(&["algebra", "berger", path.to_str().unwrap()]);
    assert_eq!(code(&b), 0);
    assert_eq!(report(&b)["data"]["berger"], true);
    let c = holokit(&["algebra", "curvspace", path.to_str().unwrap()]);
    assert_eq!(report(&c)["data"]["dim"], 2);
}

#[test]
fn builtin_symmetric_pairs() {
    let o = holokit(&["symmetric", "--builtin", "hol1-pos", "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["data"]["r0_dim"], 1);
    let o = holokit(&["symmetric", "--builtin", "hol2", "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["data"]["r0_dim"], 2);
}

#[test]
fn zero_tensor_pair_fails_checks() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("a.json");
    assert_eq!(
        code(&holokit(&[
            "catalog",
            "build-algebra",
            "n0-1",
            "-o",
            alg.to_str().unwrap()
        ])),
        0
    );
    let algebra: Value = serde_json::from_str(&std::fs::read_to_string(&alg).unwrap()).unwrap();
    let pair = serde_json::json!({"algebra": algebra, "tensor": {"dim": 4, "values": []}});
    let path = dir.path().join("pair.json");
    std::fs::write(&path, pair.to_string()).unwrap();
    let o = holokit(&["symmetric", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn malformed_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{").unwrap();
    assert_eq!(code(&holokit(&["holonomy", path.to_str().unwrap()])), 1);
    assert_eq!(code(&holokit(&["holonomy", "/nonexistent/metric.json"])), 1);
    assert_eq!(code(&holokit(&["no-such-command"])), 1);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_metric(dir.path(), "n0-row2");
    let a = holokit(&["holonomy", m.to_str().unwrap(), "--identify"]);
    let b = holokit(&["holonomy", m.to_str().unwrap(), "--identify"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(report(&a).get("timing_ms").is_none());
}

#[test]
fn repro_subset_passes() {
    let o = holokit(&["repro", "--criteria", "3,5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["data"]["criteria"].as_array().unwrap().len(), 2);
}

const NULL_GRAM: &str = r#"{"rows":4,"cols":4,"entries":[["0","0","1","0"],["0","0","0","1"],["1","0","0","0"],["0","1","0","0"]]}"#;

fn lie_group_file(dir: &Path, name: &str, brackets: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let text = format!(r#"{{"dim": 4, "gram": {NULL_GRAM}, "brackets": {brackets}}}"#);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn lie_group_examples() {
    let dir = tempfile::tempdir().unwrap();
    let g1 = lie_group_file(
        dir.path(),
        "g1",
        r#"[{"i":0,"j":2,"coeffs":["1","0","0","1"]},{"i":0,"j":3,"coeffs":["0","-1","-1","0"]},
            {"i":1,"j":2,"coeffs":["0","1","1","0"]},{"i":1,"j":3,"coeffs":["1","0","0","1"]}]"#,
    );
    let o = holokit(&["liegroup", g1.to_str().unwrap(), "--expect", "n0-2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let g2 = lie_group_file(
        dir.path(),
        "g2",
        r#"[{"i":0,"j":3,"coeffs":["1","0","0","0"]},{"i":1,"j":2,"coeffs":["-1","0","0","0"]},
            {"i":2,"j":3,"coeffs":["1","0","1","0"]}]"#,
    );
    let o = holokit(&["liegroup", g2.to_str().unwrap(), "--expect", "n0-gamma:0:1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let abelian = lie_group_file(dir.path(), "abelian", "[]");
    let o = holokit(&["liegroup", abelian.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["data"]["dim"], 0);
}

#[test]
fn algebra_examples() {
    use holokit::catalog::families::{gen_a1, pk_algebra};
    let dir = tempfile::tempdir().unwrap();
    let a1 = dir.path().join("a1.json");
    let alg = pk_algebra(0, &[gen_a1(0)]).unwrap();
    std::fs::write(&a1, serde_json::to_string(&alg.to_json()).unwrap()).unwrap();
    let o = holokit(&["algebra", "weakirr", a1.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["data"]["verdict"], "reducible");

    let u11 = dir.path().join("u11.json");
    let b = holokit(&[
        "catalog",
        "build-algebra",
        "hol-n0-1",
        "-o",
        u11.to_str().unwrap(),
    ]);
    assert_eq!(code(&b), 0);
    let o = holokit(&["algebra", "curvspace", u11.to_str().unwrap()]);
    assert_eq!(report(&o)["data"]["dim"], 5);
}

#[test]
fn table_preset_alias() {
    let dir = tempfile::tempdir().unwrap();
    let a = build_metric(dir.path(), "tabhol0-row2");
    let b = build_metric(dir.path(), "n0-row2");
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
