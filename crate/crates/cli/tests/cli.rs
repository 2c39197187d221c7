use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn spinc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinc")).args(args).output().expect("spinc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = spinc(&full);
    let value: Value = serde_json::from_slice(&out.stdout).expect("valid JSON report");
    assert_eq!(value["schema"], 1);
    (value, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn clifford_check_exit_codes() {
    let out = spinc(&["clifford-check", "--dim", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("relations: pass"));
    assert_eq!(spinc(&["clifford-check", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(spinc(&["clifford-check", "--dim", "9"]).status.code(), Some(2));
}

#[test]
fn clifford_check_odd_generator_sign() {
    let (report, code) = json(&["clifford-check", "--dim", "5"]);
    assert_eq!(code, 0);
    let j0 = &report["results"]["jmaps"][0];
    assert_eq!(j0["map"], "j0");
    // (-1)^{m+1} with m = 2 on e5
    assert_eq!(j0["signs"][4], -1);
    assert_eq!(j0["signs"][0], 1);
}

#[test]
fn assemble_index_zero_is_symmetric() {
    let (report, code) = json(&["assemble", "--f1", "torus:0,0", "--f2", "circle:0.3", "--cutoff", "4"]);
    assert_eq!(code, 0);
    let results = &report["results"];
    assert_eq!(results["symmetric"], true);
    assert_eq!(results["verdict"]["kind"], "symmetric");
    assert_eq!(results["verdict"]["index"], 0);
    assert_eq!(results["oracle"]["match"], true);
    assert!(results["spectrum_text"].as_str().unwrap().starts_with("#cutoff 4/1\n#q 1\n"));
}

#[test]
fn assemble_from_file_is_asymmetric_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let even = write(dir.path(), "even.spec", "#cutoff 2\n#p 1\n#a1 1\n#a2 0\n1 1 1\n");
    let f1 = format!("file:{even}");
    let (report, code) = json(&["assemble", "--f1", &f1, "--f2", "circle:0.3", "--cutoff", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["symmetric"], false);
    assert_eq!(report["results"]["verdict"]["kind"], "asymmetric");
    let w = &report["results"]["verdict"]["witness"];
    assert_eq!(w["defect"].as_i64().unwrap().abs(), 1);
    assert!(report["results"]["oracle"].is_null());
}

#[test]
fn assemble_writes_spectrum_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("product.spec");
    let o = spinc(&["assemble", "--f1", "torus:1/2,0", "--f2", "circle:1/4", "--cutoff", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("#cutoff 2/1\n#q 1\n"));
    // the written file reads back as an odd factor
    let f = format!("file:{}", out.display());
    let (report, code) = json(&["eta", "--model", &f, "--s", "2"]);
    assert_eq!(code, 0);
    assert!(report["results"]["eta_partial"]["value"].is_number());
}

#[test]
fn assemble_errors() {
    assert_eq!(spinc(&["assemble", "--f1", "circle:0", "--f2", "circle:0", "--cutoff", "2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.spec", "#cutoff 1\n#p 1\n#a1 0\n#a2 0\n1 4/1 1\n");
    let o = spinc(&["assemble", "--f1", &format!("file:{bad}"), "--f2", "circle:0", "--cutoff", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
    let o = spinc(&["assemble", "--f1", "torus:0,0", "--f2", "circle:0", "--cutoff", "x"]);
    assert_eq!(o.status.code(), Some(2));
    // stored spectrum known only to 1 cannot feed a cutoff of 2
    let small = write(dir.path(), "small.spec", "#cutoff 1\n#p 1\n#a1 0\n#a2 0\n1 1 4\n");
    let o = spinc(&["assemble", "--f1", &format!("file:{small}"), "--f2", "circle:0", "--cutoff", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_descriptor() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "torus.cfg", "model = flat_torus\na1 = 0\na2 = 0\n");
    let (report, code) = json(&["assemble", "--f1", &format!("config:{cfg}"), "--f2", "circle:0.3", "--cutoff", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["symmetric"], true);
}

#[test]
fn eta_values() {
    let (r, _) = json(&["eta", "--circle", "0.3", "--zero"]);
    assert_eq!(r["results"]["eta_zero"], "2/5");
    let (r, _) = json(&["eta", "--circle", "0.5", "--zero"]);
    assert_eq!(r["results"]["eta_zero"], "0");
    let dir = tempfile::tempdir().unwrap();
    let sym = write(dir.path(), "sym.spec", "#cutoff 2\n#q 0\n-1 1 2\n1 1 2\n-1 2 1\n1 2 1\n");
    let (r, code) = json(&["eta", "--spec", &sym, "--s", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["eta_partial"]["value"], 0.0);
    assert_eq!(spinc(&["eta", "--spec", &sym, "--zero"]).status.code(), Some(2));
    assert_eq!(spinc(&["eta", "--circle", "0.3"]).status.code(), Some(2));
}

#[test]
fn index_values() {
    let o = spinc(&["index", "--dim", "2", "--c1", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("index = 2\n"));
    let (r, _) = json(&["index", "--dim", "4", "--c1sq", "0", "--p1", "-48"]);
    assert_eq!(r["results"]["index"], "2");
    assert_eq!(spinc(&["index", "--dim", "6", "--c1", "0"]).status.code(), Some(2));
    assert_eq!(spinc(&["index", "--dim", "2", "--c1", "3"]).status.code(), Some(1));
}

#[test]
fn oracle_checks() {
    let (r, code) = json(&["oracle", "--t2", "0,0", "--s1", "0.3", "--cutoff", "5", "--check", "spectrum"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["spectrum"]["match"], true);
    let (r, code) = json(&["oracle", "--t2", "1/3,2/5", "--s1", "0.3", "--check", "prop1"]);
    assert_eq!(code, 0);
    assert!(r["results"]["prop1"]["max_residual"].as_f64().unwrap() <= 1e-12);
    let (r, code) = json(&["oracle", "--t2", "0,0", "--s1", "0", "--check", "lemma33"]);
    assert_eq!(code, 0);
    let entries = &r["results"]["lemma33"]["entries"];
    // (-1)^{m+1} = +1 for m = 1
    assert_eq!(entries[1]["map"], "j1");
    assert_eq!(entries[1]["sign"], 1);
    assert_eq!(spinc(&["oracle", "--t2", "0,0", "--s1", "0", "--check", "prop2"]).status.code(), Some(2));
    let (r, code) = json(&["oracle", "--t2", "0,0", "--s1", "0", "--check", "prop2,prop3", "--symbol", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["prop3"]["sign_table"][0]["map"], "ĵ*");
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["assemble", "--f1", "torus:1/3,2/5", "--f2", "circle:0.3", "--cutoff", "3", "--json"];
    let a = spinc(&args);
    let b = spinc(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["oracle", "--t2", "1/2,0", "--s1", "1/4", "--check", "lemma33,prop1,spectrum", "--json"];
    assert_eq!(spinc(&args).stdout, spinc(&args).stdout);
}
