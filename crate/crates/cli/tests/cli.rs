use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn reflex24(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflex24")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reflex24-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_all_default_passes() {
    let out = reflex24(&["verify-all", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = json_of(&out);
    assert_eq!(report["config"]["radius_sq"], "8");
    assert_eq!(report["config"]["max_len"], 6);
    assert_eq!(report["config"]["max_cosets"], 100000);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "Pass"), "{checks:?}");
    assert_eq!(checks[0]["name"], "phi_group");
}

#[test]
fn degenerate_window_skips() {
    let out = reflex24(&["verify-all", "--radius-sq", "0", "--max-len", "3", "--max-cosets", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("SKIP k_construction"));
    assert!(text.contains("PASS phi_group"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("settings.toml");
    std::fs::write(&cfg, "radius_sq = 0\nmax_len = 2\nmax_cosets = 2000\njson = true\n").unwrap();
    let out = reflex24(&["--config", cfg.to_str().unwrap(), "verify-all", "--max-len", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["config"]["max_len"], 3);
    assert_eq!(report["config"]["max_cosets"], 2000);
    assert_eq!(report["config"]["radius_sq"], "0");
}

#[test]
fn config_errors_exit_2() {
    let cfg = scratch("bad.toml");
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(reflex24(&["--config", cfg.to_str().unwrap(), "verify-all"]).status.code(), Some(2));
    std::fs::write(&cfg, "max_len = \"six\"\n").unwrap();
    assert_eq!(reflex24(&["--config", cfg.to_str().unwrap(), "verify-all"]).status.code(), Some(2));
    let missing = scratch("missing.toml");
    assert_eq!(reflex24(&["--config", missing.to_str().unwrap(), "verify-all"]).status.code(), Some(2));
    assert_eq!(reflex24(&["verify-all", "--radius-sq", "-1"]).status.code(), Some(2));
    assert_eq!(reflex24(&["verify-all", "--radius-sq", "abc"]).status.code(), Some(2));
    assert_eq!(reflex24(&["quotient", "--space", "L"]).status.code(), Some(2));
    assert_eq!(reflex24(&["tc", "--relators", "ab!"]).status.code(), Some(2));
}

#[test]
fn todd_coxeter_command() {
    let out = reflex24(&["tc", "--relators", "abd,bcd,cad,cba", "--max-cosets", "1000", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["order"], 24);
    assert_eq!(v["abelianization"], "Z/3");
    let out = reflex24(&["tc", "--relators", "abd,bcd,cad", "--max-cosets", "1000", "--json"]);
    let v = json_of(&out);
    assert_eq!(v["exceeded"], true);
    assert_eq!(v["abelianization"], "Z");
}

#[test]
fn quotient_command() {
    let v = json_of(&reflex24(&["quotient", "--space", "K0", "--json"]));
    assert_eq!(v["quotient"]["counts"], serde_json::json!([1, 4, 3]));
    let v = json_of(&reflex24(&["quotient", "--space", "K", "--json"]));
    assert_eq!(v["quotient"]["counts"], serde_json::json!([1, 4, 4]));
    assert_eq!(reflex24(&["quotient", "--space", "K", "--radius-sq", "1"]).status.code(), Some(1));
}

#[test]
fn file_outputs() {
    let k = scratch("k.json");
    let out = reflex24(&["complex", "build", "--radius-sq", "2", "--out", k.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let complex: Value = serde_json::from_str(&std::fs::read_to_string(&k).unwrap()).unwrap();
    assert_eq!(complex["centers"], 25);

    let g = scratch("group.json");
    assert_eq!(reflex24(&["group", "enum", "--max-len", "3", "--out", g.to_str().unwrap()]).status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(report["g4"].as_array().unwrap().len(), 24);

    let svg = scratch("lenses.svg");
    assert_eq!(reflex24(&["complex", "lenses", "--svg", svg.to_str().unwrap()]).status.code(), Some(0));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let svg2 = scratch("lenses2.svg");
    let out = reflex24(&["--svg-lenses", svg2.to_str().unwrap(), "tc", "--relators", "s^5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(svg2.exists());
}

#[test]
fn links_and_arrangement() {
    let out = reflex24(&["complex", "links", "--all", "--radius-sq", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let links = v["links"].as_array().unwrap();
    assert_eq!(links.iter().filter(|l| l["complex"] == "K").count(), 24);
    assert!(links.iter().all(|l| l["min_cycle"] == 6));
    let out = reflex24(&["arrangement", "verify", "--radius-sq", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["violations"], 0);
}
