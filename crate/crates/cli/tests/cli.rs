use std::process::{Command, Output};

use serde_json::Value;

fn replab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_replab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = replab(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "replab/1");
    v
}

#[test]
fn decompose_wedge2_wedge3() {
    let o = replab(&["decompose", "--group", "sp", "--rank", "6", "--check-dims", "wedge(2, wedge(3, H))"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("V[]^2 + V[1,1]^3 + V[1,1,1,1]^2 + V[1,1,1,1,1,1] + V[2,1,1] + V[2,2] + V[2,2,1,1]\n"));
    assert!(text.contains("dim = 24090"));
    let v = json(&["decompose", "--group", "sp", "--rank", "6", "wedge(2, wedge(3, H))"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 7);
    assert_eq!(v["total_dim"], "24090");
    assert_eq!(v["stable"], true);
}

#[test]
fn text_and_json_agree() {
    let args = ["decompose", "--group", "sl", "--rank", "3", "tensor(H, tensor(H, H))"];
    let text = stdout(&replab(&args));
    let v = json(&args);
    let mut from_json = Vec::new();
    for t in v["terms"].as_array().unwrap() {
        let parts: Vec<String> = t["partition"].as_array().unwrap().iter().map(|p| p.to_string()).collect();
        let m = t["mult"].as_i64().unwrap();
        let mut s = format!("W[{}]", parts.join(","));
        if m != 1 {
            s.push_str(&format!("^{m}"));
        }
        from_json.push(s);
    }
    assert_eq!(text.lines().next().unwrap(), from_json.join(" + "));
}

#[test]
fn syntax_errors_are_usage_errors() {
    let o = replab(&["decompose", "--rank", "6", "wedge(2 H)"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("offset 8"), "{err}");
    assert!(err.contains("expected ,"), "{err}");
    assert_eq!(replab(&["decompose"]).status.code(), Some(2));
    assert_eq!(replab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn dim_hom_branch() {
    assert_eq!(stdout(&replab(&["dim", "--rank", "6", "quot(wedge(3, H), H-in-wedge3)"])).trim(), "208");
    assert_eq!(stdout(&replab(&["hom", "--rank", "6", "wedge(2, H)", "tensor(H, H)"])).trim(), "2");
    assert_eq!(stdout(&replab(&["branch", "--rank", "4", "V[1,1]"])).trim(), "V[] + V[1]^2 + V[1,1]");
    assert_eq!(replab(&["branch", "--rank", "4", "H"]).status.code(), Some(2));
    let v = json(&["dim", "--group", "sl", "--rank", "4", "sym(2, H)"]);
    assert_eq!(v["dim"], "10");
}

#[test]
fn johnson_commands() {
    assert_eq!(json(&["johnson", "tau1-span", "--g", "3"])["span_dim"], 20);
    assert_eq!(json(&["johnson", "tau2-span", "--g", "4"])["span_dim"], 336);
    let v = json(&["johnson", "cup-image", "--g", "6", "--case", "closed"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
    let v = json(&["johnson", "bracket-check", "--seed", "7", "--count", "10"]);
    assert_eq!(v["passed"], 10);
    assert_eq!(replab(&["johnson", "cup-image", "--g", "5", "--case", "boundary"]).status.code(), Some(2));
}

#[test]
fn certify_prints_vectors() {
    assert_eq!(stdout(&replab(&["certify", "--which", "1", "--g", "6"])).trim(), "-3 a1∧a2∧a3∧a4");
    let v = json(&["certify", "--which", "2", "--g", "6"]);
    assert_eq!(v["shape"], "wedge(2, H)");
    assert_eq!(replab(&["certify", "--which", "3", "--g", "6"]).status.code(), Some(2));
}

#[test]
fn mm_table() {
    let o = replab(&["mm", "table", "--g", "12", "--dmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().split_whitespace().collect::<Vec<_>>().join(" ");
    assert_eq!(last, "6 15 175 190 190");
    let v = json(&["mm", "table", "--g", "12", "--dmax", "6"]);
    assert_eq!(v["rows"][3]["hom"], "17");
}

#[test]
fn thread_cap_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_replab"))
        .args(["dim", "--rank", "3", "H"])
        .env("REPLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_replab"))
        .args(["dim", "--rank", "3", "H"])
        .env("REPLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn paper_suite_reports_every_criterion() {
    let o = replab(&["paper-suite"]);
    let text = stdout(&o);
    let status: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(status.len(), 10, "{text}");
    let failed = status.iter().any(|l| l.starts_with("FAIL"));
    assert_eq!(o.status.code(), Some(if failed { 1 } else { 0 }));
}
