use std::process::{Command, Output};

use serde_json::Value;
use twisted_bruhat::poset::{parse_dot, parse_jsonl};
use twisted_bruhat::{AffineWeyl, BiclosedSet, TypeLabel};

fn twb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twb")).args(args).output().expect("run twb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Every line parses and re-serializes to the same bytes.
fn assert_jsonl_round_trip(text: &str) {
    let again: String = records(text).iter().map(|v| v.to_string() + "\n").collect();
    assert_eq!(again, text);
}

#[test]
fn covers_of_identity() {
    let o = twb(&["covers", "--type", "A2", "--biclosed", "twist:e psi:e d1:{} d2:{}", "--elem", "e"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_jsonl_round_trip(&text);
    let covers: Vec<Value> = records(&text).into_iter().filter(|r| r["kind"] == "cover").collect();
    assert_eq!(covers.len(), 5);
    let mut names: Vec<String> = covers.iter().map(|c| format!("{}:{}", c["side"].as_str().unwrap(), c["root"].as_str().unwrap())).collect();
    names.sort();
    assert_eq!(names, ["lower:a", "lower:b", "upper:a+b-d", "upper:a-d", "upper:b-d"]);
}

#[test]
fn poincare_even() {
    let o = twb(&["poincare", "--parity", "even", "--dmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[1,2,4,5,7,8]\n");
    let o = twb(&["poincare", "--parity", "odd", "--dmax", "4"]);
    assert_eq!(stdout(&o), "[1,3,4,6,7]\n");
}

#[test]
fn poincare_counts_match_for_an_element() {
    let o = twb(&["poincare", "--elem", "1.2.3", "--dmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&stdout(&o))[0];
    assert_eq!(r["twisted"], r["closed_form"]);
    assert_eq!(r["matches"], true);
}

#[test]
fn sect4_rows() {
    let o = twb(&["sect4", "--budgets", "9,11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_jsonl_round_trip(&text);
    let rows = records(&text);
    let counts: Vec<u64> = rows.iter().map(|r| r["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, [42, 47]);
    assert_eq!(rows[1]["new_elements"].as_array().unwrap().len(), 5);
}

#[test]
fn interval_round_trips_in_both_formats() {
    let args = ["interval", "--x", "2", "--y", "2.1.3"];
    let jsonl = stdout(&twb(&args));
    let p = parse_jsonl(&jsonl).unwrap();
    assert_eq!(p.len(), 10);
    assert!(p.grading_ok());
    assert_eq!(p.to_jsonl(), jsonl);
    let dot = stdout(&twb(&[&args[..], &["--format", "dot"]].concat()));
    let (name, q) = parse_dot(&dot).unwrap();
    assert_eq!(q.to_dot(&name), dot);
    assert_eq!(q.to_jsonl(), jsonl);
}

#[test]
fn figures_round_trip_and_are_deterministic() {
    for args in [&["hasse", "--format", "dot"][..], &["topes", "--format", "dot"], &["hasse", "--radius", "3", "--format", "dot"]] {
        let a = stdout(&twb(args));
        assert_eq!(a, stdout(&twb(args)));
        let (name, p) = parse_dot(&a).unwrap();
        assert_eq!(p.to_dot(&name), a);
    }
    let topes = stdout(&twb(&["topes"]));
    assert_jsonl_round_trip(&topes);
    let recs = records(&topes);
    assert_eq!(recs.len(), 104);
    let g = AffineWeyl::new(TypeLabel::A2);
    for r in &recs {
        let s = r["biclosed"].as_str().unwrap();
        assert_eq!(BiclosedSet::parse(&g, s).unwrap().format(&g), s);
    }
    let hasse = stdout(&twb(&["hasse"]));
    assert_eq!(parse_jsonl(&hasse).unwrap().len(), 27);
}

#[test]
fn convexity_certificate_for_mixed_set() {
    let o = twb(&["topes", "--type", "A3", "--biclosed", "twist:e psi:e d1:{1} d2:{3}"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &records(&stdout(&o))[0];
    assert_eq!(r["class"], "Mixed");
    assert_eq!(r["convex"], false);
    assert_eq!(r["certificate"]["target"], "-a+d");
}

#[test]
fn levels_are_deterministic() {
    let args = ["levels", "--biclosed", "twist:1 psi:e d1:{1} d2:{}", "--level=-1,0,1", "--radius", "6"];
    let a = stdout(&twb(&args));
    assert_eq!(a, stdout(&twb(&args)));
    assert_jsonl_round_trip(&a);
    assert_eq!(records(&a).len(), 3);
}

#[test]
fn config_file_and_flag_override() {
    let dir = std::env::temp_dir().join(format!("twb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# defaults\ntype = A2\nparity=odd\ndmax=3\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    assert_eq!(stdout(&twb(&["poincare", "--config", cfg])), "[1,3,4,6]\n");
    assert_eq!(stdout(&twb(&["poincare", "--config", cfg, "--parity", "even"])), "[1,2,4,5]\n");
    let out = dir.join("p.json");
    let o = twb(&["poincare", "--config", cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "[1,3,4,6]\n");
    let bad = dir.join("bad.cfg");
    std::fs::write(&bad, "type=A2\nradius: 4\n").unwrap();
    let o = twb(&["hasse", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("config line 2, column 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(twb(&["nonsense"]).status.code(), Some(2));
    assert_eq!(twb(&["covers"]).status.code(), Some(2));
    assert_eq!(twb(&["covers", "--elem", "7"]).status.code(), Some(2));
    assert_eq!(twb(&["covers", "--type", "F4", "--elem", "e"]).status.code(), Some(2));
    assert_eq!(twb(&["poincare", "--dmax", "0"]).status.code(), Some(2));
    assert_eq!(twb(&["levels", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(twb(&["interval", "--x", "1", "--y", "2"]).status.code(), Some(1));
    assert_eq!(twb(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_subset() {
    let o = twb(&["verify", "--only", "4,12"]);
    assert_eq!(o.status.code(), Some(0));
    let recs = records(&stdout(&o));
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r["passed"] == true));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[PASS]  4"));
    assert_eq!(twb(&["verify", "--only", "13"]).status.code(), Some(2));
}
