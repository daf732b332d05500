use std::process::{Command, Output};

use conifold_dt::torus::FramedSeries;
use conifold_dt::{GeomSeries, TruncSeries};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conifold-dt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

#[test]
fn universal_text_has_degree_one_term() {
    let o = run(&["universal", "--order", "4", "--form", "exp", "--output", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "y0^1 y1^0 : -q/(q^2-1)"), "{}", stdout(&o));
}

#[test]
fn universal_forms_agree() {
    let outs: Vec<String> = ["exp", "product", "first-proof"]
        .iter()
        .map(|f| stdout(&run(&["universal", "--order", "5", "--form", f, "--output", "json"])))
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
}

#[test]
fn chamber_pt() {
    let o = run(&["chamber", "--zeta", "-1,1", "--eps", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["label"], "PT_Y");
}

#[test]
fn chamber_on_a_wall() {
    let v = json(&run(&["chamber", "--zeta", "1,-1"]));
    assert_eq!(v["label"], Value::Null);
    assert_eq!(v["witness"], serde_json::json!([1, 1]));
}

#[test]
fn count_example() {
    let o = run(&["count", "--alpha", "2,1", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"], 46);
    assert_eq!(v["predicted"], 46);
    assert_eq!(v["match"], true);
}

#[test]
fn count_with_strata() {
    let v = json(&run(&["count", "--alpha", "2,2", "--prime", "2", "--strata"]));
    let total: u64 = v["strata"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(Some(total), v["count"].as_u64());
}

#[test]
fn cap_from_environment() {
    let o = bin()
        .args(["count", "--alpha", "2,1", "--prime", "2"])
        .env("CONIFOLD_DT_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["count", "--alpha", "2,1", "--prime", "2", "--cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zeta_routes_agree() {
    let a = run(&["zeta", "--zeta", "-1,1", "--eps", "-1,0", "--order", "5", "--route", "product", "--output", "json"]);
    let b = run(&["zeta", "--zeta", "-1,1", "--eps", "-1,0", "--order", "5", "--route", "framed", "--output", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn json_round_trips() {
    let s = stdout(&run(&["universal", "--order", "5", "--output", "json"]));
    let back = TruncSeries::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string(&back.to_json()).unwrap()), s);

    let s = stdout(&run(&["vertex", "--s-order", "3", "--t-order", "2", "--output", "json"]));
    let v: Value = serde_json::from_str(&s).unwrap();
    let g = GeomSeries::from_json(&v["vertex"]).unwrap();
    assert_eq!(g.to_json(), v["vertex"]);

    let f = FramedSeries::y_inf(3, 1);
    assert_eq!(FramedSeries::from_json(&f.to_json()).unwrap(), f);
}

#[test]
fn dtpt_factorization_and_euler() {
    let o = run(&["dtpt", "--s-order", "4", "--t-order", "2", "--check-factorization", "--euler"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# DT = HILB * PT: true"));
    assert!(out.contains("# HILB at q = 1"));
}

#[test]
fn vertex_matches() {
    let o = run(&["vertex", "--s-order", "4", "--t-order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# equals PT(-s, T): true"));
}

#[test]
fn verify_small_suites() {
    let o = run(&["verify", "--suite", "chambers", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("0 failed\n"));
    let o = run(&["verify", "--suite", "identities", "--order", "4", "--output", "json"]);
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn verify_all_at_order_6() {
    let o = run(&["verify", "--suite", "all", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["universal", "--form", "sum"],
        &["zeta", "--zeta", "1,-1"],
        &["zeta", "--zeta", "x,1"],
        &["count", "--alpha", "1,1", "--prime", "4"],
        &["verify", "--suite", "nope"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}
