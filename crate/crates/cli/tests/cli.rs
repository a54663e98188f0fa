use std::path::Path;
use std::process::{Command, Output};

use merobound::{BoundReport, MembershipReport};
use serde_json::Value;

fn merobound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_merobound")).args(args).output().expect("binary runs")
}

fn merobound_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_merobound"))
        .args(args)
        .env("MEROBOUND_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn bounds_table() {
    let o = merobound(&["bounds", "--variant", "starlike", "--alpha", "0:0.9:0.1", "--lambda", "1", "--mu", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "variant,alpha,lambda,mu,b0_bound,b1_bound");
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[1], "starlike,0,1,0,2,2.2360679774997898");
}

#[test]
fn bounds_single_point_and_json() {
    let o = merobound(&["bounds", "--variant", "strongly_starlike", "--alpha", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert_eq!(rows[0]["b0_bound"], 2.0);
    assert_eq!(rows[0]["b1_bound"].as_f64().unwrap(), 5f64.sqrt());
}

#[test]
fn bounds_skip_out_of_domain_points() {
    let o = merobound(&["bounds", "--variant", "starlike", "--alpha", "1/2", "--lambda", "1,2", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(stderr(&o).contains("warning: skipping starlike alpha=1/2 lambda=1 mu=1"));
}

#[test]
fn verify_passes() {
    let o = merobound(&["verify", "--trials", "200", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["summaries"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_rejects_zero_trials() {
    assert_eq!(merobound(&["verify", "--trials", "0"]).status.code(), Some(64));
}

#[test]
fn verify_catches_injected_mutant() {
    let o = merobound(&["verify", "--trials", "3", "--inject-mutant", "starlike.p_second_coefficient"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("identity starlike.p_second_coefficient failed; witness:"));
    let v = json(&o);
    let failed: Vec<&Value> = v["summaries"][0]["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["identity"], "starlike.p_second_coefficient");
    assert!(failed[0]["witness"]["draw"]["alpha"].is_string());

    assert_eq!(merobound(&["verify", "--trials", "3", "--inject-mutant", "nope"]).status.code(), Some(64));
}

#[test]
fn invert_examples() {
    let v = json(&merobound(&["invert", "--mero", "1/2,1/3,1/5,0"]));
    assert_eq!(v["exact"], true);
    assert_eq!(v["inverse"], serde_json::json!(["-1/2", "-1/3", "-11/30", "-71/180"]));

    let v = json(&merobound(&["invert", "--mero", "0,0,0,0"]));
    assert_eq!(v["inverse"], serde_json::json!(["0", "0", "0", "0"]));

    let o = merobound(&["invert", "--analytic", "1,1,1", "--format", "csv"]);
    assert_eq!(stdout(&o), "power,coefficient\n2,-1\n3,1\n4,-1\n");
}

#[test]
fn invert_routes_decimals_to_float_mode() {
    let v = json(&merobound(&["invert", "--mero", "0.5,0.25"]));
    assert_eq!(v["exact"], false);
    assert_eq!(v["inverse"][0]["re"], "-0.5");
    let o = merobound(&["invert", "--mero", "1/2", "--analytic", "1"]);
    assert_eq!(o.status.code(), Some(64));
}

fn member(coeffs: &str, variant: &str, alpha: &str) -> MembershipReport {
    let o = merobound(&["member", "--coeffs", coeffs, "--variant", variant, "--alpha", alpha]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("univalence"));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn member_examples() {
    let r = member("0", "starlike", "0.5");
    assert!(r.is_member && !r.heuristic);
    assert_eq!(r.min_margin, 0.5);
    assert!(!member("3", "starlike", "0").is_member);
    assert!(!member("3", "strongly_starlike", "1").is_member);
}

#[test]
fn member_report_round_trips() {
    let o = merobound(&["member", "--coeffs", "0,0.05", "--variant", "strongly_starlike", "--alpha", "0.1", "--order", "40"]);
    let r: MembershipReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.is_member && !r.heuristic);
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, stdout(&o));
}

fn search_args<'a>(variant: &'a str, alpha: &'a str, budget: &'a str, seed: &'a str) -> Vec<&'a str> {
    vec!["search", "--variant", variant, "--alpha", alpha, "--budget", budget, "--seed", seed, "--refine-steps", "8"]
}

#[test]
fn search_respects_starlike_bound() {
    let o = merobound(&search_args("starlike", "0", "400", "11"));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: BoundReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.empirical_b0_max <= 2.0 + 1e-9);
    assert!(r.falsification.is_none());
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", stdout(&o));
}

#[test]
fn search_single_trial_reproducible_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let mut args = search_args("starlike", "0.5", "1", "99");
        let path = out.to_str().unwrap().to_string();
        args.extend(["--out", &path]);
        let o = merobound(&args);
        assert_eq!(o.status.code(), Some(0));
        (std::fs::read(&out).unwrap(), manifest(&out))
    };
    let (a, ma) = run("a.json");
    let (b, mb) = run("b.json");
    assert_eq!(a, b);
    assert_eq!(ma["subcommand"], "search");
    assert_eq!(ma["seed"], 99);
    assert_eq!(ma["invocation"]["command"]["search"]["budget"], 1);
    assert_eq!(ma["invocation"]["command"], mb["invocation"]["command"]);
    let r: BoundReport = serde_json::from_slice(&a).unwrap();
    assert_eq!(r.accepted_candidates + r.rejected_inconsistent + r.rejected_nonmember, 1);
}

fn manifest(out: &Path) -> Value {
    let mut p = out.as_os_str().to_owned();
    p.push(".manifest.json");
    serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap()
}

#[test]
fn search_maxima_vanish_near_alpha_one() {
    let o = merobound(&search_args("starlike", "0.999", "200", "4"));
    assert_eq!(o.status.code(), Some(0));
    let r: BoundReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r.empirical_b0_max <= r.bounds.b0_bound + 1e-9);
    assert!(r.bounds.b0_bound < 0.0021);
}

#[test]
fn search_reports_falsification_with_exit_two() {
    // the strongly starlike |b1| bound is exceeded by genuine members at small alpha
    let mut args = search_args("strongly_starlike", "0.1", "1000", "1");
    args.extend(["--lambda", "2", "--mu", "0.5"]);
    let o = merobound(&args);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("falsification"));
    let r: BoundReport = serde_json::from_slice(&o.stdout).unwrap();
    let w = r.falsification.unwrap();
    assert_eq!(w.coefficient, "b1");
    assert!(w.value > w.bound + 1e-9);
    assert!(w.membership.is_member && !w.membership.heuristic);
}

#[test]
fn thread_count_does_not_change_output() {
    let args = search_args("strongly_starlike", "0.5", "60", "3");
    let one = merobound_env(&args, "1");
    let two = merobound_env(&args, "2");
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(merobound_env(&args, "zero").status.code(), Some(64));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(merobound(&["nonsense"]).status.code(), Some(64));
    assert_eq!(merobound(&["bounds"]).status.code(), Some(64));
    assert_eq!(merobound(&["bounds", "--alpha", "0:1:0"]).status.code(), Some(64));
    assert_eq!(merobound(&["search", "--variant", "starlike", "--alpha", "1"]).status.code(), Some(64));
    assert_eq!(merobound(&["search", "--variant", "starlike", "--alpha", "0", "--budget", "0"]).status.code(), Some(64));
    assert_eq!(merobound(&["--help"]).status.code(), Some(0));
}
