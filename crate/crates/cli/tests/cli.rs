use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn picpos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picpos")).args(args).env_remove("PICPOS_GRID_CAP").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn status_of(report: &Value, property: &str) -> String {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["property"] == property)
        .unwrap_or_else(|| panic!("no {property} verdict"))["status"]
        .as_str()
        .unwrap()
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn optimal_example_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let mults: Vec<String> =
        std::iter::repeat_n("3", 13).chain(std::iter::repeat_n("1", 4)).map(String::from).collect();
    let doc = format!(r#"{{"e": 4, "r": 17, "d": 11, "mults": [{}], "properties": ["ample"]}}"#, mults.join(","));
    let file = write(dir.path(), "optimal.json", &doc);
    let report = json(&picpos(&["check", &file]));
    assert_eq!(report["schema"], 1);
    assert_eq!(status_of(&report, "ample"), "negative");
    let details = report["verdicts"][0]["details"].as_array().unwrap();
    assert!(details.iter().any(|d| d["lhs"]["expr"] == "L^2" && d["lhs"]["value"] == 0));
}

#[test]
fn points_example_from_toml() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "points.toml",
        "e = 3\nr = 10\nd = 24\nm = 7\nk = 1\npositive_genus = \"yes\"\nproperties = [\"globally_generated\", \"k_very_ample\"]\n",
    );
    let report = json(&picpos(&["check", &file]));
    assert_eq!(status_of(&report, "globally_generated"), "positive");
    assert_eq!(status_of(&report, "k_very_ample"), "negative");
}

#[test]
fn non_nef_adjoint_is_annotated() {
    let report = json(&picpos(&["check", "--e", "5", "--r", "31", "--d", "34", "--m", "5", "--k", "5"]));
    assert_eq!(status_of(&report, "k_very_ample"), "unknown");
    let kva = report["verdicts"].as_array().unwrap().iter().find(|v| v["property"] == "k_very_ample").unwrap();
    let notes = kva["annotations"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("not nef")), "{notes:?}");
}

#[test]
fn expect_mode() {
    let base = ["check", "--e", "3", "--r", "10", "--d", "7", "--m", "2", "--property", "ample"];
    let ok = picpos(&[&base[..], &["--expect", "ample=positive"]].concat());
    assert_eq!(ok.status.code(), Some(0));
    let bad = picpos(&[&base[..], &["--expect", "ample=negative"]].concat());
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("expected ample=negative"));
    let absent = picpos(&[&base[..], &["--expect", "nef=positive"]].concat());
    assert_eq!(absent.status.code(), Some(2));
}

#[test]
fn negative_verdicts_still_exit_zero() {
    let out = picpos(&["check", "--e", "4", "--mults", "3x13,1x4", "--d", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(status_of(&json(&out), "ample"), "negative");
}

#[test]
fn malformed_input_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.json", "{\n  \"e\": 3,\n  \"degree\": 7\n}");
    let out = picpos(&["check", &file]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    let msg = err["error"]["message"].as_str().unwrap();
    assert!(msg.contains("degree") && msg.contains("line 3"), "{msg}");

    let file = write(dir.path(), "bad.toml", "e = 3\nd = 7\nm = \"two\"\n");
    let out = picpos(&["check", &file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn report_round_trips() {
    let first = json(&picpos(&[
        "check",
        "--e",
        "3",
        "--r",
        "10",
        "--d",
        "24",
        "--m",
        "7",
        "--k",
        "1",
        "--positive-genus",
        "yes",
    ]));
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "again.json", &first["request"].to_string());
    let second = json(&picpos(&["check", &file]));
    assert_eq!(first["verdicts"], second["verdicts"]);
    assert_eq!(first, second);
}

#[test]
fn quintic_sweep() {
    let out =
        picpos(&["sweep", "--e", "5", "--r", "31", "--m", "5", "--k", "5", "--d", "30:40", "--positive-genus", "yes"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "d,m,r,e,k,effective,nef,ample,globally_generated,k_very_ample");
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let d: i64 = cells[0].parse().unwrap();
        let want = match d {
            ..=32 => "negative",
            33 | 34 => "unknown",
            _ => "positive",
        };
        assert_eq!(cells[9], want, "d = {d}");
    }
}

#[test]
fn sweep_matches_check() {
    let sweep = picpos(&[
        "sweep",
        "--e",
        "3",
        "--r",
        "10",
        "--m",
        "7",
        "--d",
        "24",
        "--k",
        "1",
        "--positive-genus",
        "yes",
        "--format",
        "jsonl",
    ]);
    assert!(sweep.status.success());
    let row: Value = serde_json::from_slice(&sweep.stdout).unwrap();
    assert_eq!(row["schema"], 1);
    let report = json(&picpos(&[
        "check",
        "--e",
        "3",
        "--r",
        "10",
        "--d",
        "24",
        "--m",
        "7",
        "--k",
        "1",
        "--positive-genus",
        "yes",
    ]));
    for p in ["effective", "nef", "ample", "globally_generated", "k_very_ample"] {
        assert_eq!(row[p].as_str().unwrap(), status_of(&report, p), "{p}");
    }
}

#[test]
fn sweep_is_deterministic_across_worker_counts() {
    let args = ["sweep", "--e", "1:4", "--r", "1:12", "--m", "0:4", "--d", "0:20:2", "--k", "0:2"];
    let one = picpos(&[&args[..], &["--jobs", "1"]].concat());
    let many = picpos(&[&args[..], &["--jobs", "8"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(String::from_utf8(one.stdout).unwrap().lines().count(), 1 + 4 * 12 * 5 * 11 * 3);
}

#[test]
fn sweep_edges() {
    let empty = picpos(&["sweep", "--e", "3", "--r", "10", "--m", "2", "--d", "5:4"]);
    assert!(empty.status.success());
    assert_eq!(String::from_utf8(empty.stdout).unwrap().lines().count(), 1);

    let capped = Command::new(env!("CARGO_BIN_EXE_picpos"))
        .args(["sweep", "--e", "3", "--r", "10", "--m", "0:9", "--d", "0:9"])
        .env("PICPOS_GRID_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&capped.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "grid_cap_exceeded");
    assert_eq!(err["error"]["required"], 100);
}

#[test]
fn standardize_cubic() {
    let report = json(&picpos(&["standardize", "--e", "3", "--mults", "3x3,2x7", "--d", "8"]));
    assert_eq!(report["trace"]["outcome"], "excellent");
    assert_eq!(report["final_class"], "7H - 2(E1+...+E10)");
    assert_eq!(report["verdict"]["status"], "positive");
    let out = picpos(&["standardize", "--e", "4", "--r", "5", "--d", "8", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbit_search_quartic() {
    let report = json(&picpos(&["orbit-search", "--e", "4", "--mults", "3x3,2x15", "--d", "10"]));
    assert_eq!(report["search"]["result"], "not_found_within_bound");
    assert_eq!(report["search"]["stats"]["frontier_exhausted"], true);
    let report = json(&picpos(&["orbit-search", "--e", "3", "--mults", "3x3,2x7", "--d", "8"]));
    assert_eq!(report["search"]["result"], "found");
}

#[test]
fn oracle_enumerate_instance() {
    let report = json(&picpos(&["oracle", "enumerate", "--e", "2", "--r", "7", "--d", "5", "--m", "1", "--k", "1"]));
    assert_eq!(report["point_bound_violations"], 0);
    assert_eq!(report["curve_violations"], 0);
    assert_eq!(report["report"]["bounds"]["f_max"], 4);
    let refused =
        picpos(&["oracle", "enumerate", "--e", "3", "--r", "13", "--d", "15", "--m", "3", "--k", "3", "--cap", "10"]);
    assert_eq!(refused.status.code(), Some(2));
}

#[test]
fn certify_effective_verifies() {
    let report = json(&picpos(&["certify-effective", "--e", "3", "--r", "10", "--d", "7", "--m", "2"]));
    assert_eq!(report["verdict"]["status"], "positive");
    assert_eq!(report["certificate_check"]["valid"], true);
}

#[test]
fn pretty_output() {
    let out = picpos(&["check", "--e", "3", "--r", "10", "--d", "7", "--m", "2", "--pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| ample") && text.contains("uniform-large-r"), "{text}");
}
