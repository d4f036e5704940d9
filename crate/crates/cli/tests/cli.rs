use std::fs;
use std::path::Path;
use std::process::Command;

use ordshadow_cli::record::{stable, RunRecord};
use ordshadow_cli::{render_text, run, Execution};
use serde_json::Value;

fn cli(args: &[&str]) -> Execution {
    run(std::iter::once("ordshadow").chain(args.iter().copied()))
}

fn payload(e: &Execution) -> &Value {
    e.payload.as_ref().expect("command produced a payload")
}

#[test]
fn shadow_of_g1_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g1_n6.json");
    let family = ordshadow::search::named_family("G1", 6, None).unwrap();
    fs::write(&file, family.to_json()).unwrap();
    let e = cli(&["shadow", "--input", file.to_str().unwrap()]);
    assert_eq!(e.code, 0);
    assert_eq!(payload(&e)["family_size"], 6);
    assert_eq!(payload(&e)["shadow_size"], 5);
}

#[test]
fn text_family_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pair.txt");
    fs::write(&file, "# two graphs\n3:1\n3:4\n").unwrap();
    let e = cli(&["shadow", "--input", file.to_str().unwrap()]);
    assert_eq!(e.code, 0);
    assert_eq!(payload(&e)["family_size"], 2);
}

#[test]
fn theorem_exits_zero_when_verified() {
    let e = cli(&["verify", "theorem1", "--n", "4", "--max-size", "3"]);
    assert_eq!(e.code, 0);
    assert_eq!(payload(&e)["status"], "verified");
}

#[test]
fn blocks_of_a_single_edge() {
    let e = cli(&["blocks", "--graph", "3:1"]);
    assert_eq!(e.code, 0);
    assert_eq!(payload(&e)["blocks"], "[1,2][3,3]");
    assert_eq!(payload(&e)["excess"], 0);
}

#[test]
fn exit_codes_cover_every_outcome() {
    // Input errors.
    assert_eq!(cli(&["blocks"]).code, 2);
    assert_eq!(cli(&["blocks", "--graph", "3:zz"]).code, 2);
    assert_eq!(cli(&["no-such-command"]).code, 2);
    assert_eq!(cli(&["verify", "lemma", "--name", "5inarow", "--n", "4"]).code, 2);
    assert_eq!(cli(&["shadow", "--input", "/nonexistent/file"]).code, 2);
    // Feasibility.
    assert_eq!(cli(&["verify", "theorem1", "--n", "5", "--max-size", "4", "--budget", "10"]).code, 3);
    assert_eq!(cli(&["verify", "2mT", "--n", "7"]).code, 3);
    // Sizes outside the theorem range are rejected as input errors.
    let e = cli(&["verify", "theorem1", "--n", "3", "--max-size", "3"]);
    assert_eq!(e.code, 2);
    // An out-of-domain calc point is reported, not failed.
    assert_eq!(cli(&["verify", "obs-calc", "--m", "2", "--n", "100"]).code, 0);
    // Help is not an error.
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn counterexamples_exit_one() {
    // f = -2 pushes the size range to 3n - f - 1 = 10 > 8 = |graphs on [3]|,
    // so the whole of [3] (shadow 4) is in range.
    let e = cli(&["search", "conjecture-k", "--n", "3", "--k", "2", "--f", "-2"]);
    assert_eq!(e.code, 1, "{}", e.stdout);
    assert_eq!(payload(&e)["status"], "counterexamples");
    assert!(!payload(&e)["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn text_and_json_carry_the_same_counts() {
    let args = ["verify", "lemma", "--name", "vsmall", "--n", "4"];
    let json = cli(&args);
    let mut with_text: Vec<&str> = args.to_vec();
    with_text.extend(["--format", "text"]);
    let text = cli(&with_text);
    assert_eq!(text.stdout, render_text(payload(&json)));
    let p = payload(&json);
    assert!(text.stdout.contains(&format!("checked: {}\n", p["checked"])));
    assert!(text.stdout.contains(&format!("violations: {}\n", p["violations"])));
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let e = cli(&["blocks", "--graph", "4:3f", "--output", out.to_str().unwrap()]);
    assert_eq!(e.code, 0);
    assert!(e.stdout.is_empty());
    let written: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(&written, payload(&e));
}

fn record_of(e: &Execution) -> RunRecord {
    RunRecord::load(e.record.as_ref().expect("a record was written")).unwrap()
}

fn replay(path: &Path) -> Execution {
    cli(&["report", "replay", "--input", path.to_str().unwrap()])
}

#[test]
fn seeded_runs_persist_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let e = cli(&[
        "verify", "lemma", "--name", "edgein", "--n", "6", "--mode", "random", "--trials", "40", "--seed", "5",
        "--record-dir", d,
    ]);
    assert_eq!(e.code, 0);
    let rec = record_of(&e);
    assert_eq!(rec.payload["seed"], 5);
    assert_eq!(rec.id, rec.content_id());
    assert!(e.record.as_ref().unwrap().ends_with(format!("{}.json", rec.id)));
    let r = replay(e.record.as_ref().unwrap());
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(payload(&r)["equal"], true);
}

#[test]
fn replay_flags_a_tool_version_change() {
    let dir = tempfile::tempdir().unwrap();
    let e = cli(&["blocks", "--graph", "3:1", "--record-dir", dir.path().to_str().unwrap()]);
    let path = e.record.clone().unwrap();
    let mut rec = record_of(&e);
    rec.tool_version = "0.0.0-old".into();
    fs::write(&path, serde_json::to_string(&rec).unwrap()).unwrap();
    let r = replay(&path);
    assert_eq!(r.code, 1);
    assert_eq!(payload(&r)["tool_version"]["changed"], true);
    assert_eq!(payload(&r)["equal"], false);
}

#[test]
fn replay_flags_a_payload_change() {
    let dir = tempfile::tempdir().unwrap();
    let e = cli(&["blocks", "--graph", "3:1", "--record-dir", dir.path().to_str().unwrap()]);
    let path = e.record.clone().unwrap();
    let mut rec = record_of(&e);
    rec.payload["excess"] = 7.into();
    fs::write(&path, serde_json::to_string(&rec).unwrap()).unwrap();
    let r = replay(&path);
    assert_eq!(r.code, 1);
    assert_eq!(payload(&r)["differences"][0], "/excess");
}

#[test]
fn feasibility_errors_are_recorded_and_reproduced() {
    let dir = tempfile::tempdir().unwrap();
    let e = cli(&["verify", "2mT", "--n", "7", "--record-dir", dir.path().to_str().unwrap()]);
    assert_eq!(e.code, 3);
    let rec = record_of(&e);
    assert_eq!(rec.exit_code, 3);
    assert_eq!(rec.payload["error"], "feasibility");
    let r = replay(e.record.as_ref().unwrap());
    assert_eq!(r.code, 0);
    assert_eq!(payload(&r)["exit_code"]["replayed"], 3);
}

#[test]
fn replay_notices_changed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.txt");
    fs::write(&file, "4:1\n").unwrap();
    let e = cli(&["shadow", "--input", file.to_str().unwrap(), "--record-dir", dir.path().to_str().unwrap()]);
    fs::write(&file, "4:1\n4:3\n").unwrap();
    let r = replay(e.record.as_ref().unwrap());
    assert_eq!(r.code, 1);
    assert_eq!(payload(&r)["changed_inputs"].as_array().unwrap().len(), 1);
}

#[test]
fn unwritable_record_dir_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let e = cli(&["blocks", "--graph", "3:1", "--record-dir", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(e.code, 2);
    assert!(e.stderr.contains("cannot create"));
}

#[test]
fn worker_count_does_not_change_payloads() {
    let base = ["verify", "difftypes", "--n", "6", "--mode", "random", "--trials", "300", "--seed", "17"];
    let one = cli(&[&base[..], &["--threads", "1"]].concat());
    let four = cli(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(stable(payload(&one)).to_string(), stable(payload(&four)).to_string());
}

#[test]
fn speed_commands() {
    let e = cli(&["speed", "named", "--name", "fibonacci", "--n", "8"]);
    assert_eq!(e.code, 0);
    assert_eq!(payload(&e)["speeds"], serde_json::json!([1, 2, 3, 5, 8, 13, 21, 34]));

    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.txt");
    fs::write(&gens, "3:1\n").unwrap();
    let e = cli(&["speed", "closure", "--input", gens.to_str().unwrap(), "--n", "4"]);
    assert_eq!(e.code, 0);
    // Level 3 is the generator alone; level 2 has the edge and the non-edge.
    assert_eq!(payload(&e)["speeds"], serde_json::json!([1, 2, 1, 0]));

    let pats = dir.path().join("pats.txt");
    fs::write(&pats, "2:1\n").unwrap();
    let e = cli(&["speed", "compute", "--forbidden", "--input", pats.to_str().unwrap(), "--n", "5"]);
    assert_eq!(payload(&e)["speeds"], serde_json::json!([1, 1, 1, 1, 1]));

    let e = cli(&["speed", "check-theorem2", "--name", "six-family-1", "--n", "7"]);
    assert_eq!(e.code, 0, "{}", e.stdout);
}

#[test]
fn lattice_commands() {
    let e = cli(&["lattice", "extremal", "--n", "5"]);
    for set in payload(&e)["sets"].as_array().unwrap() {
        assert_eq!(set["size"], 10);
        assert_eq!(set["shadow_size"], 9);
        assert!(set["line"].is_null());
    }
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("a.json");
    fs::write(&f, r#"{"d":3,"n":2,"points":[[2,0,0],[1,1,0],[0,2,0]]}"#).unwrap();
    let e = cli(&["lattice", "shadow", "--input", f.to_str().unwrap()]);
    assert_eq!(payload(&e)["shadow_size"], 2);
    assert_eq!(payload(&e)["line"], serde_json::json!([1, 2]));
    let e = cli(&["lattice", "verify-line-lemma", "--d", "3", "--n", "3"]);
    assert_eq!(e.code, 0);
}

#[test]
fn binary_prints_and_exits() {
    let out = Command::new(env!("CARGO_BIN_EXE_ordshadow"))
        .args(["blocks", "--graph", "3:1", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("blocks: [1,2][3,3]\n"));
    let out = Command::new(env!("CARGO_BIN_EXE_ordshadow"))
        .args(["verify", "theorem1", "--n", "9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
