//! End-to-end tests of the `nilpotwo` binary: every subcommand, every input
//! form, the exit-code contract, and the report formats.

use nilpotwo_core::TableGroup;
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nilpotwo"));
    // Keep ambient configuration out of the tests.
    cmd.env_remove("NILPOTWO_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(stdin.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary finishes")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_str(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

fn json_report(output: &Output) -> Value {
    serde_json::from_str(stdout_str(output).lines().next().expect("one report line"))
        .expect("stdout is a JSON report")
}

fn scratch_path(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilpotwo-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir.join(tag)
}

#[test]
fn analyze_inline_spec_reports_socle_path() {
    let output = run(&["analyze", "perm deg=8 gens=(1,2,3) (2,3,4,5,6,7,8)"]);
    assert_eq!(output.status.code(), Some(0));
    let report = json_report(&output);
    assert_eq!(report["order"], "20160");
    assert_eq!(report["path"], "socle");
    let margin: f64 = report["margin_log2"]
        .as_str()
        .unwrap()
        .parse()
        .expect("margin is a parseable real");
    assert!(margin > 0.0);
}

#[test]
fn analyze_family_symmetric_four_is_solvable() {
    let output = run(&["analyze", "--family", "symmetric(4)"]);
    assert_eq!(output.status.code(), Some(0));
    let report = json_report(&output);
    assert_eq!(report["path"], "solvable");
    assert_eq!(report["name"], "symmetric(4)");
    assert_eq!(report["radical_order"], "24");
}

#[test]
fn analyze_out_of_range_group_prints_notice_and_succeeds() {
    let output = run(&["analyze", "--family", "cyclic(2)"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_str(&output);
    assert!(text.contains("notice:"), "got {text:?}");
    assert!(text.contains("order 2"));
    assert!(text.contains("skipped"));
}

#[test]
fn analyze_malformed_spec_reports_line_and_column() {
    let path = scratch_path("broken.txt");
    std::fs::write(&path, "# a comment\nperm deg=4 gens=(1,2,,3)\n").unwrap();
    let output = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let err = stderr_str(&output);
    assert!(err.contains(":2:"), "line number missing in {err:?}");
    assert!(err.contains("parse error"), "got {err:?}");
}

#[test]
fn analyze_alternating_nine_diagnostics_show_order_27_piece() {
    let constructed = run(&["construct", "alternating(9)"]);
    assert_eq!(constructed.status.code(), Some(0));
    let output = run_with_stdin(&["analyze"], &stdout_str(&constructed));
    assert_eq!(output.status.code(), Some(0));
    let report = json_report(&output);
    let diags = report["diagnostics"].as_array().unwrap();
    let elem3 = diags
        .iter()
        .find(|d| d["inequality_id"] == "elem3_vs_half_ai")
        .expect("three-power diagnostic present");
    // floor(9/3) * log2(3) = log2(27)
    assert_eq!(elem3["lhs_log2"], "4.75488750216e0");
}

#[test]
fn every_corpus_family_round_trips_through_the_spec_format() {
    for (name, spec) in nilpotwo_core::builtin_corpus() {
        let group = spec.realize().expect(&name);
        let line = nilpotwo_core::format_group_spec(&group);
        let reparsed = nilpotwo_core::parse_group_spec(&line)
            .unwrap_or_else(|e| panic!("{name}: spec line did not re-parse: {e}"));
        assert_eq!(reparsed.order(), group.order(), "{name}: round-trip changed the order");
    }
}

#[test]
fn analyze_table_input_matches_family_analysis() {
    let group = nilpotwo_core::parse_family("dihedral(4)")
        .unwrap()
        .realize()
        .unwrap();
    let table = TableGroup::from_generated(&group, 16).unwrap();
    let path = scratch_path("d4_table.txt");
    std::fs::write(&path, table.to_text()).unwrap();
    let from_table = run(&["analyze", "--table", path.to_str().unwrap(), "--name", "d4"]);
    assert_eq!(from_table.status.code(), Some(0));
    let table_report = json_report(&from_table);
    let from_family = run(&["analyze", "--family", "dihedral(4)", "--name", "d4"]);
    let family_report = json_report(&from_family);
    assert_eq!(table_report["order"], family_report["order"]);
    assert_eq!(table_report["subgroup_order"], family_report["subgroup_order"]);
    assert_eq!(table_report["margin_log2"], family_report["margin_log2"]);
}

#[test]
fn construct_writes_round_trippable_spec() {
    let path = scratch_path("tower2.txt");
    let constructed = run(&["construct", "dixon(2)", "--out", path.to_str().unwrap()]);
    assert_eq!(constructed.status.code(), Some(0));
    let line = std::fs::read_to_string(&path).unwrap();
    assert!(line.starts_with("perm deg=16 gens="), "got {line:?}");

    let analyzed = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(analyzed.status.code(), Some(0));
    let report = json_report(&analyzed);
    // 24^((4^2-1)/3) = 24^5
    assert_eq!(report["order"], "7962624");
}

#[test]
fn construct_piped_into_analyze_handles_one_copy_wreath() {
    let constructed = run(&["construct", "wreath(symmetric(4),1)"]);
    assert_eq!(constructed.status.code(), Some(0));
    let spec = stdout_str(&constructed);
    let analyzed = run_with_stdin(&["analyze"], &spec);
    assert_eq!(analyzed.status.code(), Some(0));
    let report = json_report(&analyzed);
    assert_eq!(report["order"], "24");
}

#[test]
fn construct_rejects_unknown_family() {
    let output = run(&["construct", "mystery(3)"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_str(&output).contains("family"));
}

#[test]
fn verify_manifest_mixes_source_kinds_and_keeps_order() {
    let table_text = {
        let group = nilpotwo_core::parse_family("cyclic(6)")
            .unwrap()
            .realize()
            .unwrap();
        TableGroup::from_generated(&group, 16).unwrap().to_text()
    };
    let table_path = scratch_path("c6_table.txt");
    std::fs::write(&table_path, table_text).unwrap();
    let manifest_path = scratch_path("mixed.tsv");
    std::fs::write(
        &manifest_path,
        format!(
            "# mixed-kind manifest\n\
             quaternion\tperm\tperm deg=8 gens=(1,3,2,4)(5,8,6,7) (1,5,2,6)(3,7,4,8)\n\
             sym5\tfamily\tsymmetric(5)\n\
             six\ttable\t{}\n\
             baseline\tbuiltin\tsym_4\n",
            table_path.display()
        ),
    )
    .unwrap();
    let output = run(&["verify", manifest_path.to_str().unwrap(), "--seed", "0"]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr_str(&output));
    let names: Vec<String> = stdout_str(&output)
        .lines()
        .map(|l| {
            serde_json::from_str::<Value>(l).expect("row is JSON")["name"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(names, ["quaternion", "sym5", "six", "baseline"]);
    assert!(stderr_str(&output).contains("pass=true"));
}

#[test]
fn verify_empty_manifest_passes_with_no_rows() {
    let path = scratch_path("empty.tsv");
    std::fs::write(&path, "# nothing but comments\n\n").unwrap();
    let output = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout_str(&output).is_empty());
    assert!(stderr_str(&output).contains("entries=0"));
}

#[test]
fn verify_rejects_duplicate_names_and_bad_rows() {
    let dup = scratch_path("dup.tsv");
    std::fs::write(&dup, "a\tfamily\tcyclic(3)\na\tfamily\tcyclic(5)\n").unwrap();
    let output = run(&["verify", dup.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_str(&output).contains("duplicate"));

    let torn = scratch_path("torn.tsv");
    std::fs::write(&torn, "a\tfamily\n").unwrap();
    let output = run(&["verify", torn.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_str(&output).contains(":1:"), "line number missing");

    let unsourced = scratch_path("unsourced.tsv");
    std::fs::write(&unsourced, "a\tfamily\tcyclic(3)\nb\tfamily\tcyclic(0)\n").unwrap();
    let output = run(&["verify", unsourced.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1), "bad sources fail before analysis");
    assert!(stdout_str(&output).is_empty(), "no analysis output when validation fails");
}

#[test]
fn verify_reads_manifest_from_stdin_and_honors_directives() {
    let manifest = "@seed 7\n@cap sample_budget 32\nthree\tfamily\tcyclic(3)\n";
    let output = run_with_stdin(&["verify", "-"], manifest);
    assert_eq!(output.status.code(), Some(0));
    let report: Value = serde_json::from_str(stdout_str(&output).lines().next().unwrap()).unwrap();
    assert_eq!(report["name"], "three");
    assert_eq!(report["seed"], 7);
}

#[test]
fn verify_flag_seed_beats_manifest_seed() {
    let path = scratch_path("seeded.tsv");
    std::fs::write(&path, "@seed 7\nthree\tfamily\tcyclic(3)\n").unwrap();
    let output = run(&["verify", path.to_str().unwrap(), "--seed", "11"]);
    assert_eq!(output.status.code(), Some(0));
    let report: Value = serde_json::from_str(stdout_str(&output).lines().next().unwrap()).unwrap();
    assert_eq!(report["seed"], 11);
}

#[test]
fn verify_csv_format_starts_with_header() {
    let path = scratch_path("csv.tsv");
    std::fs::write(&path, "three\tfamily\tcyclic(3)\nfour\tfamily\tcyclic(4)\n").unwrap();
    let output = run(&["verify", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_str(&output);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "name,order,radical_order,path,subgroup_order,class,threshold_log2,size_log2,margin_log2,diagnostics,seed"
    );
    assert_eq!(text.lines().count(), 3);
    assert!(lines.next().unwrap().starts_with("three,3,3,solvable,"));
}

#[test]
fn verify_corrupted_certificates_fail_with_code_two() {
    let path = scratch_path("corrupt.tsv");
    std::fs::write(&path, "three\tfamily\tcyclic(3)\n").unwrap();
    let output = run(&[
        "verify",
        path.to_str().unwrap(),
        "--corrupt-certificates",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_str(&output).contains("certificate check failed"));
    assert!(stderr_str(&output).contains("pass=false"));
}

#[test]
fn verify_builtin_skips_tiny_groups_as_notices() {
    let output = run(&["verify", "--builtin", "--seed", "0", "--jobs", "2"]);
    assert_eq!(output.status.code(), Some(0));
    let err = stderr_str(&output);
    assert!(err.contains("notice: cyclic_1"));
    assert!(err.contains("notice: cyclic_2"));
    assert!(err.contains("skipped=2"));
    for line in stdout_str(&output).lines() {
        let row: Value = serde_json::from_str(line).expect("row is JSON");
        let margin: f64 = row["margin_log2"].as_str().unwrap().parse().unwrap();
        assert!(margin >= 0.0, "{} dipped below the bound", row["name"]);
    }
}

#[test]
fn seed_env_variable_matches_explicit_flag() {
    let flagged = run(&["analyze", "--family", "symmetric(4)", "--seed", "9"]);
    let via_env = bin()
        .args(["analyze", "--family", "symmetric(4)"])
        .env("NILPOTWO_SEED", "9")
        .output()
        .expect("binary runs");
    assert_eq!(flagged.status.code(), Some(0));
    assert_eq!(via_env.status.code(), Some(0));
    assert_eq!(flagged.stdout, via_env.stdout);

    let bad_env = bin()
        .args(["analyze", "--family", "symmetric(4)"])
        .env("NILPOTWO_SEED", "not-a-number")
        .output()
        .expect("binary runs");
    assert_eq!(bad_env.status.code(), Some(1));
}

#[test]
fn oracle_lists_small_groups_and_caps_its_range() {
    let output = run(&["oracle", "--max-order", "32"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_str(&output);
    let extraspecial = text
        .lines()
        .find(|l| l.starts_with("extraspecial_2_5\t"))
        .expect("order-32 extraspecial group listed");
    assert!(extraspecial.contains("order=32"));
    assert!(extraspecial.contains("witness_order=32"), "witness is the whole group");
    assert!(extraspecial.contains("class=2"));
    for line in text.lines() {
        assert!(line.contains("witness_order="), "malformed row {line:?}");
    }

    let wider = run(&["oracle", "--max-order", "64"]);
    assert_eq!(wider.status.code(), Some(0));
    for line in stdout_str(&wider).lines() {
        let class: u32 = line
            .rsplit("class=")
            .next()
            .unwrap()
            .trim()
            .parse()
            .expect("class field parses");
        assert!(class <= 2, "witness class above two in {line:?}");
    }

    let empty = run(&["oracle", "--max-order", "1"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout_str(&empty).is_empty());

    let over = run(&["oracle", "--max-order", "300"]);
    assert_eq!(over.status.code(), Some(1));
}
