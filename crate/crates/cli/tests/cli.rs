//! End-to-end runs of the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn pmviol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmviol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = pmviol(args);
    assert!(
        out.status.success(),
        "command {:?} failed:\n{}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().expect("utf8 path").to_string()
}

#[test]
fn generate_writes_to_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path_str(dir.path(), "inst.json");
    let out = run_ok(&["generate", "--n", "4", "--k", "2", "--seed", "5", "-o", &inst]);
    assert!(out.stdout.is_empty(), "file output must keep stdout clean");
    let on_disk = std::fs::read_to_string(&inst).unwrap();

    let streamed = run_ok(&["generate", "--n", "4", "--k", "2", "--seed", "5"]);
    assert_eq!(String::from_utf8(streamed.stdout).unwrap(), on_disk);

    let doc: serde_json::Value = serde_json::from_str(&on_disk).unwrap();
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn reduce_chain_writes_sidecar_maps() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path_str(dir.path(), "inst.json");
    let cnf = path_str(dir.path(), "form.cnf");
    let ss = path_str(dir.path(), "items.json");
    run_ok(&["generate", "--n", "3", "--seed", "2", "-o", &inst]);
    run_ok(&["reduce", "sat", &inst, "-o", &cnf]);
    run_ok(&["reduce", "subset-sum", &cnf, "-o", &ss]);

    assert!(dir.path().join("form.varmap.json").exists());
    assert!(dir.path().join("items.decodemap.json").exists());
    let dimacs = std::fs::read_to_string(&cnf).unwrap();
    assert!(dimacs.starts_with("p cnf 9 15\n"));
}

#[test]
fn direct_search_modes_agree_on_the_witness() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path_str(dir.path(), "inst.json");
    run_ok(&["generate", "--n", "5", "--k", "3", "--seed", "9", "-o", &inst]);

    let lex = stdout_json(&run_ok(&["solve", "direct", &inst]));
    let random = stdout_json(&run_ok(&["solve", "direct", &inst, "--mode", "random", "--seed", "4"]));
    assert_eq!(lex["outcome"], "found");
    assert_eq!(lex["witness"], random["witness"]);
    assert_eq!(lex["solver"], "direct");
}

#[test]
fn ppsz_decodes_through_the_sidecar_map() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path_str(dir.path(), "inst.json");
    let cnf = path_str(dir.path(), "form.cnf");
    run_ok(&["generate", "--n", "4", "--k", "1", "--seed", "8", "-o", &inst]);
    run_ok(&["reduce", "sat", &inst, "-o", &cnf]);

    let direct = stdout_json(&run_ok(&["solve", "direct", &inst]));
    let log = path_str(dir.path(), "run.log");
    let doc = stdout_json(&run_ok(&["solve", "ppsz", &cnf, "--log", &log]));
    assert_eq!(doc["outcome"], "found");
    assert_eq!(doc["witness"], direct["witness"]);
    assert_eq!(doc["assignment"].as_array().unwrap().len(), 12);

    let line = std::fs::read_to_string(&log).unwrap();
    let logged: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(logged["representation"], "3sat-ppsz");
    assert_eq!(logged["millis"], serde_json::Value::Null);
}

#[test]
fn mitm_decodes_all_the_way_back() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path_str(dir.path(), "inst.json");
    let cnf = path_str(dir.path(), "form.cnf");
    let ss = path_str(dir.path(), "items.json");
    let var_map = path_str(dir.path(), "form.varmap.json");
    run_ok(&["generate", "--n", "2", "--k", "1", "--seed", "3", "-o", &inst]);
    run_ok(&["reduce", "sat", &inst, "-o", &cnf]);
    run_ok(&["reduce", "subset-sum", &cnf, "-o", &ss]);

    let direct = stdout_json(&run_ok(&["solve", "direct", &inst]));
    let doc = stdout_json(&run_ok(&["solve", "mitm", &ss, "--var-map", &var_map]));
    assert_eq!(doc["outcome"], "found");
    assert_eq!(doc["witness"], direct["witness"]);
    assert_eq!(doc["table_entries"], 1u64 << 16);
    assert!(doc["chosen_items"].as_array().unwrap().len() >= 12);
}

#[test]
fn verify_passes_consistent_artifacts_and_fails_tampered_ones() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path_str(dir.path(), "inst.json");
    let cnf = path_str(dir.path(), "form.cnf");
    let ss = path_str(dir.path(), "items.json");
    run_ok(&["generate", "--n", "3", "--k", "2", "--seed", "1", "-o", &inst]);
    run_ok(&["reduce", "sat", &inst, "-o", &cnf]);
    run_ok(&["reduce", "subset-sum", &cnf, "-o", &ss]);

    let var_map = path_str(dir.path(), "form.varmap.json");
    let decode_map = path_str(dir.path(), "items.decodemap.json");
    let out = run_ok(&[
        "verify",
        "--instance", &inst,
        "--cnf", &cnf,
        "--var-map", &var_map,
        "--subset-sum", &ss,
        "--decode-map", &decode_map,
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("ok - ")));
    assert_eq!(text.lines().count(), 16);

    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    doc["witness"] = serde_json::json!([0, 2]);
    std::fs::write(&inst, serde_json::to_string(&doc).unwrap()).unwrap();
    let bad = pmviol(&["verify", "--instance", &inst, "--cnf", &cnf]);
    assert!(!bad.status.success());
    let text = String::from_utf8(bad.stdout).unwrap();
    assert!(text.contains("FAIL - planted witness is the unique violating subset"));
}

#[test]
fn expansion_and_ratio_tables_render_exactly() {
    let expansion = run_ok(&["report", "expansion", "--n", "6", "--mode", "nominal", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(expansion.stdout).unwrap(),
        "stage,M,ratio,d,mode\n\
         direct,0,0.0,6,nominal\n\
         3sat,12,2.0,18,nominal\n\
         subset-sum,42,7.0,48,nominal\n"
    );

    let measured = run_ok(&["report", "expansion", "--n", "6", "--mode", "measured", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(measured.stdout).unwrap(),
        "stage,M,ratio,d,mode\n\
         direct,0,0.0,6,measured\n\
         3sat,12,2.0,18,measured\n\
         subset-sum,42,7.0,48,measured\n"
    );

    let ratios = run_ok(&["report", "ratios", "--n", "6", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(ratios.stdout).unwrap(),
        "representation,algorithm,d,trials,ratio,space\n\
         direct,exhaustive,6,64,1.0,\n\
         3sat,ppsz,18,123,1.9,\n\
         subset-sum,hgj,48,3.1e4,487,5.0e3\n\
         subset-sum,bbss,48,2.9e3,46,1.6e3\n"
    );
}

#[test]
fn accessibility_report_covers_profile_and_experiment() {
    let doc = stdout_json(&run_ok(&[
        "report", "accessibility", "--n", "6", "--format", "json",
    ]));
    assert_eq!(doc["profile"]["witness_entropy_bits"], 6.0);
    assert_eq!(doc["profile"]["query_success_prob"], 1.0 / 64.0);
    assert_eq!(doc["experiment"], serde_json::Value::Null);

    let with_exp = stdout_json(&run_ok(&[
        "report", "accessibility", "--n", "4", "--k", "2", "--prior", "size-k",
        "--empirical", "--samples", "400", "--seed", "11", "--format", "json",
    ]));
    assert_eq!(with_exp["experiment"]["samples"], 400);
    assert_eq!(with_exp["experiment"]["within_three_sigma"], true);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut artifacts = Vec::new();
    for round in ["a", "b"] {
        let inst = path_str(dir.path(), &format!("{round}.json"));
        let cnf = path_str(dir.path(), &format!("{round}.cnf"));
        let sol = path_str(dir.path(), &format!("{round}.sol.json"));
        let log = path_str(dir.path(), &format!("{round}.log"));
        run_ok(&["generate", "--n", "4", "--seed", "6", "-o", &inst]);
        run_ok(&["reduce", "sat", &inst, "-o", &cnf]);
        run_ok(&["solve", "ppsz", &cnf, "-o", &sol, "--log", &log]);
        artifacts.push(
            [&inst, &cnf, &sol, &log].map(|p| std::fs::read(p).unwrap()),
        );
    }
    assert_eq!(artifacts[0], artifacts[1]);
}

#[test]
fn failures_exit_nonzero_and_keep_stdout_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path_str(dir.path(), "red.json");
    run_ok(&["generate", "--n", "3", "--seed", "0", "--redact", "-o", &inst]);

    let reduce = pmviol(&["reduce", "sat", &inst]);
    assert!(!reduce.status.success());
    assert!(reduce.stdout.is_empty());
    assert!(String::from_utf8_lossy(&reduce.stderr).starts_with("error: "));

    let nothing = pmviol(&["verify"]);
    assert!(!nothing.status.success());

    let unknown = pmviol(&["solve", "direct", "--mode", "sideways", &inst]);
    assert!(!unknown.status.success());
}
