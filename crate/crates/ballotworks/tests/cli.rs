use std::path::PathBuf;
use std::process::Command;

use ballotworks::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ballotworks").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn row<'a>(report: &'a str, label: &str) -> Vec<&'a str> {
    let line = report.lines().find(|l| l.split_whitespace().next() == Some(label)).unwrap();
    line.split_whitespace().collect()
}

#[test]
fn stv_table_shows_signed_transfers_and_remarks() {
    let (code, out, _) = invoke(&["tally", "--method", "stv", "--seats", "2", "--in", &data("abo.blt"), "--format", "table"]);
    assert_eq!(code, 0);
    assert_eq!(row(&out, "K"), ["K", "7", "+1.63", "8.63", "-8.63"]);
    assert_eq!(row(&out, "M"), ["M", "13", "+4.09", "17.09", "+4", "21.09"]);
    assert_eq!(row(&out, "N"), ["N", "18", "+3.27", "21.27", "+3", "24.27"]);
    assert_eq!(row(&out, "Quota"), ["Quota", "24", "24", "24"]);
    assert!(out.contains("S elected"));
    assert!(out.contains("K excluded"));
    assert!(out.contains("N elected"));
}

#[test]
fn stv_json_keeps_exact_fractions() {
    let (code, out, _) = invoke(&["tally", "--method", "stv", "--in", &data("abo.blt"), "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["winners"], serde_json::json!(["S", "N"]));
    let k = &v["rounds"][0]["transfers"]["K"];
    assert_eq!((k["num"].as_i64(), k["den"].as_i64()), (Some(18), Some(11)));
}

#[test]
fn dhondt_seats_column() {
    let (code, out, _) = invoke(&["apportion", "--method", "dhondt", "--seats", "7", "--in", &data("cze.csv")]);
    assert_eq!(code, 0);
    let seats: Vec<&str> =
        ["PO", "PiS", "RP", "SLD", "PSL", "PJN", "NP", "PPP"].iter().map(|p| *row(&out, p).last().unwrap()).collect();
    assert_eq!(seats, ["3", "2", "1", "1", "0", "0", "0", "0"]);
}

#[test]
fn droop_remainders_with_quota_line() {
    let (code, out, _) = invoke(&["apportion", "--method", "lr", "--quota", "droop", "--seats", "73", "--in", &data("gauteng.csv")]);
    assert_eq!(code, 0);
    assert!(out.contains("Quota: 59219"));
    assert_eq!(row(&out, "ANC"), ["ANC", "2348564", "39.66", "39", "0.66", "1", "40"]);
    assert_eq!(row(&out, "IFP").last(), Some(&"1"));
}

#[test]
fn threshold_excludes_small_parties() {
    let (code, out, _) = invoke(&[
        "apportion", "--method", "sainte-lague", "--seats", "7", "--threshold", "0.05", "--in", &data("cze.csv"),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("Below threshold: PJN, NP, PPP"));
}

#[test]
fn mixed_member_compensates_list_seats() {
    let (code, out, _) = invoke(&["mixed", "--mode", "mmp", "--seats", "20", "--in", &data("mixed.csv")]);
    assert_eq!(code, 0);
    assert_eq!(row(&out, "Red"), ["Red", "45000", "7", "2", "0", "9"]);
    assert_eq!(row(&out, "Green"), ["Green", "20000", "0", "4", "0", "4"]);
}

#[test]
fn irv_monotonicity_witness_file() {
    let witness = std::env::temp_dir().join(format!("bw-witness-{}.json", std::process::id()));
    let w = witness.display().to_string();
    let (code, out, _) = invoke(&[
        "audit", "--criterion", "monotonicity", "--method", "irv", "--in", &data("election2.blt"), "--bounds", "2",
        "--witness", &w,
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("IRV / Mon.: violated"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&witness).unwrap()).unwrap();
    std::fs::remove_file(&witness).unwrap();
    assert_eq!(v["base_outcome"], "A");
    assert_eq!(v["variant_outcome"], "C");
    assert_eq!(v["criterion"], "monotonicity");
}

#[test]
fn condorcet_audit_on_election_one() {
    let (code, out, _) =
        invoke(&["audit", "--criterion", "condorcet", "--method", "fptp", "--in", &data("election1.blt")]);
    assert_eq!(code, 0);
    assert!(out.contains("violated"));
    let (_, out, _) =
        invoke(&["audit", "--criterion", "condorcet", "--method", "schulze", "--in", &data("election1.blt")]);
    assert!(out.contains("holds"));
}

#[test]
fn may_super_majority_is_not_nearly_decisive() {
    let (code, out, _) = invoke(&["audit", "--criterion", "may", "--super-majority", "3/5", "--max-voters", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("nearly-decisive: violated"));
    let (_, out, _) = invoke(&["audit", "--criterion", "may", "--max-voters", "6"]);
    assert_eq!(out.matches("holds").count(), 4);
}

#[test]
fn score_and_nominal_methods() {
    let (code, out, _) = invoke(&["tally", "--method", "range", "--in", &data("scores.csv")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("Elected: B"));
    let (_, out, _) = invoke(&["tally", "--method", "fptp", "--in", &data("election1.blt")]);
    assert!(out.contains("Elected: A"));
    let (_, out, _) = invoke(&["tally", "--method", "borda", "--in", &data("election1.blt")]);
    assert!(out.contains("Elected: B"));
    let (_, out, _) = invoke(&["tally", "--method", "sntv", "--seats", "2", "--in", &data("abo.blt")]);
    assert!(out.contains("Elected: S, N"));
}

#[test]
fn convert_round_trips_through_json() {
    let (code, json, _) = invoke(&["convert", "--in", &data("election2.blt"), "--to", "json"]);
    assert_eq!(code, 0);
    let path = std::env::temp_dir().join(format!("bw-convert-{}.json", std::process::id()));
    std::fs::write(&path, &json).unwrap();
    let (_, blt, _) = invoke(&["convert", "--in", &path.display().to_string(), "--to", "blt"]);
    std::fs::remove_file(&path).unwrap();
    let original = ballotworks::io::parse_blt(&std::fs::read_to_string(data("election2.blt")).unwrap()).unwrap();
    assert_eq!(ballotworks::io::parse_blt(&blt).unwrap(), original);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["tally", "--method", "irv", "--in", &data("tied.blt"), "--tie", "random", "--seed", "7"];
    let first = invoke(&args);
    assert_eq!(first.0, 0);
    for _ in 0..5 {
        assert_eq!(invoke(&args), first);
    }
}

#[test]
fn exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ballotworks");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["tally", "--method", "fptp", "--in", &data("tied.blt"), "--tie", "error"]), Some(2));
    assert_eq!(status(&["tally", "--method", "fptp", "--in", &data("tied.blt")]), Some(0));
    assert_eq!(status(&["tally", "--method", "fptp", "--in", &data("missing.blt")]), Some(1));
    assert_eq!(status(&["tally", "--method", "nonsense", "--in", &data("tied.blt")]), Some(1));
    assert_eq!(status(&["apportion", "--seats", "7", "--in", &data("abo.blt")]), Some(1));
}
