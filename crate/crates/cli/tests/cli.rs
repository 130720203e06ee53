use std::path::PathBuf;
use std::process::{Command, Output};

use qiota_cli::record::{Method, OutputRecord};

fn qiota(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qiota"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qiota(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn tables_match_golden_files() {
    for (n, limit, file) in [(4, 82, "iota_q4_n4.txt"), (5, 138, "iota_q4_n5.txt"), (6, 82, "iota_q4_n6.txt")] {
        let (n, limit) = (n.to_string(), limit.to_string());
        let base = ["iota", "--p", "3", "--q", "4", "--n", &n, "--table", &limit, "--mark-fixed"];
        assert_eq!(stdout(&base), golden(file), "{file}");
        let mut oracle = base.to_vec();
        oracle.push("--oracle");
        assert_eq!(stdout(&oracle), golden(file), "{file} (oracle)");
    }
}

#[test]
fn command_examples() {
    assert_eq!(stdout(&["fixed", "count", "--p", "3", "--q", "4", "--n", "4"]), "21\n");
    assert_eq!(stdout(&["iota", "--p", "3", "--q", "4", "--z", "-1/2", "--n", "6"]), "3^6:1,1,1,1,1,1\n");
    assert_eq!(stdout(&["iota", "--p", "3", "--q", "1", "--z", "5", "--n", "3"]), "5\n");
    assert_eq!(stdout(&["iota", "--p", "3", "--q", "4", "--z", "2", "--n", "4", "--oracle"]), "5\n");
    assert_eq!(stdout(&["exceptional", "--branch", "four", "--digits", "8"]), "3^8:1,1,2,0,2,1,0,1\n");
    assert_eq!(stdout(&["phi", "--q", "4", "--precision", "6"]), "3^5:1,1,1,1,1\n");
    assert_eq!(stdout(&["psi", "--z", "3^5:1,1,1,1,1", "--precision", "6"]), "3^6:1,1,0,0,0,0\n");
    assert_eq!(stdout(&["fixed", "rooted", "--q", "7", "--n", "5"]), "3^3:0,2,2 (v0 = 1)\n");
    assert_eq!(stdout(&["order", "--p", "3", "--q", "4", "--n", "4"]), "27\n");
    assert_eq!(stdout(&["order", "--p", "3", "--q", "4", "--n", "4", "--oracle"]), "27\n");
    assert_eq!(stdout(&["cocycle", "sum", "--p", "2", "--q", "5", "--n", "4"]), "8\n");
    assert_eq!(stdout(&["cocycle", "kernel", "--p", "5", "--q", "2", "--n", "2"]), "20\n");
    assert_eq!(stdout(&["padic", "mul", "--x", "3^4:2,1,0,0", "--y", "7"]), "3^4:2,2,0,1\n");
}

#[test]
fn enumerations_agree_between_methods() {
    let structural = stdout(&["--json", "--no-timing", "fixed", "enumerate", "--p", "3", "--q", "4", "--n", "5"]);
    let oracle = stdout(&["--json", "--no-timing", "fixed", "enumerate", "--p", "3", "--q", "4", "--n", "5", "--oracle"]);
    let s = OutputRecord::parse_line(structural.trim()).unwrap();
    let o = OutputRecord::parse_line(oracle.trim()).unwrap();
    assert_eq!((s.method, o.method), (Method::Structural, Method::Oracle));
    assert_eq!(s.result["count"], o.result["count"]);
    assert_eq!(s.result["count"], "21");
}

#[test]
fn json_records_round_trip() {
    let line = stdout(&["--json", "--no-timing", "iota", "--p", "3", "--q", "4", "--z", "-1/2", "--n", "6"]);
    let rec = OutputRecord::parse_line(line.trim()).unwrap();
    assert_eq!(rec.command, "iota");
    assert_eq!(rec.inputs["z"], "-1/2");
    assert_eq!(rec.result["digits"], "3^6:1,1,1,1,1,1");
    assert_eq!(rec.elapsed_us, None);
    assert_eq!(rec.to_line(), line.trim());

    let timed = stdout(&["--json", "phi", "--q", "4", "--precision", "8"]);
    let rec = OutputRecord::parse_line(timed.trim()).unwrap();
    assert!(rec.elapsed_us.is_some());
    assert_eq!(rec.result["kind"], "rooted");
}

#[test]
fn out_file_receives_the_output() {
    let path = std::env::temp_dir().join(format!("qiota-out-{}.txt", std::process::id()));
    let text = stdout(&["--out", path.to_str().unwrap(), "fixed", "count", "--p", "3", "--q", "7", "--n", "6"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let code = |args: &[&str]| qiota(args).status.code().unwrap();
    // domain: z ≡ 2 (mod 3) has no parameter
    assert_eq!(code(&["psi", "--z", "2", "--precision", "5"]), 1);
    // parse
    assert_eq!(code(&["iota", "--p", "3", "--q", "four", "--z", "1", "--n", "3"]), 1);
    assert_eq!(code(&["iota", "--p", "3", "--q", "4"]), 1);
    // precision: q known to 3 digits, Φ asked for 6
    assert_eq!(code(&["phi", "--q", "3^3:1,1,0", "--precision", "6"]), 2);
    // resource: beyond the precision cap
    assert_eq!(code(&["exceptional", "--branch", "seven", "--digits", "500"]), 4);
    assert_eq!(code(&["fixed", "enumerate", "--p", "3", "--q", "4", "--n", "12", "--oracle"]), 4);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn verify_reports_pass_with_case_counts() {
    let out = stdout(&["verify", "--suite", "oracle-equivalence", "--depth", "3"]);
    assert!(out.starts_with("PASS oracle-equivalence: "), "{out}");
    let line = stdout(&["--json", "verify", "--suite", "isometry", "--cases", "5", "--depth", "6"]);
    let rec = OutputRecord::parse_line(line.trim()).unwrap();
    assert_eq!(rec.result["passed"], true);
    assert_eq!(rec.result["reports"][0]["cases"], 5);
}
