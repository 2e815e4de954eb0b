use std::process::{Command, Output};

fn fibcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fibcomp(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
        .unwrap_or_else(|| panic!("no {key} line in\n{text}"))
}

#[test]
fn convert_in_every_direction() {
    assert_eq!(
        stdout(&["convert", "--system", "fibc", "--from", "int", "--", "-5"]),
        "10000\n"
    );
    assert_eq!(
        stdout(&["convert", "--system", "fib", "--from", "word", "101010"]),
        "20\n"
    );
    assert_eq!(
        stdout(&["convert", "--system", "2c", "--from", "word", "11100"]),
        "-4\n"
    );
    assert_eq!(
        stdout(&["convert", "--system", "fib", "--from", "int", "0"]),
        "eps\n"
    );
    assert_eq!(
        stdout(&["convert", "--system", "fib", "--from", "int", "58"]),
        "100000100\n"
    );
    assert_eq!(
        stdout(&["convert", "--system", "fibc", "--from", "word", "1000100"]),
        "-10\n"
    );
    assert_eq!(
        stdout(&["convert", "--system", "2c", "--from", "int", "-4"]),
        "100\n"
    );
}

#[test]
fn negative_numbers_without_separator() {
    assert_eq!(
        stdout(&["convert", "--system", "fibc", "--from", "int", "-1"]),
        "1\n"
    );
}

#[test]
fn add_in_complement() {
    let out = stdout(&["add", "--system", "fibc", "--", "-1", "-9"]);
    assert_eq!(field(&out, "raw"), "100110·100");
    assert_eq!(field(&out, "value"), "-10");
    assert_eq!(field(&out, "result"), "1000100");

    let out = stdout(&["add", "0", "0"]);
    assert_eq!(field(&out, "raw"), "eps·000");
    assert_eq!(field(&out, "result"), "0");
}

#[test]
fn add_in_zeckendorf_with_trace() {
    let out = stdout(&["add", "--system", "fib", "--trace", "33", "25"]);
    assert_eq!(field(&out, "sum"), "2010202");
    assert_eq!(out.lines().filter(|l| l.starts_with("step")).count(), 7);
    assert!(out.contains("000.0 -2/0-> 010.4"));
    assert_eq!(field(&out, "raw"), "0010110·100");
    assert_eq!(field(&out, "result"), "100000100");
}

#[test]
fn sub_matches_add_of_negation() {
    let out = stdout(&["sub", "3", "10"]);
    assert_eq!(field(&out, "value"), "-7");
    assert_eq!(field(&out, "result"), "1001001");
}

#[test]
fn fib_add_rejects_negative_input() {
    let out = fibcomp(&["add", "--system", "fib", "--", "-1", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonnegative"));
}

#[test]
fn malformed_word_is_a_usage_error() {
    let out = fibcomp(&["convert", "--system", "fib", "--from", "word", "1a0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fibcomp(&["trace", "--machine", "B", "0130"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_in_both_formats() {
    let text = stdout(&["table"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 40);
    let row21: Vec<&str> = lines
        .iter()
        .find(|l| l.starts_with("21 "))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(row21, ["21", "5", "01·000", "5", "-1", "1·010", "-1"]);
    let row121: Vec<&str> = lines
        .iter()
        .find(|l| l.starts_with("121 "))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(row121[1], "8");

    let csv = stdout(&["table", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 40);
    assert!(csv.lines().any(|l| l == "21,5,01·000,5,-1,1·010,-1"));
}

#[test]
fn export_machines() {
    let json = stdout(&["export-machine", "--machine", "T", "--format", "json"]);
    assert_eq!(json.matches("\"from\"").count(), 33);
    assert!(json.contains("\"initial\": \"start\""));

    let dot = stdout(&["export-machine", "--machine", "B", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"000.0\""));

    let dot = stdout(&["export-machine", "--machine", "Z"]);
    assert_eq!(dot.matches(" [label=").count(), 30);
}

#[test]
fn trace_modified_adder() {
    let out = stdout(&["trace", "--machine", "T", "2"]);
    assert!(out.contains("start -2/eps-> 100.6"));
    assert_eq!(field(&out, "output"), "eps");
    assert_eq!(field(&out, "final"), "100");
}

#[test]
fn verify_passes_on_the_real_machines() {
    let out = stdout(&["verify", "--depth", "6", "--range", "50"]);
    assert!(out.lines().all(|l| !l.starts_with("FAIL")));
    assert!(out.ends_with("checks passed\n"));
    stdout(&["verify", "--depth", "0", "--range", "5"]);
}

#[test]
fn verify_catches_a_corrupted_machine() {
    let json = stdout(&["export-machine", "--machine", "B", "--format", "json"]);
    // the first transition is 000.0 reading 0
    let broken = json.replacen("\"output\": \"0\"", "\"output\": \"1\"", 1);
    assert_ne!(broken, json);
    let path = std::env::temp_dir().join(format!("fibcomp-broken-{}.json", std::process::id()));
    std::fs::write(&path, broken).unwrap();
    let out = fibcomp(&[
        "verify",
        "--depth",
        "4",
        "--range",
        "10",
        "--berstel-json",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("counterexample"));
}

#[test]
fn verify_reports_unreadable_machine_file() {
    let out = fibcomp(&["verify", "--berstel-json", "/nonexistent/b.json"]);
    assert_eq!(out.status.code(), Some(2));
}
