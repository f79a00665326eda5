use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pointbound")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn second_line(text: &str) -> Vec<String> {
    text.lines().nth(1).expect("one data row").split('\t').map(str::to_string).collect()
}

#[test]
fn bound_examples() {
    let row = second_line(&stdout(&["bound", "--q", "5", "--g", "19", "--method", "wo3-serre"]));
    assert_eq!(row[3], "-1723/36");
    assert_eq!(row[5], "53");

    let row = second_line(&stdout(&["bound", "--q", "3", "--g", "1", "--method", "ihara"]));
    assert_eq!(row[5], "7");

    let row = second_line(&stdout(&["bound", "--q", "5", "--g", "10", "--method", "ihara-serre"]));
    assert_eq!(row[5], "36");
    assert!(row[7].contains("alpha integral"));

    let row = second_line(&stdout(&["bound", "--q", "5", "--g", "19"]));
    assert_eq!((row[0].as_str(), row[5].as_str()), ("wo3-serre", "53"));
}

#[test]
fn json_output_is_exact() {
    let out = stdout(&["rec3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["t1_lower"], "-1723/36");
    assert_eq!(v[3]["n1_upper"], 163);
    let out = stdout(&["bound", "--q", "2", "--g", "1", "--method", "weil", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["t1_lower"], "0 + -2*sqrt(2)");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bound", "--q", "6", "--g", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--q", "5", "--g", "19", "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--q", "101", "--g", "2", "--method", "ihara"]).status.code(), Some(1));
    assert_eq!(run(&["seq4q", "--qmax", "20"]).status.code(), Some(0));
    assert_eq!(run(&["scan-a3", "--q", "5", "--g", "19", "--dmax", "0"]).status.code(), Some(2));
    assert_eq!(run(&["compare", "--records", "/nonexistent/records.csv"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--q", "6", "--g", "2", "--no-check", "--method", "weil"]).status.code(), Some(0));
}

#[test]
fn compare_against_snapshot() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# local snapshot\nq,g,best_upper,best_lower,source\n53,47,634,400,x\n9,12,60,60,y").unwrap();
    let path = f.path().to_str().unwrap();
    let out = run(&["compare", "--records", path]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let status = |q: &str, g: &str| {
        text.lines()
            .map(|l| l.split('\t').collect::<Vec<_>>())
            .find(|c| c[0] == q && c[1] == g)
            .map(|c| c[7].to_string())
    };
    assert_eq!(status("53", "47").as_deref(), Some("new_record"));
    assert_eq!(status("9", "12").as_deref(), Some("worse_than_record"));
    assert_eq!(status("11", "8").as_deref(), Some("no_record_data"));
    assert!(String::from_utf8_lossy(&out.stderr).is_empty());

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "q,g,best_upper\n5,1,10\n12,1,10").unwrap();
    let out = run(&["compare", "--records", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn contradiction_warns_on_stderr() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "q,g,best_upper,best_lower\n53,47,700,640").unwrap();
    let out = run(&["compare", "--records", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("WARNING: q = 53, g = 47"));
}

#[test]
fn deterministic_output() {
    for args in [&["table1"][..], &["seq4q", "--qmax", "300"], &["asym", "--q", "23", "--gmax", "222"]] {
        assert_eq!(stdout(args), stdout(args));
    }
    assert_eq!(stdout(&["asym", "--q", "23", "--gmax", "222"]).lines().count(), 214);
}
