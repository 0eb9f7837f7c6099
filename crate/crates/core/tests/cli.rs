use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gauged(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauged")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct TempFile(std::path::PathBuf);

impl TempFile {
    fn as_str(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn temp_file(name: &str, body: &str) -> TempFile {
    let path = std::env::temp_dir().join(format!("gauged-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    TempFile(path)
}

#[test]
fn exit_codes() {
    let ok = gauged(&["mundet", "quotdim", "--k", "2", "--dp", "2", "--du", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "dimension = 7\n");

    let domain = gauged(&["mundet", "quotdim", "--k", "0", "--dp", "1", "--du", "1"]);
    assert_eq!(domain.status.code(), Some(1));

    let bad = temp_file("bad.json", r#"{"command": "age.compute", "payload": {"order": 2}}"#);
    let malformed = gauged(&["run", "--input", bad.as_str()]);
    assert_eq!(malformed.status.code(), Some(2));

    let unknown = temp_file("unknown.json", r#"{"command": "nope", "payload": {}}"#);
    assert_eq!(gauged(&["run", "--input", unknown.as_str()]).status.code(), Some(2));

    assert_eq!(gauged(&["run", "--input", "/nonexistent/job.json"]).status.code(), Some(2));
}

#[test]
fn json_output_parses() {
    let o = gauged(&["--output", "json", "potential", "delta", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert!(v.is_object());

    let o = gauged(&["--output", "json", "mundet", "quotdim", "--k", "0", "--dp", "1", "--du", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    assert!(v["error"]["message"].is_string());
}

#[test]
fn direct_and_job_forms_agree() {
    let job = temp_file("age.json", r#"{"command": "age.compute", "payload": {"order": 3, "exponents": [1, 2, 2]}}"#);
    let a = gauged(&["run", "--input", job.as_str()]);
    let b = gauged(&["age", "compute", "--order", "3", "--exponents", "1,2,2"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), "age = 5/3\n");
}

#[test]
fn batch_reports_each_job() {
    let doc = r#"
[[jobs]]
command = "wallcross.crepancy"
payload = { weights = [0, 1, 1, -1, -1] }
expect = "crepant\n"

[[jobs]]
command = "mundet.quotdim"
payload = { k = 0, dp = 1, du = 1 }

[[jobs]]
command = "age.compute"
payload = { order = 2, exponents = [1, 1] }
expect = "age = 0\n"
"#;
    let file = temp_file("batch.toml", doc);
    for jobs in ["1", "4"] {
        let o = gauged(&["--jobs", jobs, "batch", "--input", file.as_str()]);
        assert_eq!(o.status.code(), Some(1));
        let text = stdout(&o);
        assert!(text.contains("job 1 wallcross.crepancy: pass"), "{text}");
        assert!(text.contains("job 2 mundet.quotdim: fail"), "{text}");
        assert!(text.contains("job 3 age.compute: fail"), "{text}");
        assert!(text.ends_with("1/3 jobs passed\n"), "{text}");
    }
}

#[test]
fn batch_rejects_malformed_job_by_index() {
    let file = temp_file(
        "malformed.json",
        r#"[{"command": "potential.delta", "payload": {"m": 1}}, {"command": "potential.delta", "payload": {"n": 1}}]"#,
    );
    let o = gauged(&["batch", "--input", file.as_str()]);
    assert_eq!(o.status.code(), Some(2));
    let all = format!("{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(all.contains("job 2"), "{all}");
}

#[test]
fn empty_batch_passes() {
    let file = temp_file("empty.json", "[]");
    let o = gauged(&["batch", "--input", file.as_str()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0/0 jobs passed"));
}

#[test]
fn golden_cases_match() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let o = gauged(&["golden", "check", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
