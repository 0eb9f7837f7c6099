//! Running job documents through the dispatcher, as the command line does.

use gauged::jobs::{batch, parse_batch, run, Command, JobSpec, OutputFormat};
use serde_json::json;

fn main() {
    let job = JobSpec::new(Command::CurvesEnumerate, json!({"n": 2, "mode": "affine"}));
    print!("{}", run(&job).output);
    let job = JobSpec::new(Command::AgeCompute, json!({"order": 2, "exponents": [1, 1]})).with_output(OutputFormat::Json);
    print!("{}", run(&job).output);

    let doc = r#"
[[jobs]]
command = "presentation.projective"
payload = { k = 2 }

[[jobs]]
command = "qde.check"
payload = { k = 3, trunc = 3, ktheory = true }

[[jobs]]
command = "wallcross.crepancy"
payload = { weights = [0, 1, 1, -1, -1] }
expect = "crepant\n"
"#;
    let report = batch(&parse_batch(doc).expect("valid TOML"));
    print!("{}", report.render(OutputFormat::Text));
}
