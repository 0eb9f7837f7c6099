use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use gauged::jobs::{self, Command, GoldenStatus, JobSpec, OutputFormat};

#[derive(Parser)]
#[command(name = "gauged", version, about = "Exact torus stability, scaled-curve strata and truncated gauged potentials")]
struct Cli {
    /// Job or payload document (JSON or TOML).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Series truncation, for commands that take one.
    #[arg(long, global = true)]
    trunc: Option<u32>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand)]
enum Top {
    /// Run one job document.
    Run,
    /// Run a list of job documents.
    Batch,
    /// Check or regenerate golden outputs in a directory.
    Golden {
        #[command(subcommand)]
        action: GoldenAction,
    },
    #[command(subcommand)]
    Stability(StabilityCmd),
    #[command(subcommand)]
    Mundet(MundetCmd),
    #[command(subcommand)]
    Curves(CurvesCmd),
    #[command(subcommand)]
    Potential(PotentialCmd),
    #[command(subcommand)]
    Qde(QdeCmd),
    #[command(subcommand)]
    Presentation(PresentationCmd),
    #[command(subcommand)]
    Age(AgeCmd),
    #[command(subcommand)]
    Wallcross(WallcrossCmd),
}

#[derive(Subcommand)]
enum GoldenAction {
    Check { dir: PathBuf },
    Update { dir: PathBuf },
}

#[derive(Subcommand)]
enum StabilityCmd {
    /// Classify supports of a weight system read from --input.
    Classify {
        #[arg(long, value_delimiter = ',')]
        support: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<String>>,
    },
    /// Kempf-Ness strata of a weight system read from --input.
    Strata,
}

#[derive(Subcommand)]
enum MundetCmd {
    /// Verdict for a gauged map read from --input.
    Check {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<String>>,
    },
    Quotdim {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        dp: i64,
        #[arg(long, allow_hyphen_values = true)]
        du: i64,
    },
}

#[derive(Subcommand)]
enum CurvesCmd {
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        mode: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    Balanced {
        #[arg(long)]
        term: String,
        #[arg(long)]
        mode: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
    },
    Divisors {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        mode: String,
        #[arg(long)]
        bound: Option<u32>,
    },
}

#[derive(Subcommand)]
enum PotentialCmd {
    /// Weights as `1,1,-1` (rank one) or `1,0;0,1`.
    Localized {
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        branch: Option<String>,
    },
    Jframed {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        symbolic: bool,
        /// `theta=1/2,1/3;xi1=1/5;xi2=1/7;zeta=1/11`.
        #[arg(long, allow_hyphen_values = true)]
        specialize: Option<String>,
    },
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
}

#[derive(Subcommand)]
enum QdeCmd {
    Check {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ktheory: bool,
    },
}

#[derive(Subcommand)]
enum PresentationCmd {
    Projective {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ktheory: bool,
    },
    /// Reads `{weights, generators}` from --input unless both flags are given.
    Toric {
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Degree classes as `1` or `1,0;0,1`.
        #[arg(long)]
        generators: Option<String>,
    },
}

#[derive(Subcommand)]
enum AgeCmd {
    Compute {
        #[arg(long)]
        order: u32,
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum WallcrossCmd {
    Crepancy {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
    },
}

struct Fail(u8, String);

fn read_input(cli: &Cli) -> Result<Value, Fail> {
    let path = cli.input.as_ref().ok_or_else(|| Fail(2, "--input is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
    jobs::parse_document(&text).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn parse_rows(text: &str) -> Result<Value, Fail> {
    let rows: Result<Vec<Vec<i64>>, _> = text
        .split(';')
        .map(|row| row.split(',').map(|x| x.trim().parse::<i64>()).collect())
        .collect();
    let rows = rows.map_err(|e| Fail(2, format!("`{text}`: {e}")))?;
    Ok(if text.contains(';') {
        json!(rows)
    } else {
        json!(rows.into_iter().flatten().collect::<Vec<_>>())
    })
}

fn parse_point(text: &str) -> Result<Value, Fail> {
    let mut point = Map::new();
    for part in text.split(';') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Fail(2, format!("`{part}` is not key=value")))?;
        let value = if key == "theta" {
            json!(value.split(',').collect::<Vec<_>>())
        } else {
            json!(value)
        };
        point.insert(key.trim().to_string(), value);
    }
    Ok(Value::Object(point))
}

fn with(mut base: Value, extra: &[(&str, Option<Value>)]) -> Value {
    for (k, v) in extra {
        if let Some(v) = v {
            base[*k] = v.clone();
        }
    }
    base
}

fn build(cli: &Cli) -> Result<JobSpec, Fail> {
    let trunc = cli.trunc.map(|t| json!(t));
    let (command, payload) = match &cli.command {
        Top::Run => {
            let v = read_input(cli)?;
            let mut job: JobSpec = serde_json::from_value(v).map_err(|e| Fail(2, format!("malformed job: {e}")))?;
            let takes_trunc = matches!(
                job.command,
                Command::PotentialLocalized | Command::PotentialJframed | Command::QdeCheck
            );
            if let (true, Some(t), Value::Object(m)) = (takes_trunc, cli.trunc, &mut job.payload) {
                m.entry("trunc").or_insert(json!(t));
            }
            if let Some(o) = cli.output {
                job.output = o;
            }
            return Ok(job);
        }
        Top::Batch | Top::Golden { .. } => unreachable!("handled separately"),
        Top::Stability(StabilityCmd::Classify { support, lambda }) => {
            let ws = read_input(cli)?;
            let ws = ws.get("weight_system").cloned().unwrap_or(ws);
            let p = with(
                json!({ "weight_system": ws }),
                &[("support", support.as_ref().map(|s| json!(s))), ("lambda", lambda.as_ref().map(|l| json!(l)))],
            );
            (Command::StabilityClassify, p)
        }
        Top::Stability(StabilityCmd::Strata) => {
            let ws = read_input(cli)?;
            let ws = ws.get("weight_system").cloned().unwrap_or(ws);
            (Command::StabilityStrata, json!({ "weight_system": ws }))
        }
        Top::Mundet(MundetCmd::Check { lambda }) => {
            let p = with(read_input(cli)?, &[("lambda", lambda.as_ref().map(|l| json!(l)))]);
            (Command::MundetCheck, p)
        }
        Top::Mundet(MundetCmd::Quotdim { k, dp, du }) => (Command::MundetQuotdim, json!({"k": k, "dp": dp, "du": du})),
        Top::Curves(CurvesCmd::Enumerate { n, mode, bound }) => (
            Command::CurvesEnumerate,
            with(json!({"n": n, "mode": mode}), &[("bound", bound.map(|b| json!(b)))]),
        ),
        Top::Curves(CurvesCmd::Balanced { term, mode, params }) => (
            Command::CurvesBalanced,
            json!({"term": term, "mode": mode, "params": params}),
        ),
        Top::Curves(CurvesCmd::Divisors { n, mode, bound }) => (
            Command::CurvesDivisors,
            with(json!({"n": n, "mode": mode}), &[("bound", bound.map(|b| json!(b)))]),
        ),
        Top::Potential(PotentialCmd::Localized { weights, branch }) => (
            Command::PotentialLocalized,
            with(
                json!({ "weights": parse_rows(weights)? }),
                &[("trunc", trunc), ("branch", branch.as_ref().map(|b| json!(b)))],
            ),
        ),
        Top::Potential(PotentialCmd::Jframed { k, r, symbolic, specialize }) => {
            let point = specialize.as_deref().map(parse_point).transpose()?;
            let mode = if *symbolic { "symbolic" } else { "specialized" };
            (
                Command::PotentialJframed,
                with(json!({"k": k, "r": r, "mode": mode}), &[("trunc", trunc), ("point", point)]),
            )
        }
        Top::Potential(PotentialCmd::Delta { m }) => (Command::PotentialDelta, json!({ "m": m })),
        Top::Qde(QdeCmd::Check { k, ktheory }) => (
            Command::QdeCheck,
            with(json!({"k": k, "ktheory": ktheory}), &[("trunc", trunc)]),
        ),
        Top::Presentation(PresentationCmd::Projective { k, ktheory }) => {
            (Command::PresentationProjective, json!({"k": k, "ktheory": ktheory}))
        }
        Top::Presentation(PresentationCmd::Toric { weights, generators }) => {
            let p = match (weights, generators) {
                (Some(w), Some(g)) => {
                    let g = match parse_rows(g)? {
                        Value::Array(flat) if flat.iter().all(Value::is_number) => {
                            json!(flat.into_iter().map(|x| json!([x])).collect::<Vec<_>>())
                        }
                        nested => nested,
                    };
                    json!({"weights": parse_rows(w)?, "generators": g})
                }
                _ => read_input(cli)?,
            };
            (Command::PresentationToric, p)
        }
        Top::Age(AgeCmd::Compute { order, exponents }) => {
            (Command::AgeCompute, json!({"order": order, "exponents": exponents}))
        }
        Top::Wallcross(WallcrossCmd::Crepancy { weights }) => (Command::WallcrossCrepancy, json!({ "weights": weights })),
    };
    Ok(JobSpec::new(command, payload).with_output(cli.output.unwrap_or_default()))
}

fn execute(cli: &Cli) -> Result<(u8, String), Fail> {
    match &cli.command {
        Top::Batch => {
            let path = cli.input.as_ref().ok_or_else(|| Fail(2, "--input is required".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
            let list = jobs::parse_batch(&text).map_err(|e| Fail(2, e.0))?;
            let report = jobs::batch(&list);
            Ok((report.exit as u8, report.render(cli.output.unwrap_or_default())))
        }
        Top::Golden { action } => {
            let (dir, update) = match action {
                GoldenAction::Check { dir } => (dir, false),
                GoldenAction::Update { dir } => (dir, true),
            };
            let results = jobs::golden(dir, update).map_err(|e| Fail(2, format!("{}: {e}", dir.display())))?;
            let mut out = String::new();
            let mut exit = 0;
            for (case, status) in results {
                let name = case.job.file_name().unwrap_or_default().to_string_lossy().into_owned();
                let word = match status {
                    GoldenStatus::Match => "ok".to_string(),
                    GoldenStatus::Written => "written".to_string(),
                    GoldenStatus::Mismatch => {
                        exit = exit.max(1);
                        "mismatch".to_string()
                    }
                    GoldenStatus::Missing => {
                        exit = exit.max(1);
                        "missing output".to_string()
                    }
                    GoldenStatus::Malformed(m) => {
                        exit = 2;
                        format!("malformed: {m}")
                    }
                };
                out.push_str(&format!("{name}: {word}\n"));
            }
            Ok((exit, out))
        }
        _ => {
            let job = build(cli)?;
            let o = jobs::run(&job);
            Ok((o.exit as u8, o.output))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global();
    match execute(&cli) {
        Ok((code, out)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("gauged: {msg}");
            ExitCode::from(code)
        }
    }
}
