//! Job documents: one command plus its payload, dispatched to the library
//! and rendered as canonical text or JSON.
//!
//! Exit codes: 0 on success, 1 on a domain error (or a failed check), 2 on a
//! malformed job. Rendering is deterministic, so identical jobs give
//! byte-identical output.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::rational::{format_rational, from_texts, RationalText};
use crate::curves::{self, CurveError, EdgeParams, Mode, DEFAULT_BOUND};
use crate::mundet::{self, GaugedMapData, GaugedMapJson, MundetVerdictJson};
use crate::potentials::framed::{format_point, FramedPoint};
use crate::potentials::{self, Branch, FramedMode, FramedSheafSpec, LinearActionSpec};
use crate::stability::{self, StratumJson, VerdictJson, WeightSystem, WeightSystemJson};

pub const DEFAULT_TRUNCATION: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Command {
    #[serde(rename = "stability.classify")]
    StabilityClassify,
    #[serde(rename = "stability.strata")]
    StabilityStrata,
    #[serde(rename = "mundet.check")]
    MundetCheck,
    #[serde(rename = "mundet.quotdim")]
    MundetQuotdim,
    #[serde(rename = "curves.enumerate")]
    CurvesEnumerate,
    #[serde(rename = "curves.balanced")]
    CurvesBalanced,
    #[serde(rename = "curves.divisors")]
    CurvesDivisors,
    #[serde(rename = "potential.localized")]
    PotentialLocalized,
    #[serde(rename = "potential.jframed")]
    PotentialJframed,
    #[serde(rename = "potential.delta")]
    PotentialDelta,
    #[serde(rename = "qde.check")]
    QdeCheck,
    #[serde(rename = "presentation.projective")]
    PresentationProjective,
    #[serde(rename = "presentation.toric")]
    PresentationToric,
    #[serde(rename = "age.compute")]
    AgeCompute,
    #[serde(rename = "wallcross.crepancy")]
    WallcrossCrepancy,
}

impl Command {
    pub const ALL: [Command; 15] = [
        Command::StabilityClassify,
        Command::StabilityStrata,
        Command::MundetCheck,
        Command::MundetQuotdim,
        Command::CurvesEnumerate,
        Command::CurvesBalanced,
        Command::CurvesDivisors,
        Command::PotentialLocalized,
        Command::PotentialJframed,
        Command::PotentialDelta,
        Command::QdeCheck,
        Command::PresentationProjective,
        Command::PresentationToric,
        Command::AgeCompute,
        Command::WallcrossCrepancy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::StabilityClassify => "stability.classify",
            Command::StabilityStrata => "stability.strata",
            Command::MundetCheck => "mundet.check",
            Command::MundetQuotdim => "mundet.quotdim",
            Command::CurvesEnumerate => "curves.enumerate",
            Command::CurvesBalanced => "curves.balanced",
            Command::CurvesDivisors => "curves.divisors",
            Command::PotentialLocalized => "potential.localized",
            Command::PotentialJframed => "potential.jframed",
            Command::PotentialDelta => "potential.delta",
            Command::QdeCheck => "qde.check",
            Command::PresentationProjective => "presentation.projective",
            Command::PresentationToric => "presentation.toric",
            Command::AgeCompute => "age.compute",
            Command::WallcrossCrepancy => "wallcross.crepancy",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default = "empty_payload")]
    pub payload: Value,
    #[serde(default)]
    pub output: OutputFormat,
    /// Expected rendered output; batch mode compares against it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<String>,
}

fn empty_payload() -> Value {
    Value::Object(Default::default())
}

impl JobSpec {
    pub fn new(command: Command, payload: Value) -> Self {
        JobSpec {
            command,
            payload,
            output: OutputFormat::Text,
            expect: None,
        }
    }

    pub fn with_output(mut self, output: OutputFormat) -> Self {
        self.output = output;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobOutcome {
    pub exit: i32,
    pub output: String,
}

/// A job that failed to parse or validate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct SchemaError(pub String);

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassifyPayload {
    weight_system: WeightSystemJson,
    #[serde(default)]
    support: Option<Vec<usize>>,
    #[serde(default)]
    lambda: Option<Vec<RationalText>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrataPayload {
    weight_system: WeightSystemJson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MundetPayload {
    weight_system: WeightSystemJson,
    bundle_degree: Vec<i64>,
    support: Vec<usize>,
    #[serde(default)]
    section_degree: i64,
    #[serde(default)]
    lambda: Option<Vec<RationalText>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotPayload {
    k: u32,
    dp: i64,
    du: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnumeratePayload {
    n: u32,
    mode: Mode,
    #[serde(default)]
    bound: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct BalancedPayload {
    term: String,
    mode: Mode,
    params: Vec<RationalText>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Weights {
    Flat(Vec<i64>),
    Nested(Vec<Vec<i64>>),
}

impl Weights {
    fn nested(self) -> Vec<Vec<i64>> {
        match self {
            Weights::Flat(v) => v.into_iter().map(|w| vec![w]).collect(),
            Weights::Nested(v) => v,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalizedPayload {
    weights: Weights,
    #[serde(default)]
    rank: Option<usize>,
    #[serde(default)]
    trunc: Option<u32>,
    #[serde(default)]
    branch: Branch,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
enum FramedModeName {
    Symbolic,
    #[default]
    Specialized,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointPayload {
    theta: Vec<RationalText>,
    xi1: RationalText,
    xi2: RationalText,
    zeta: RationalText,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct FramedPayload {
    k: u32,
    r: u32,
    #[serde(default)]
    trunc: Option<u32>,
    #[serde(default)]
    mode: FramedModeName,
    #[serde(default)]
    point: Option<PointPayload>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaPayload {
    m: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct QdePayload {
    k: u32,
    #[serde(default)]
    trunc: Option<u32>,
    #[serde(default)]
    ktheory: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProjectivePayload {
    k: u32,
    #[serde(default)]
    ktheory: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ToricPayload {
    weights: Weights,
    #[serde(default)]
    rank: Option<usize>,
    generators: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct AgePayload {
    order: u32,
    exponents: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CrepancyPayload {
    weights: Vec<i64>,
}

#[derive(Debug, Clone)]
enum Payload {
    Classify(ClassifyPayload),
    Strata(StrataPayload),
    Mundet(MundetPayload),
    Quot(QuotPayload),
    Enumerate(EnumeratePayload),
    Balanced(BalancedPayload),
    Divisors(EnumeratePayload),
    Localized(LocalizedPayload),
    Framed(FramedPayload),
    Delta(DeltaPayload),
    Qde(QdePayload),
    Projective(ProjectivePayload),
    Toric(ToricPayload),
    Age(AgePayload),
    Crepancy(CrepancyPayload),
}

fn decode<T: DeserializeOwned>(command: Command, v: &Value) -> Result<T, SchemaError> {
    T::deserialize(v).map_err(|e| SchemaError(format!("{command} payload: {e}")))
}

fn validate(job: &JobSpec) -> Result<Payload, SchemaError> {
    let c = job.command;
    let v = &job.payload;
    Ok(match c {
        Command::StabilityClassify => Payload::Classify(decode(c, v)?),
        Command::StabilityStrata => Payload::Strata(decode(c, v)?),
        Command::MundetCheck => Payload::Mundet(decode(c, v)?),
        Command::MundetQuotdim => Payload::Quot(decode(c, v)?),
        Command::CurvesEnumerate => Payload::Enumerate(decode(c, v)?),
        Command::CurvesBalanced => Payload::Balanced(decode(c, v)?),
        Command::CurvesDivisors => Payload::Divisors(decode(c, v)?),
        Command::PotentialLocalized => Payload::Localized(decode(c, v)?),
        Command::PotentialJframed => Payload::Framed(decode(c, v)?),
        Command::PotentialDelta => Payload::Delta(decode(c, v)?),
        Command::QdeCheck => Payload::Qde(decode(c, v)?),
        Command::PresentationProjective => Payload::Projective(decode(c, v)?),
        Command::PresentationToric => Payload::Toric(decode(c, v)?),
        Command::AgeCompute => Payload::Age(decode(c, v)?),
        Command::WallcrossCrepancy => Payload::Crepancy(decode(c, v)?),
    })
}

/// Checks a job against its command's payload schema.
pub fn check_schema(job: &JobSpec) -> Result<(), SchemaError> {
    validate(job).map(|_| ())
}

/// Rendered result before formatting.
struct Rendered {
    text: String,
    json: Value,
    exit: i32,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Self {
        Rendered { text, json, exit: 0 }
    }
}

/// A domain error from one of the library modules.
#[derive(Debug, Clone, Serialize)]
struct DomainError {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<curves::Violation>,
}

impl DomainError {
    fn new(kind: &'static str, e: impl fmt::Display) -> Self {
        DomainError {
            kind,
            message: e.to_string(),
            violation: None,
        }
    }
}

impl From<stability::StabilityError> for DomainError {
    fn from(e: stability::StabilityError) -> Self {
        DomainError::new("stability", e)
    }
}

impl From<mundet::MundetError> for DomainError {
    fn from(e: mundet::MundetError) -> Self {
        DomainError::new("mundet", e)
    }
}

impl From<potentials::PotentialError> for DomainError {
    fn from(e: potentials::PotentialError) -> Self {
        DomainError::new("potential", e)
    }
}

impl From<CurveError> for DomainError {
    fn from(e: CurveError) -> Self {
        let violation = match &e {
            CurveError::Invalid(v) => Some(v.clone()),
            _ => None,
        };
        DomainError {
            kind: "curves",
            message: e.to_string(),
            violation,
        }
    }
}

fn lines<I: IntoIterator<Item = String>>(it: I) -> String {
    let mut s = String::new();
    for l in it {
        s.push_str(&l);
        s.push('\n');
    }
    s
}

fn series_rendered(s: &crate::algebra::series::TruncatedSeries) -> Rendered {
    Rendered::ok(format!("{s}\n"), json!(s.to_json()))
}

fn dispatch(p: Payload) -> Result<Rendered, DomainError> {
    match p {
        Payload::Classify(p) => {
            let ws = WeightSystem::try_from(p.weight_system)?;
            let supports = match p.support {
                Some(s) => vec![ws.support(s)?],
                None => ws.all_supports(),
            };
            let lambda = p.lambda.map(|l| from_texts(&l));
            let mut text = Vec::new();
            let mut out = Vec::new();
            for s in &supports {
                let v = stability::classify(&ws, s);
                let hm = match &lambda {
                    Some(l) => Some(stability::hm_weight(&ws, s, l)?),
                    None => None,
                };
                let mut line = format!("{s}: {v}");
                if let Some(h) = &hm {
                    line.push_str(&format!(" hm_weight={}", format_rational(h)));
                }
                text.push(line);
                let mut entry = json!({
                    "support": s.iter().collect::<Vec<_>>(),
                    "verdict": VerdictJson::from(&v),
                });
                if let Some(h) = hm {
                    entry["hm_weight"] = json!(RationalText(h));
                }
                out.push(entry);
            }
            Ok(Rendered::ok(lines(text), json!(out)))
        }
        Payload::Strata(p) => {
            let ws = WeightSystem::try_from(p.weight_system)?;
            let strata = stability::kn_strata(&ws);
            let mut text: Vec<String> = strata
                .iter()
                .enumerate()
                .map(|(i, s)| format!("stratum {}: {s}", i + 1))
                .collect();
            let mut members = Vec::new();
            for s in ws.all_supports() {
                let idx = stability::stratum_of(&ws, &strata, &s);
                text.push(match idx {
                    Some(i) => format!("{s} -> stratum {}", i + 1),
                    None => format!("{s} -> semistable"),
                });
                members.push(json!({
                    "support": s.iter().collect::<Vec<_>>(),
                    "stratum": idx.map(|i| i + 1),
                }));
            }
            let strata_json: Vec<StratumJson> = strata.iter().map(StratumJson::from).collect();
            Ok(Rendered::ok(
                lines(text),
                json!({"strata": strata_json, "supports": members}),
            ))
        }
        Payload::Mundet(p) => {
            let g = GaugedMapData::try_from(GaugedMapJson {
                weight_system: p.weight_system,
                bundle_degree: p.bundle_degree,
                support: p.support,
                section_degree: p.section_degree,
            })?;
            let v = mundet::mundet_classify(&g);
            let mut text = v.to_string();
            let mut j = json!({"verdict": MundetVerdictJson::from(&v)});
            if let Some(l) = p.lambda {
                let w = mundet::mundet_weight_toric(&g, &from_texts(&l))?;
                text.push_str(&format!(" weight={w}"));
                j["weight"] = json!(w.to_string());
            }
            Ok(Rendered::ok(format!("{text}\n"), j))
        }
        Payload::Quot(p) => {
            let d = mundet::quot_moduli_dimension(p.k, p.dp, p.du)?;
            Ok(Rendered::ok(format!("dimension = {d}\n"), json!({"dimension": d})))
        }
        Payload::Enumerate(p) => {
            let types = curves::enumerate_types(p.n, p.mode, p.bound.unwrap_or(DEFAULT_BOUND))?;
            let mut text = Vec::new();
            let mut out = Vec::new();
            for t in &types {
                let d = curves::stratum_dimension(t)?;
                text.push(format!("{} dim={d}", t.term()));
                out.push(json!({"term": t.term(), "dimension": d}));
            }
            Ok(Rendered::ok(lines(text), json!(out)))
        }
        Payload::Balanced(p) => {
            let t = curves::parse_term(&p.term, p.mode)?;
            let ok = curves::check_balanced(&t, &EdgeParams(from_texts(&p.params)))?;
            Ok(Rendered::ok(
                format!("balanced = {ok}\n"),
                json!({"term": t.term(), "balanced": ok}),
            ))
        }
        Payload::Divisors(p) => {
            let rel = curves::divisor_pairs(p.n, p.mode, p.bound.unwrap_or(DEFAULT_BOUND))?;
            let side = |ms: &[curves::DivisorMember]| {
                ms.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
            };
            let text = format!(
                "{}: {}\n{}: {}\n",
                rel.left_name,
                side(&rel.left),
                rel.right_name,
                side(&rel.right)
            );
            Ok(Rendered::ok(text, json!(rel)))
        }
        Payload::Localized(p) => {
            let weights = p.weights.nested();
            let rank = p.rank.or_else(|| weights.first().map(Vec::len)).unwrap_or(1);
            let spec = LinearActionSpec::new(rank, weights, p.trunc.unwrap_or(DEFAULT_TRUNCATION))?;
            Ok(series_rendered(&potentials::localized_potential(&spec, p.branch)))
        }
        Payload::Framed(p) => {
            let truncation = p.trunc.unwrap_or(DEFAULT_TRUNCATION);
            let mode = match (p.mode, p.point) {
                (FramedModeName::Symbolic, None) => FramedMode::Symbolic,
                (FramedModeName::Symbolic, Some(_)) => {
                    return Err(DomainError::new("potential", "a point is only used in specialized mode"))
                }
                (FramedModeName::Specialized, point) => FramedMode::Specialized(match point {
                    Some(pt) => FramedPoint {
                        theta: from_texts(&pt.theta),
                        xi1: pt.xi1.0,
                        xi2: pt.xi2.0,
                        zeta: pt.zeta.0,
                    },
                    None => FramedPoint::default_for(p.k),
                }),
            };
            let header = match &mode {
                FramedMode::Symbolic => None,
                FramedMode::Specialized(pt) => Some(format_point(pt)),
            };
            let spec = FramedSheafSpec {
                k: p.k,
                r: p.r,
                truncation,
                mode,
            };
            let s = potentials::framed_sheaf_fundamental_solution(&spec)?;
            let mut j = json!(s.to_json());
            let text = match header {
                Some(h) => {
                    j["point"] = json!(h);
                    format!("at {h}\n{s}\n")
                }
                None => format!("{s}\n"),
            };
            Ok(Rendered::ok(text, j))
        }
        Payload::Delta(p) => {
            let d = potentials::delta_factor_symbolic(p.m);
            Ok(Rendered::ok(format!("{d}\n"), json!({"m": p.m, "value": d.to_string()})))
        }
        Payload::Qde(p) => {
            let trunc = p.trunc.unwrap_or(DEFAULT_TRUNCATION);
            let r = if p.ktheory {
                potentials::qde_residual_ktheoretic(p.k, trunc)?
            } else {
                potentials::qde_residual_cohomological(p.k, trunc)?
            };
            let zero = r.is_zero();
            Ok(Rendered {
                text: format!("residual = {r}\n"),
                json: json!({"zero": zero, "residual": r.to_json()}),
                exit: if zero { 0 } else { 1 },
            })
        }
        Payload::Projective(p) => {
            let r = if p.ktheory {
                potentials::qk_presentation(p.k)?
            } else {
                potentials::qh_presentation(p.k)?
            };
            Ok(Rendered::ok(r.to_string(), json!(r.to_json())))
        }
        Payload::Toric(p) => {
            let weights = p.weights.nested();
            let rank = p.rank.or_else(|| weights.first().map(Vec::len)).unwrap_or(1);
            let spec = LinearActionSpec::new(rank, weights, 0)?;
            let r = potentials::batyrev_presentation(&spec, &p.generators)?;
            Ok(Rendered::ok(r.to_string(), json!(r.to_json())))
        }
        Payload::Age(p) => {
            let a = potentials::age(p.order, &p.exponents)?;
            Ok(Rendered::ok(
                format!("age = {}\n", format_rational(&a)),
                json!({"age": RationalText(a)}),
            ))
        }
        Payload::Crepancy(p) => {
            let c = potentials::crepancy_check(&p.weights);
            Ok(Rendered::ok(format!("{c}\n"), json!(c)))
        }
    }
}

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Runs one job.
pub fn run(job: &JobSpec) -> JobOutcome {
    let payload = match validate(job) {
        Ok(p) => p,
        Err(e) => {
            return JobOutcome {
                exit: 2,
                output: match job.output {
                    OutputFormat::Text => format!("malformed job: {e}\n"),
                    OutputFormat::Json => to_pretty(&json!({"error": {"kind": "schema", "message": e.0}})),
                },
            }
        }
    };
    match dispatch(payload) {
        Ok(r) => JobOutcome {
            exit: r.exit,
            output: match job.output {
                OutputFormat::Text => r.text,
                OutputFormat::Json => to_pretty(&r.json),
            },
        },
        Err(e) => JobOutcome {
            exit: 1,
            output: match job.output {
                OutputFormat::Text => format!("error: {}\n", e.message),
                OutputFormat::Json => to_pretty(&json!({ "error": e })),
            },
        },
    }
}

/// Parses a document as JSON, falling back to TOML.
pub fn parse_document(text: &str) -> Result<Value, SchemaError> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => Ok(v),
        Err(json_err) => match toml::from_str::<toml::Value>(text) {
            Ok(t) => serde_json::to_value(t).map_err(|e| SchemaError(e.to_string())),
            Err(toml_err) => Err(SchemaError(format!(
                "neither JSON ({json_err}) nor TOML ({})",
                toml_err.message()
            ))),
        },
    }
}

pub fn parse_job(text: &str) -> Result<JobSpec, SchemaError> {
    let v = parse_document(text)?;
    JobSpec::deserialize(&v).map_err(|e| SchemaError(e.to_string()))
}

/// A batch document is a JSON array of jobs, or a table with a `jobs` array
/// (the natural TOML spelling `[[jobs]]`).
pub fn parse_batch(text: &str) -> Result<Vec<Value>, SchemaError> {
    match parse_document(text)? {
        Value::Array(a) => Ok(a),
        Value::Object(mut m) => match m.remove("jobs") {
            Some(Value::Array(a)) if m.is_empty() => Ok(a),
            _ => Err(SchemaError("expected a list of jobs or a table with only `jobs`".into())),
        },
        _ => Err(SchemaError("expected a list of jobs".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchEntry {
    pub index: usize,
    pub command: Command,
    pub exit: i32,
    pub pass: bool,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchReport {
    pub exit: i32,
    pub entries: Vec<BatchEntry>,
    /// 1-based index and message of the first malformed job.
    pub malformed: Option<(usize, String)>,
}

impl BatchReport {
    pub fn render(&self, format: OutputFormat) -> String {
        if let Some((i, msg)) = &self.malformed {
            return match format {
                OutputFormat::Text => format!("malformed job {i}: {msg}\n"),
                OutputFormat::Json => {
                    to_pretty(&json!({"error": {"kind": "schema", "index": i, "message": msg}}))
                }
            };
        }
        match format {
            OutputFormat::Text => {
                let mut s = String::new();
                for e in &self.entries {
                    let verdict = if e.pass { "pass" } else { "fail" };
                    s.push_str(&format!("job {} {}: {verdict} (exit {})\n", e.index, e.command, e.exit));
                    for l in e.output.lines() {
                        s.push_str("  ");
                        s.push_str(l);
                        s.push('\n');
                    }
                }
                let passed = self.entries.iter().filter(|e| e.pass).count();
                s.push_str(&format!("{passed}/{} jobs passed\n", self.entries.len()));
                s
            }
            OutputFormat::Json => to_pretty(&json!({
                "passed": self.entries.iter().filter(|e| e.pass).count(),
                "total": self.entries.len(),
                "jobs": self.entries,
            })),
        }
    }
}

/// Validates every job first; a malformed job aborts the batch with exit 2.
/// Jobs then run in parallel on the current rayon pool and are reported in
/// input order. A job passes when it exits 0 and, if it carries `expect`,
/// its output matches exactly.
pub fn batch(jobs: &[Value]) -> BatchReport {
    let mut specs = Vec::with_capacity(jobs.len());
    for (i, v) in jobs.iter().enumerate() {
        let parsed = JobSpec::deserialize(v)
            .map_err(|e| SchemaError(e.to_string()))
            .and_then(|j| check_schema(&j).map(|_| j));
        match parsed {
            Ok(j) => specs.push(j),
            Err(e) => {
                return BatchReport {
                    exit: 2,
                    entries: vec![],
                    malformed: Some((i + 1, e.0)),
                }
            }
        }
    }
    let entries: Vec<BatchEntry> = specs
        .par_iter()
        .enumerate()
        .map(|(i, j)| {
            let o = run(j);
            let pass = o.exit == 0 && j.expect.as_ref().map_or(true, |x| *x == o.output);
            BatchEntry {
                index: i + 1,
                command: j.command,
                exit: o.exit,
                pass,
                output: o.output,
            }
        })
        .collect();
    let exit = if entries.iter().all(|e| e.pass) { 0 } else { 1 };
    BatchReport {
        exit,
        entries,
        malformed: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCase {
    pub job: PathBuf,
    pub expected: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenStatus {
    Match,
    Mismatch,
    Missing,
    Written,
    Malformed(String),
}

/// Job files (`*.json`, `*.toml`) in a directory, sorted by name, each paired
/// with its expected output `<stem>.out`.
pub fn golden_cases(dir: &Path) -> std::io::Result<Vec<GoldenCase>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if matches!(path.extension().and_then(|e| e.to_str()), Some("json" | "toml")) {
            out.push(GoldenCase {
                expected: path.with_extension("out"),
                job: path,
            });
        }
    }
    out.sort_by(|a, b| a.job.cmp(&b.job));
    Ok(out)
}

/// Renders a golden case: exit code on the first line, then the output.
pub fn golden_render(job: &JobSpec) -> String {
    let o = run(job);
    format!("exit {}\n{}", o.exit, o.output)
}

/// Checks (or with `update`, rewrites) every golden case in `dir`.
pub fn golden(dir: &Path, update: bool) -> std::io::Result<Vec<(GoldenCase, GoldenStatus)>> {
    let cases = golden_cases(dir)?;
    let results: Vec<std::io::Result<(GoldenCase, GoldenStatus)>> = cases
        .into_par_iter()
        .map(|c| {
            let text = std::fs::read_to_string(&c.job)?;
            let job = match parse_job(&text) {
                Ok(j) => j,
                Err(e) => return Ok((c, GoldenStatus::Malformed(e.0))),
            };
            let rendered = golden_render(&job);
            if update {
                std::fs::write(&c.expected, rendered)?;
                return Ok((c, GoldenStatus::Written));
            }
            let status = match std::fs::read_to_string(&c.expected) {
                Ok(s) if s == rendered => GoldenStatus::Match,
                Ok(_) => GoldenStatus::Mismatch,
                Err(_) => GoldenStatus::Missing,
            };
            Ok((c, status))
        })
        .collect();
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(c: Command, payload: Value) -> JobSpec {
        JobSpec::new(c, payload)
    }

    #[test]
    fn projective_presentation_text() {
        let o = run(&job(Command::PresentationProjective, json!({"k": 3})));
        assert_eq!(o.exit, 0);
        assert!(o.output.starts_with("beta^3 = q\n"));
    }

    #[test]
    fn enumerate_lines() {
        let o = run(&job(Command::CurvesEnumerate, json!({"n": 2, "mode": "projective"})));
        assert_eq!(o.exit, 0);
        assert_eq!(o.output.lines().count(), 6);
        assert_eq!(o.output.lines().next(), Some("(τκ)(z1 z2) dim=3"));
    }

    #[test]
    fn qde_check_reports_zero() {
        let o = run(&job(Command::QdeCheck, json!({"k": 2, "trunc": 4})));
        assert_eq!(o, JobOutcome { exit: 0, output: "residual = 0\n".into() });
    }

    #[test]
    fn exit_codes() {
        let o = run(&job(Command::AgeCompute, json!({"order": 2, "exponents": [2]})));
        assert_eq!(o.exit, 1);
        let o = run(&job(Command::AgeCompute, json!({"order": 2, "exponent": [1]})));
        assert_eq!(o.exit, 2);
        let o = run(&job(Command::PresentationProjective, json!({"k": 1})));
        assert_eq!(o.exit, 1);
    }

    #[test]
    fn batch_reports_malformed_index() {
        let jobs = vec![
            json!({"command": "wallcross.crepancy", "payload": {"weights": [0, 1, 1, -1, -1]}}),
            json!({"command": "age.compute", "payload": {"order": "x"}}),
        ];
        let r = batch(&jobs);
        assert_eq!(r.exit, 2);
        assert_eq!(r.malformed.as_ref().map(|m| m.0), Some(2));
        assert_eq!(batch(&[]).exit, 0);
    }

    #[test]
    fn batch_expectations() {
        let jobs = vec![json!({
            "command": "wallcross.crepancy",
            "payload": {"weights": [1, 1]},
            "expect": "crepant\n"
        })];
        let r = batch(&jobs);
        assert_eq!(r.exit, 1);
        assert_eq!(r.entries[0].output, "non_crepant(2)\n");
    }

    #[test]
    fn toml_documents() {
        let j = parse_job("command = \"mundet.quotdim\"\n[payload]\nk = 2\ndp = 1\ndu = 0\n").unwrap();
        assert_eq!(run(&j).output, "dimension = 3\n");
        let b = parse_batch("[[jobs]]\ncommand = \"potential.delta\"\npayload = { m = -1 }\n").unwrap();
        assert_eq!(b.len(), 1);
    }
}
