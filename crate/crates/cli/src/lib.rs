//! Batch front end for `sdframe-core`: scenario specs in, verdict reports
//! and CSV dumps out.

#![allow(clippy::result_large_err)]

pub mod eval;
pub mod spec;

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

pub use eval::{evaluate, Evaluation};
pub use spec::{parse_spec, to_toml, ClaimName, ScenarioSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status when an asserted claim is not certified.
pub const EXIT_NOT_CERTIFIED: i32 = 1;
/// Exit status for a malformed or invalid spec.
pub const EXIT_SPEC: i32 = 2;
/// Exit status for a numeric failure (rank ambiguity, tolerance breach).
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Spec(String),
    Numeric(String),
}

impl CliError {
    /// A core error attributed to a spec field.
    pub fn spec(field: &str, e: sdframe_core::Error) -> Self {
        match e {
            sdframe_core::Error::RankAmbiguous { .. } => CliError::Numeric(format!("{field}: {e}")),
            other => CliError::Spec(format!("{field}: {other}")),
        }
    }

    pub fn from_core(e: sdframe_core::Error) -> Self {
        match e {
            sdframe_core::Error::RankAmbiguous { .. } => CliError::Numeric(e.to_string()),
            other => CliError::Spec(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) => EXIT_SPEC,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Spec(m) => write!(f, "invalid spec: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub assert: Option<ClaimName>,
    /// Omit the timestamp so identical specs give byte-identical reports.
    pub reproducible: bool,
    /// Overrides the spec's `output.dir`.
    pub out_dir: Option<PathBuf>,
}

/// Result of running one spec.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub report: Value,
    pub summary: Vec<String>,
    pub exit_code: i32,
    pub written: Vec<PathBuf>,
}

/// Builds the versioned JSON report. The spec is embedded verbatim (in its
/// canonical form) for provenance.
pub fn build_report(spec: &ScenarioSpec, ev: &Evaluation, opts: &RunOptions) -> Value {
    let mut report = json!({
        "schema": SCHEMA_VERSION,
        "tool": { "name": "sdframe", "version": env!("CARGO_PKG_VERSION") },
        "command": spec.command(),
        "spec": serde_json::to_value(spec).expect("specs always serialize"),
        "verdict": ev.verdict,
    });
    if let Some(claim) = opts.assert {
        report["assert"] = json!({ "claim": claim.name(), "certified": ev.certified(claim) });
    }
    if !opts.reproducible {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report["generated_at"] = json!(secs);
    }
    report
}

pub fn render_report(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("json values always serialize");
    s.push('\n');
    s
}

/// Evaluates a parsed spec and decides the exit status. Nothing is written.
pub fn run_spec(
    spec: &ScenarioSpec,
    opts: &RunOptions,
) -> Result<(Value, Evaluation, i32), CliError> {
    let ev = evaluate(spec, opts.assert)?;
    let code = match opts.assert {
        None => 0,
        Some(claim) => match ev.certified(claim) {
            Some(true) => 0,
            Some(false) => EXIT_NOT_CERTIFIED,
            None => {
                return Err(CliError::Spec(format!(
                    "claim `{claim}` cannot be asserted for {}",
                    spec.command()
                )));
            }
        },
    };
    Ok((build_report(spec, &ev, opts), ev, code))
}

fn output_dir(path: &Path, spec: &ScenarioSpec, opts: &RunOptions) -> Option<PathBuf> {
    if let Some(d) = &opts.out_dir {
        return Some(d.clone());
    }
    let dir = spec.output()?.dir.as_ref()?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Some(base.join(dir))
}

/// Reads, runs and (when an output directory is configured) writes the
/// report `<stem>.json` plus CSV dumps `<stem>.<name>.csv`.
pub fn run_file(path: &Path, opts: &RunOptions) -> Result<RunResult, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Spec(format!("cannot read {}: {e}", path.display())))?;
    let spec = parse_spec(&text)?;
    let (report, ev, exit_code) = run_spec(&spec, opts)?;
    let mut written = Vec::new();
    if let Some(dir) = output_dir(path, &spec, opts) {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("scenario");
        let io = |e: std::io::Error, p: &Path| {
            CliError::Spec(format!("cannot write {}: {e}", p.display()))
        };
        std::fs::create_dir_all(&dir).map_err(|e| io(e, &dir))?;
        let mut files = vec![(dir.join(format!("{stem}.json")), render_report(&report))];
        for (suffix, contents) in &ev.artifacts {
            files.push((dir.join(format!("{stem}.{suffix}")), contents.clone()));
        }
        for (p, contents) in files {
            std::fs::write(&p, contents).map_err(|e| io(e, &p))?;
            written.push(p);
        }
    }
    Ok(RunResult {
        report,
        summary: ev.summary,
        exit_code,
        written,
    })
}
