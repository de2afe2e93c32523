use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};

use sdframe_cli::{
    parse_spec, render_report, run_file, to_toml, ClaimName, CliError, RunOptions, RunResult,
    EXIT_SPEC,
};

#[derive(Parser)]
#[command(
    name = "sdframe",
    version,
    about = "Exact range geometry for sampling, affine and Gabor frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run scenario specs and report verdicts.
    Run {
        #[arg(required = true)]
        specs: Vec<PathBuf>,
        /// Print the JSON report instead of the human summary.
        #[arg(long)]
        json: bool,
        /// Exit 0 iff the claim is certified for every spec, 1 otherwise.
        #[arg(long, value_name = "CLAIM")]
        assert: Option<String>,
        /// Leave the timestamp out of reports.
        #[arg(long)]
        reproducible: bool,
        /// Directory for reports and CSV dumps (overrides `output.dir`).
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
        /// Number of spec files processed concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Validate a spec and print its canonical form.
    Fmt { spec: PathBuf },
}

fn print_result(path: &std::path::Path, result: &Result<RunResult, CliError>, json: bool) {
    match result {
        Ok(r) if json => print!("{}", render_report(&r.report)),
        Ok(r) => {
            for line in &r.summary {
                println!("{}: {line}", path.display());
            }
            for w in &r.written {
                println!("{}: wrote {}", path.display(), w.display());
            }
        }
        Err(e) => eprintln!("{}: {e}", path.display()),
    }
}

/// Worst status wins: spec errors, then numeric failures, then refuted
/// assertions.
fn combine(codes: impl IntoIterator<Item = i32>) -> i32 {
    codes
        .into_iter()
        .max_by_key(|&c| match c {
            2 => 3,
            3 => 2,
            c => c,
        })
        .unwrap_or(0)
}

fn run(
    specs: Vec<PathBuf>,
    json: bool,
    assert: Option<String>,
    opts: RunOptions,
    jobs: usize,
) -> i32 {
    let mut opts = opts;
    if let Some(a) = assert {
        match a.parse::<ClaimName>() {
            Ok(c) => opts.assert = Some(c),
            Err(e) => {
                eprintln!("--assert: {e}");
                return EXIT_SPEC;
            }
        }
    }
    let results: Vec<Mutex<Option<Result<RunResult, CliError>>>> =
        specs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, specs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= specs.len() {
                    break;
                }
                let r = run_file(&specs[i], &opts);
                *results[i].lock().expect("no panics while holding the lock") = Some(r);
            });
        }
    });
    let mut codes = Vec::new();
    for (path, slot) in specs.iter().zip(results) {
        let r = slot
            .into_inner()
            .expect("no poisoned locks")
            .expect("every spec ran");
        print_result(path, &r, json);
        codes.push(match &r {
            Ok(r) => r.exit_code,
            Err(e) => e.exit_code(),
        });
    }
    combine(codes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            specs,
            json,
            assert,
            reproducible,
            out_dir,
            jobs,
        } => run(
            specs,
            json,
            assert,
            RunOptions {
                assert: None,
                reproducible,
                out_dir,
            },
            jobs,
        ),
        Command::Fmt { spec } => {
            let text = match std::fs::read_to_string(&spec) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", spec.display());
                    return ExitCode::from(EXIT_SPEC as u8);
                }
            };
            match parse_spec(&text) {
                Ok(s) => {
                    print!("{}", to_toml(&s));
                    0
                }
                Err(e) => {
                    eprintln!("{}: {e}", spec.display());
                    e.exit_code()
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
