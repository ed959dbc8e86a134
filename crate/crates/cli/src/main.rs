use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

mod commands;
mod config;
mod output;
mod verify;

use config::{CommandName, JobConfig};
use output::{write_sweep, write_text, RunReport, SCHEMA_VERSION};

/// Two values closer than this count as equal in verdicts.
pub const VERDICT_TOLERANCE: f64 = 1e-12;
/// Slack allowed when checking a floating-point inequality.
pub const INEQUALITY_TOLERANCE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "multicommon", version, about = "Multiplicities of linear configurations in finite abelian groups")]
struct Cli {
    #[arg(value_enum)]
    command: CommandName,
    /// JSON job description.
    #[arg(long)]
    config: PathBuf,
    /// Directory for report.json and the other outputs.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Seed for randomized suites (overrides `options.seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<multicommon::Error> for Failure {
    fn from(e: multicommon::Error) -> Self {
        use multicommon::Error::*;
        let code = match e {
            EnumerationCap { .. } => 3,
            NoConstruction(_) => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn command_name(c: CommandName) -> &'static str {
    match c {
        CommandName::Analyze => "analyze",
        CommandName::Counterexample => "counterexample",
        CommandName::Verify => "verify",
        CommandName::MinColoring => "min-coloring",
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let start = Instant::now();
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(Failure::new(2, "--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::new(2, e.to_string()))?;
    }
    let (config, raw) = JobConfig::load(&cli.config)?;
    if let Some(c) = config.command {
        if c != cli.command {
            return Err(Failure::new(
                2,
                format!("config is for `{}`, not `{}`", command_name(c), command_name(cli.command)),
            ));
        }
    }
    let seed = config.seed(cli.seed);
    let base = cli.config.parent().map(PathBuf::from).unwrap_or_default();
    let outcome = match cli.command {
        CommandName::Analyze => commands::analyze(&config, &base)?,
        CommandName::Counterexample => commands::counterexample(&config)?,
        CommandName::Verify => verify::verify(&config, seed)?,
        CommandName::MinColoring => commands::min_coloring_command(&config)?,
    };

    std::fs::create_dir_all(&cli.out)
        .map_err(|e| Failure::new(2, format!("cannot create {}: {e}", cli.out.display())))?;
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        command: command_name(cli.command),
        inputs: &raw,
        environment: json!({
            "seed": seed,
            "enumeration_cap": config.group().map(|g| g.enumeration_cap()).ok()
                .or(config.options.enumeration_cap),
            "subset_cap": config.options.subset_cap,
            "tolerances": {"verdict": VERDICT_TOLERANCE, "inequality": INEQUALITY_TOLERANCE},
            "version": env!("CARGO_PKG_VERSION"),
        }),
        results: &outcome.results,
        verdict: &outcome.verdict,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_text(&cli.out, "report.json", &text)?;
    if !outcome.sweep.is_empty() {
        write_sweep(&cli.out, &outcome.sweep)?;
    }
    for a in &outcome.artifacts {
        write_text(&cli.out, a.name, &a.contents)?;
    }
    let timing = json!({
        "elapsed_seconds": start.elapsed().as_secs_f64(),
        "threads": rayon::current_num_threads(),
    });
    write_text(&cli.out, "timing.json", &format!("{timing:#}\n"))?;

    for line in &outcome.lines {
        println!("{line}");
    }
    println!("verdict: {}", outcome.verdict);
    println!("report: {}", cli.out.join("report.json").display());
    Ok(if outcome.violations > 0 { 5 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
