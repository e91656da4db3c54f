use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use toric_cke::fixtures::{fixture_description, fixture_job, FIXTURE_NAMES};
use toric_cke::report::{analyze, run_cke, scan, BundleRef, JobSpec, ReportDocument, ScanRow};

#[derive(Parser)]
#[command(name = "toric-cke", version, about = "Kähler-Einstein and coupled Kähler-Einstein checks for toric Fano manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polytope, barycenter and reductivity.
    Analyze(JobArgs),
    /// Full pipeline including the coupled equation.
    Cke(JobArgs),
    /// Every bundle(m, r) up to a total dimension.
    Scan {
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        /// Write the rows as JSON instead of printing a table.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in jobs.
    Fixtures,
}

#[derive(Args)]
struct JobArgs {
    /// JSON job document.
    #[arg(long, conflicts_with_all = ["fixture", "m", "r"])]
    job: Option<PathBuf>,
    /// Built-in job name (see `fixtures`).
    #[arg(long, conflicts_with_all = ["m", "r"])]
    fixture: Option<String>,
    /// Bundle over CP^m x CP^r.
    #[arg(long, requires = "r")]
    m: Option<usize>,
    #[arg(long, requires = "m")]
    r: Option<usize>,
    /// Parameter window such as "(1/4,3/4)".
    #[arg(long)]
    window: Option<String>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] toric_cke::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_geometric() => 2,
            _ => 1,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_job(args: &JobArgs) -> Result<JobSpec, CliError> {
    let mut job = if let Some(path) = &args.job {
        JobSpec::from_json(&read(path)?)?
    } else if let Some(name) = &args.fixture {
        fixture_job(name).ok_or_else(|| {
            CliError::Usage(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))
        })?
    } else if let (Some(m), Some(r)) = (args.m, args.r) {
        JobSpec {
            bundle: Some(BundleRef { m, r }),
            ..JobSpec::default()
        }
    } else {
        return Err(CliError::Usage("give one of --job, --fixture or --m/--r".into()));
    };
    if let Some(w) = &args.window {
        job.window = w.clone();
    }
    Ok(job)
}

fn emit(doc: &ReportDocument, out: Option<&Path>) -> Result<(), CliError> {
    let text = doc.to_json();
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table(rows: &[ScanRow]) -> String {
    let mut s = format!(
        "{:>2} {:>2} {:>3}  {:<5} {:<10} {:<24} {:<6} orbits\n",
        "m", "r", "dim", "KE", "semisimple", "classification", "mirror"
    );
    let flag = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    for row in rows {
        let orbits: Vec<String> = row
            .orbits
            .iter()
            .map(|(o, n)| {
                let ids: Vec<String> = o.iter().map(ToString::to_string).collect();
                format!("{{{}}}:{n}", ids.join(","))
            })
            .collect();
        s.push_str(&format!(
            "{:>2} {:>2} {:>3}  {:<5} {:<10} {:<24} {:<6} {}\n",
            row.m,
            row.r,
            row.dim,
            flag(row.ke),
            flag(row.semisimple),
            row.classification,
            flag(row.mirror_agrees),
            row.error.clone().unwrap_or_else(|| orbits.join(" ")),
        ));
    }
    s
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let doc = analyze(&load_job(&args)?)?;
            emit(&doc, args.out.as_deref())?;
            Ok(0)
        }
        Command::Cke(args) => {
            let doc = run_cke(&load_job(&args)?)?;
            emit(&doc, args.out.as_deref())?;
            Ok(if doc.classification.is_decisive() { 0 } else { 2 })
        }
        Command::Scan { max_dim, out } => {
            let rows = scan(max_dim);
            match out {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&rows).expect("rows serialize");
                    write(&path, &(text + "\n"))?;
                }
                None => print!("{}", table(&rows)),
            }
            let failed = rows.iter().any(|r| r.error.is_some() || r.classification == "inconclusive");
            Ok(if failed { 2 } else { 0 })
        }
        Command::Fixtures => {
            for name in FIXTURE_NAMES {
                println!("{name:<10} {}", fixture_description(name).unwrap_or(""));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if let CliError::Core(toric_cke::Error::InvalidFan(list)) = &e {
                eprintln!("error: invalid fan");
                for v in list {
                    eprintln!("  {v}");
                }
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
