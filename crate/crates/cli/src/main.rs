//! Command-line verification harness: `verify` runs the invariant suites
//! and formula cross-checks, `export` writes graphs and colouring tables,
//! `tables` emits the master summary CSV. Exit codes: 0 all checks pass,
//! 1 some check failed, 2 usage or resource error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use kempe_core::{MAX_RING, MIN_RING};

mod export;
mod report;
mod tables;
mod targets;

use export::{Format, What};
use targets::{run_verify, Target, ALL_TARGETS};

/// Environment variable naming the default output directory.
const OUT_DIR_VAR: &str = "KEMPE_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "kempe",
    version,
    about = "Exact verification of Kempe equivalence on polar plane triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Export the host graph, colourings, or reconfiguration graph.
    Export(ExportArgs),
    /// Write the master summary table as CSV.
    Tables(TablesArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Ring lengths, inclusive: a single value "7" or a range "5..8".
    #[arg(long, default_value = "5..8", value_parser = parse_range)]
    n: (usize, usize),
    /// Comma-separated target list; all targets when omitted.
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<Target>>,
    /// Output directory (default: $KEMPE_OUT_DIR, then the working directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Node cap for reconfiguration graph construction.
    #[arg(long, default_value_t = 5_000_000)]
    budget_nodes: usize,
}

#[derive(Args)]
struct ExportArgs {
    /// Ring length.
    #[arg(long, value_parser = parse_ring)]
    n: usize,
    /// What to export.
    #[arg(long)]
    what: What,
    /// Output format.
    #[arg(long)]
    format: Format,
    /// Output directory (default: $KEMPE_OUT_DIR, then the working directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Node cap for reconfiguration graph construction.
    #[arg(long, default_value_t = 5_000_000)]
    budget_nodes: usize,
}

#[derive(Args)]
struct TablesArgs {
    /// Largest ring length; rows run from 5 to this value.
    #[arg(long, default_value_t = 8, value_parser = parse_ring)]
    n_max: usize,
    /// Output directory (default: $KEMPE_OUT_DIR, then the working directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Node cap for reconfiguration graph construction.
    #[arg(long, default_value_t = 5_000_000)]
    budget_nodes: usize,
}

fn parse_ring(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("not a ring length: {s}"))?;
    if !(MIN_RING..=MAX_RING).contains(&n) {
        return Err(format!(
            "ring length must be in {MIN_RING}..={MAX_RING}, got {n}"
        ));
    }
    Ok(n)
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse_ring(lo)?, parse_ring(hi)?),
        None => {
            let n = parse_ring(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range: {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn resolve_out_dir(flag: Option<PathBuf>) -> Result<PathBuf> {
    let dir = flag
        .or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let (lo, hi) = args.n;
    let explicit = args.targets.is_some();
    let selected = args.targets.unwrap_or_else(|| ALL_TARGETS.to_vec());
    let report = run_verify(lo, hi, &selected, explicit, args.budget_nodes);
    let out_dir = resolve_out_dir(args.out)?;
    let path = out_dir.join("verify-report.json");
    fs::write(&path, report::json_text(&report.to_json()))
        .with_context(|| format!("writing {}", path.display()))?;
    print!("{}", report.render_text());
    println!("report: {}", path.display());
    if let Some(err) = &report.error {
        eprintln!("error: {err}");
        return Ok(ExitCode::from(2));
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_export(args: ExportArgs) -> Result<ExitCode> {
    let out_dir = resolve_out_dir(args.out)?;
    let path = export::run_export(args.n, args.what, args.format, &out_dir, args.budget_nodes)?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_tables(args: TablesArgs) -> Result<ExitCode> {
    let out_dir = resolve_out_dir(args.out)?;
    let path = tables::run_tables(args.n_max, &out_dir, args.budget_nodes)?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Export(args) => cmd_export(args),
        Command::Tables(args) => cmd_tables(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
