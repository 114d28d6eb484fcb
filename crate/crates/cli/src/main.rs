use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sp_baw_cli::commands::{cmd_blocks, cmd_sweep, cmd_verify, emit, SweepConfig};
use sp_baw_cli::report::Status;
use sp_baw_cli::{Checks, Format, RunConfig, DEFAULT_WORK_LIMIT};

#[derive(Parser)]
#[command(
    name = "sp-baw",
    version,
    about = "Blocks, Brauer characters and weights of Sp_2n(q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the block table.
    Blocks(RunArgs),
    /// Verify counts, the bijection, equivariance and global invariants.
    Verify(RunArgs),
    /// Verify a grid of configurations against cached results.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Checks to run: comma-separated counts, bijection, equivariance, invariants, or all.
    #[arg(long, default_value = "all", value_parser = Checks::parse)]
    checks: Checks,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Refuse configurations whose estimated enumeration exceeds this.
    #[arg(long, default_value_t = DEFAULT_WORK_LIMIT)]
    work_limit: u64,
}

#[derive(Args)]
struct RunArgs {
    /// Odd prime p; the field is F_q with q = p^f.
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Odd prime ell different from p.
    #[arg(long)]
    ell: u64,
    /// Rank n of Sp_2n(q).
    #[arg(long)]
    n: u32,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    f: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    ell: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// Cache directory; defaults to $SP_BAW_CACHE_DIR, then ./.sp-baw-cache.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Replace cached results that differ instead of reporting them.
    #[arg(long)]
    update_cache: bool,
    /// Summary file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn run_config(a: RunArgs) -> RunConfig {
    RunConfig {
        p: a.p,
        f: a.f,
        ell: a.ell,
        n: a.n,
        checks: a.common.checks,
        out: a.out,
        format: a.format.into(),
        jobs: a.common.jobs,
        work_limit: a.common.work_limit,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Blocks(a) => run(run_config(a), false),
        Command::Verify(a) => run(run_config(a), true),
        Command::Sweep(a) => sweep(a),
    }
}

fn run(cfg: RunConfig, verify: bool) -> ExitCode {
    let result = if verify {
        cmd_verify(&cfg)
    } else {
        cmd_blocks(&cfg)
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("sp-baw: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = emit(&report, cfg.format, cfg.out.as_deref()) {
        eprintln!("sp-baw: writing report: {e}");
        return ExitCode::from(EXIT_FAILED);
    }
    match report.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Failed | Status::Incomplete => {
            if let Some(err) = &report.error {
                eprintln!("sp-baw: run stopped early: {err}");
            } else {
                eprintln!("sp-baw: some checks failed");
            }
            ExitCode::from(EXIT_FAILED)
        }
    }
}

fn sweep(a: SweepArgs) -> ExitCode {
    let cache_dir = a
        .cache_dir
        .or_else(|| std::env::var_os("SP_BAW_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(".sp-baw-cache"));
    let grid = SweepConfig {
        ps: a.p,
        fs: a.f,
        ells: a.ell,
        ns: a.n,
        checks: a.common.checks,
        jobs: a.common.jobs,
        work_limit: a.common.work_limit,
        cache_dir,
        update_cache: a.update_cache,
    };
    let report = match cmd_sweep(&grid) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("sp-baw: sweep cache: {e}");
            return ExitCode::from(EXIT_FAILED);
        }
    };
    let mut text = serde_json::to_string_pretty(&report).expect("sweep report serializes");
    text.push('\n');
    let written = match &a.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("sp-baw: writing summary: {e}");
        return ExitCode::from(EXIT_FAILED);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("sp-baw: sweep found failures or regressions");
        ExitCode::from(EXIT_FAILED)
    }
}
