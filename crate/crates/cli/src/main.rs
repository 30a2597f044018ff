use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcox::{emit_report, run_suite, Check, Format, SuiteConfig, TypeSelection};
use qcox_core::{Family, Permutation};

#[derive(Parser)]
#[command(
    name = "qcox",
    version,
    about = "Exact verification of Coxeter realizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep of checks and print a report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated checks (default: all).
    #[arg(long, value_delimiter = ',')]
    check: Vec<String>,
    /// Single family letter, A to G.
    #[arg(long, requires = "rank", conflicts_with_all = ["all_finite", "max_rank"])]
    family: Option<char>,
    #[arg(long, requires = "family")]
    rank: Option<usize>,
    /// Sweep every finite type up to --max-rank (the default).
    #[arg(long)]
    all_finite: bool,
    #[arg(long, default_value_t = 4)]
    max_rank: usize,
    /// One-based one-line permutation, e.g. 2,1,3.
    #[arg(long, conflicts_with = "all_perms")]
    perm: Option<String>,
    /// Sweep all permutations (the default).
    #[arg(long)]
    all_perms: bool,
    /// Truncation order of formal series.
    #[arg(long, default_value_t = 16)]
    order: usize,
    /// Highest mode solved for in the affine twist.
    #[arg(long, default_value_t = 12)]
    rmax: usize,
    /// Central level; levels 0, 1, 2 when omitted.
    #[arg(long, allow_hyphen_values = true)]
    level: Option<i64>,
    /// Worker threads; falls back to QCOX_JOBS.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn config_from(args: VerifyArgs) -> Result<SuiteConfig, String> {
    let mut config = SuiteConfig::default();
    if !args.check.is_empty() {
        config.checks = args
            .check
            .iter()
            .map(|s| s.parse::<Check>())
            .collect::<Result<_, _>>()?;
    }
    config.types = match (args.family, args.rank) {
        (Some(f), Some(r)) => {
            let family = Family::from_char(f.to_ascii_uppercase())
                .ok_or_else(|| format!("unknown family '{f}'"))?;
            TypeSelection::Single(family, r)
        }
        _ => TypeSelection::AllFinite {
            max_rank: args.max_rank,
        },
    };
    if let Some(p) = args.perm {
        config.perm = Some(p.parse::<Permutation>().map_err(|e| e.to_string())?);
    }
    config.order = args.order;
    config.rmax = args.rmax;
    config.level = args.level;
    config.jobs = args.jobs;
    config.format = if args.json {
        Format::Json
    } else {
        Format::Text
    };
    Ok(config)
}

fn main() -> ExitCode {
    let Command::Verify(args) = Cli::parse().command;
    let config = match config_from(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qcox: {e}");
            return ExitCode::from(2);
        }
    };
    match run_suite(&config) {
        Ok(report) => {
            let (body, code) = emit_report(&report, config.format);
            // a closed pipe is not worth a panic
            let _ = std::io::stdout().write_all(body.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("qcox: {e}");
            ExitCode::from(2)
        }
    }
}
