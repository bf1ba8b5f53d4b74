use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cyroots::cache::Cache;
use cyroots::commands::{self, CompleteJob, FoldJob, GenKind, RootPairJob};
use cyroots::format::parse_field;
use cyroots::report::Report;
use cyroots::{CliError, EXIT_INPUT, EXIT_PASS};
use cyroots_core::cluster::DynkinType;

#[derive(Parser, Debug)]
#[command(name = "cyroots", version, about = "Exact checks for roots of inverse dualizing bimodules")]
struct Cli {
    /// `rational` or a prime p
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// random trials for quasi-isomorphism searches
    #[arg(long, global = true, default_value_t = 16)]
    trials: usize,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// skip the result cache
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a built-in algebra and bimodule complex as JSON
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
        /// directory for algebra.json and bimodule.json (stdout if absent)
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Verify root-pair axioms, cyclic invariance and the Casimir identity
    CheckRootPair {
        #[command(flatten)]
        io: PairArgs,
        #[arg(long)]
        a: usize,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<usize>,
    },
    /// Bidegree dimensions of the truncated completion e·T(U)·e
    Complete {
        #[command(flatten)]
        io: PairArgs,
        #[arg(long)]
        adams_max: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<usize>,
        /// CSV destination (stdout if absent)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Fundamental domain of a folded cluster category of Dynkin type
    Fold {
        #[command(flatten)]
        dynkin: DynkinArgs,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        d: i64,
        /// ℤQ vertex `m,v` to mark; repeatable
        #[arg(long)]
        mark: Vec<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Search for combinatorial a-th roots of τ⁻¹ on ℤQ
    Classify {
        #[command(flatten)]
        dynkin: DynkinArgs,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    bimodule: PathBuf,
}

#[derive(Args, Debug)]
struct DynkinArgs {
    #[arg(long = "type")]
    kind: String,
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    a: usize,
    #[arg(long, default_value_t = 12)]
    window: i64,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    Kronecker {
        #[arg(long, default_value_t = 0)]
        s: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
    },
    #[command(name = "typeA")]
    TypeA {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        eps: i64,
    },
    Beilinson {
        #[arg(long)]
        d: usize,
    },
    /// the A4-mod-longest-path algebra with its square root of C^∨[2]
    A4,
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn emit_report(r: &Report, to: Option<&Path>) -> Result<(), CliError> {
    match to {
        Some(p) => write_file(p, &r.to_pretty()),
        None => {
            print!("{}", r.to_pretty());
            Ok(())
        }
    }
}

fn parse_mark(s: &str) -> Result<(i64, usize), CliError> {
    let bad = || CliError::parse("--mark", format!("expected m,v, got {:?}", s));
    let (m, v) = s.split_once(',').ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, v.trim().parse().map_err(|_| bad())?))
}

fn eps_ok(eps: i64) -> Result<(), CliError> {
    if eps == 1 || eps == -1 {
        Ok(())
    } else {
        Err(CliError::Invalid("--eps must be +1 or -1".into()))
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let start = Instant::now();
    let field = parse_field(&cli.field)?;
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::from_env() };
    let report_path = cli.report.as_deref();
    let mut report = match cli.command {
        Command::Gen { kind, out } => {
            let kind = match kind {
                GenCmd::Kronecker { s, eps } => {
                    eps_ok(eps)?;
                    GenKind::Kronecker { s, eps }
                }
                GenCmd::TypeA { n, d, eps } => {
                    eps_ok(eps)?;
                    GenKind::TypeA { n, d, eps }
                }
                GenCmd::Beilinson { d } => GenKind::Beilinson { d },
                GenCmd::A4 => GenKind::A4,
            };
            let (q, b) = commands::generate(&kind, field)?;
            let qs = serde_json::to_string_pretty(&q).unwrap() + "\n";
            let bs = serde_json::to_string_pretty(&b).unwrap() + "\n";
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
                    write_file(&dir.join("algebra.json"), &qs)?;
                    write_file(&dir.join("bimodule.json"), &bs)?;
                }
                None => {
                    let both = serde_json::json!({ "algebra": q, "bimodule": b });
                    println!("{}", serde_json::to_string_pretty(&both).unwrap());
                }
            }
            return Ok(EXIT_PASS);
        }
        Command::CheckRootPair { io, a, d, e } => {
            let job = RootPairJob { algebra: &io.algebra, bimodule: &io.bimodule, a, d, e, field, trials: cli.trials, seed: cli.seed };
            commands::check_root_pair(&job, &cache)?
        }
        Command::Complete { io, adams_max, e, csv } => {
            let job = CompleteJob { algebra: &io.algebra, bimodule: &io.bimodule, adams_max, e, field, csv: csv.clone() };
            let (r, text) = commands::complete(&job, &cache)?;
            match &csv {
                Some(p) => write_file(p, &text)?,
                None => print!("{}", text),
            }
            if csv.is_none() && report_path.is_none() {
                // the CSV already went to stdout
                return Ok(r.exit_code());
            }
            r
        }
        Command::Fold { dynkin, d, mark, dot } => {
            let kind = DynkinType::parse(&dynkin.kind).map_err(|e| CliError::parse("--type", e.to_string()))?;
            let mark = mark.iter().map(|s| parse_mark(s)).collect::<Result<Vec<_>, _>>()?;
            let job = FoldJob { kind, rank: dynkin.rank, a: dynkin.a, d, window: dynkin.window, mark, dot: dot.clone() };
            let (r, text) = commands::fold(&job)?;
            if let (Some(p), Some(t)) = (&dot, &text) {
                write_file(p, t)?;
            }
            r
        }
        Command::Classify { dynkin } => {
            let kind = DynkinType::parse(&dynkin.kind).map_err(|e| CliError::parse("--type", e.to_string()))?;
            commands::classify(kind, dynkin.rank, dynkin.a, dynkin.window)?
        }
    };
    report.finish(start.elapsed().as_millis());
    emit_report(&report, report_path)?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
