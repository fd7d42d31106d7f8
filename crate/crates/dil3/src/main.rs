use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dil3::certfile;
use dil3::format::{parse_periodic, parse_render_state};
use dil3::pipeline::{self, Options};
use dil3::render::render_svg;
use dil3_core::cert::check_certificate;
use dil3_core::prover::{Heuristic, PatternId, DEFAULT_BUDGET, DEFAULT_SCAN_RADIUS};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "dil3", version, about = "Exact verification pipeline for degree-3 plane spanners of Z^2")]
struct Cli {
    /// Node budget per search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Close pairs are scanned within this Chebyshev distance of the edge set.
    #[arg(long, global = true, default_value_t = DEFAULT_SCAN_RADIUS)]
    scan_radius: i32,
    #[arg(long, global = true, value_enum, default_value_t = HeuristicArg::Local)]
    heuristic: HeuristicArg,
    /// Write every certificate found into this directory.
    #[arg(long, global = true)]
    emit_cert: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = ReportArg::Text)]
    report: ReportArg,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Print node telemetry to stderr.
    #[arg(long, global = true)]
    progress: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeuristicArg {
    Local,
    FailFirst,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check local optimality and tightness of a periodic spec.
    VerifyPeriodic { spec: PathBuf },
    /// Knight graph distance bound: finite scan plus polynomial certificate.
    Lemma24,
    /// Candidate shortest paths between (0,0) and (1,2).
    EnumerateShortest,
    #[command(subcommand)]
    Prove(ProveCommand),
    /// Try to refute every long edge class up to a squared length.
    CorroborateShortEdges {
        #[arg(long, default_value_t = 25)]
        max_norm_sq: i64,
    },
    /// Replay a certificate file.
    CheckCert { file: PathBuf },
    /// Draw a render state file as SVG.
    Render {
        state: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// The full pipeline.
    All,
}

#[derive(Subcommand)]
enum ProveCommand {
    /// Refute a forbidden pattern.
    Forbidden {
        #[arg(long)]
        pattern: String,
    },
    /// The four bounded searches for the knight pair.
    Boost,
}

fn emit<T: Serialize + std::fmt::Display>(report: ReportArg, value: &T) {
    match report {
        ReportArg::Text => println!("{value}"),
        ReportArg::Json => println!("{}", serde_json::to_string_pretty(value).expect("report serializes")),
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

#[derive(Serialize)]
struct Listed<T> {
    runs: Vec<T>,
}

impl<T: std::fmt::Display> std::fmt::Display for Listed<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct CheckOutput {
    file: String,
    nodes_checked: usize,
    failures: Vec<String>,
    valid: bool,
}

impl std::fmt::Display for CheckOutput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} nodes checked, ", self.file, self.nodes_checked)?;
        if self.valid {
            write!(f, "valid")
        } else {
            write!(f, "INVALID")?;
            for e in &self.failures {
                write!(f, "\n  {e}")?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        budget: cli.budget,
        scan_radius: cli.scan_radius,
        heuristic: match cli.heuristic {
            HeuristicArg::Local => Heuristic::Local,
            HeuristicArg::FailFirst => Heuristic::FailFirst,
            HeuristicArg::Lex => Heuristic::Lex,
        },
        threads: cli.threads.max(1),
        emit_cert: cli.emit_cert.clone(),
        progress: cli.progress,
    };
    let report = cli.report;

    match cli.command {
        Command::VerifyPeriodic { spec } => {
            let src = match std::fs::read_to_string(&spec) {
                Ok(s) => s,
                Err(e) => return usage(format!("{}: {e}", spec.display())),
            };
            let parsed = match parse_periodic(&src) {
                Ok(p) => p,
                Err(e) => return usage(format!("{}: {e}", spec.display())),
            };
            let name = spec.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let r = pipeline::verify_periodic(&name, &parsed);
            emit(report, &r);
            if r.spec_error.is_some() {
                return ExitCode::from(2);
            }
            status(r.passed())
        }
        Command::Lemma24 => {
            let r = pipeline::lemma24();
            emit(report, &r);
            status(r.passed)
        }
        Command::EnumerateShortest => {
            let r = pipeline::enumerate_shortest();
            emit(report, &r);
            status(r.passed)
        }
        Command::Prove(ProveCommand::Forbidden { pattern }) => {
            let pattern = match PatternId::parse(&pattern) {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            let (r, _) = pipeline::prove_forbidden(pattern, &opts);
            emit(report, &r);
            status(r.passed())
        }
        Command::Prove(ProveCommand::Boost) => match pipeline::prove_boost(&opts) {
            Ok(runs) => {
                let listed = Listed { runs: runs.into_iter().map(|(r, _)| r).collect() };
                emit(report, &listed);
                status(listed.runs.iter().all(|r| r.passed()))
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::CorroborateShortEdges { max_norm_sq } => {
            if max_norm_sq < 4 {
                return usage("--max-norm-sq must be at least 4");
            }
            let r = pipeline::corroborate_short_edges(max_norm_sq, &opts);
            let ok = r.passed();
            emit(report, &Listed { runs: r.classes });
            status(ok)
        }
        Command::CheckCert { file } => {
            let src = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => return usage(format!("{}: {e}", file.display())),
            };
            let out = match certfile::decode(&src) {
                Ok(cert) => {
                    let rep = check_certificate(&cert);
                    CheckOutput {
                        file: file.display().to_string(),
                        nodes_checked: rep.nodes_checked,
                        failures: rep.failures.iter().map(|f| format!("node {:?}: {}", f.at, f.failure)).collect(),
                        valid: rep.valid(),
                    }
                }
                Err(e) => CheckOutput {
                    file: file.display().to_string(),
                    nodes_checked: 0,
                    failures: vec![e.to_string()],
                    valid: false,
                },
            };
            emit(report, &out);
            status(out.valid)
        }
        Command::Render { state, output } => {
            let src = match std::fs::read_to_string(&state) {
                Ok(s) => s,
                Err(e) => return usage(format!("{}: {e}", state.display())),
            };
            let st = match parse_render_state(&src) {
                Ok(s) => s,
                Err(e) => return usage(format!("{}: {e}", state.display())),
            };
            match std::fs::write(&output, render_svg(&st.patch, &st.annotations)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {}: {e}", output.display());
                    ExitCode::from(1)
                }
            }
        }
        Command::All => {
            let (summary, _) = pipeline::run_all(&opts);
            emit(report, &summary);
            status(summary.passed)
        }
    }
}
