use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mahler_sep_cli::commands::{
    cmd_analyze, cmd_family, cmd_lemmas, cmd_sweep, cmd_window, CommandOutput,
};
use mahler_sep_cli::ensemble::{EnsembleKind, EnsembleSpec};

#[derive(Parser)]
#[command(
    name = "mahler-sep",
    about = "Root separation, Mahler measure, and separation-bound checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure a polynomial and check every separation bound.
    Analyze {
        /// JSON file with {"coeffs": [...]} or {"roots": [[re,im],...]}.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Inline JSON coefficient array, ascending order (integers may be
        /// quoted strings for arbitrary precision).
        #[arg(long)]
        coeffs: Option<String>,
        /// Inline JSON root array of [re, im] pairs or bare reals.
        #[arg(long)]
        roots: Option<String>,
        /// Working precision in decimal digits; above 16 the solver
        /// polishes in extended precision.
        #[arg(long, default_value_t = 16)]
        precision: u32,
    },
    /// Construct an extremal family instance and report its sharpness.
    Family {
        /// gaussian, conjugate_closed, arithmetic_progression, quartic, or
        /// cubic_extremal.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Scale parameter: root scaling t, or progression step r.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Run a randomized ensemble sweep and write one row per sample.
    Sweep {
        /// int_coeff, disk_roots, or real_roots.
        #[arg(long)]
        kind: String,
        /// Degree range, e.g. "2-12" or a single degree "8".
        #[arg(long)]
        degrees: String,
        /// Coefficient height bound (int_coeff).
        #[arg(long, default_value_t = 10)]
        height: i64,
        /// Root radius (disk_roots / real_roots).
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        /// Samples per degree.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file for the rows.
        #[arg(long)]
        out: PathBuf,
        /// Row format: csv (versioned header) or json.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Check the analytic inequalities used by the proofs.
    Lemmas {
        #[arg(long, default_value_t = 400)]
        n_max: usize,
    },
    /// Print the separation window for a hypothetical Lehmer counterexample.
    Window {
        #[arg(long)]
        n: usize,
        /// Assumed minimal Mahler measure.
        #[arg(long)]
        mu: f64,
    },
}

fn parse_degree_range(text: &str) -> Result<(usize, usize), String> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad degree {s:?}: {e}"))
    };
    match text.split_once('-') {
        Some((lo, hi)) => Ok((parse_one(lo)?, parse_one(hi)?)),
        None => {
            let d = parse_one(text)?;
            Ok((d, d))
        }
    }
}

fn run() -> CommandOutput {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            input,
            coeffs,
            roots,
            precision,
        } => cmd_analyze(
            input.as_deref(),
            coeffs.as_deref(),
            roots.as_deref(),
            precision,
        ),
        Command::Family { kind, n, t } => cmd_family(&kind, n, t),
        Command::Sweep {
            kind,
            degrees,
            height,
            radius,
            count,
            seed,
            out,
            format,
        } => {
            let kind: EnsembleKind = match kind.parse() {
                Ok(k) => k,
                Err(e) => {
                    return CommandOutput {
                        exit: 2,
                        stdout: serde_json::json!({ "error": e.to_string() }).to_string(),
                    }
                }
            };
            let (degree_lo, degree_hi) = match parse_degree_range(&degrees) {
                Ok(r) => r,
                Err(e) => {
                    return CommandOutput {
                        exit: 2,
                        stdout: serde_json::json!({ "error": e }).to_string(),
                    }
                }
            };
            let spec = EnsembleSpec {
                kind,
                degree_lo,
                degree_hi,
                height,
                radius,
                count,
                seed,
            };
            cmd_sweep(&spec, &out, &format)
        }
        Command::Lemmas { n_max } => cmd_lemmas(n_max),
        Command::Window { n, mu } => cmd_window(n, mu),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("MAHLER_SEP_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            if k >= 1 {
                // Ignore failure: the global pool may already exist.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
        }
    }
    let out = run();
    println!("{}", out.stdout);
    ExitCode::from(out.exit as u8)
}
