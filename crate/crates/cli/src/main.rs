//! Command-line front end: analysis reports, boundary plots, family
//! constructors, and the randomized certification harness.
//!
//! Exit codes: 0 success, 1 certified property violated, 2 usage or parse
//! error, 3 unsupported input.

mod complex_arg;
mod report;
mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use complex_arg::parse_complex;
use numrange::certify::{run_certification, CertFamily};
use numrange::{
    assemble_5x5, coeffs_nilpotent4, construct_exceptional, flat_portions_with, is_nilpotent,
    matrix_from_json, matrix_to_json, parallel_canonical, real_family_matrix, singular_points,
    C64, CMat, Error, ExceptionalParams, RangeConfig, Reducible5Params,
};
use report::{analyze, to_stable_json, AnalyzeOptions};

#[derive(Parser)]
#[command(
    name = "numrange",
    version,
    about = "Numerical ranges of small complex matrices: flat portions, Kippenhahn curves, certification sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TolArgs {
    /// Multiple-eigenvalue tolerance, relative to (1 + |A|_F)
    #[arg(long = "tol-mult", default_value_t = 1e-8, global = false)]
    tol_mult: f64,
    /// Minimal reported flat-portion length, relative to (1 + |A|_F)
    #[arg(long = "tol-flat", default_value_t = 1e-7)]
    tol_flat: f64,
    /// Number of scan angles for the eigenvalue-gap sweep
    #[arg(long = "scan", default_value_t = 2048)]
    scan: usize,
}

impl TolArgs {
    fn config(&self) -> RangeConfig {
        RangeConfig {
            n_scan: self.scan,
            eps_mult_rel: self.tol_mult,
            eps_flat_rel: self.tol_flat,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryFormat {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis report (JSON): flat portions, exceptional angles,
    /// quartic coefficients and singular points where applicable
    Analyze {
        matrix: PathBuf,
        /// Restrict the report to the flat portions
        #[arg(long)]
        only_flats: bool,
        /// Singular-point search radius (default: adapted to the range)
        #[arg(long)]
        radius: Option<f64>,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alias of `analyze --only-flats`
    FlatPortions {
        matrix: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sampled boundary as CSV (theta,x,y) or an SVG plot
    Boundary {
        matrix: PathBuf,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = BoundaryFormat::Csv)]
        format: BoundaryFormat,
        /// Draw the supporting lines of detected flat portions (SVG only)
        #[arg(long)]
        support_lines: bool,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quartic coefficients c1..c6 and singular points of a nilpotent 4x4
    Kippenhahn {
        matrix: PathBuf,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a family member as matrix JSON
    Construct {
        #[command(subcommand)]
        family: ConstructCmd,
    },
    /// Randomized certification sweep over a family
    Verify {
        /// nilpotent4 | general4 | reducible4 | reducible5
        family: String,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Member of the exceptional-line family
    Exceptional {
        #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
        alpha: C64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a1: C64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a2: C64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        a3: C64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta2: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical member with two parallel flat portions
    Parallel {
        #[arg(long, allow_hyphen_values = true)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a2: f64,
        #[arg(long, allow_hyphen_values = true)]
        a3: f64,
        #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
        alpha: C64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Real palindromic family member
    RealFamily {
        #[arg(long, allow_hyphen_values = true)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a2: f64,
        #[arg(long, allow_hyphen_values = true)]
        a3: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// 5x5 direct-sum family member
    Reducible5 {
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        r1: f64,
        #[arg(long, allow_hyphen_values = true)]
        r2: f64,
        #[arg(long, allow_hyphen_values = true)]
        r3: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::UnsupportedDimension(_) => 3,
        Error::Dimension(n) if *n > 8 => 3,
        _ => 2,
    }
}

fn read_matrix(path: &PathBuf) -> Result<CMat, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        2u8
    })?;
    matrix_from_json(&text).map_err(|e| {
        eprintln!("error: {e}");
        exit_code_for(&e)
    })
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), u8> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            2u8
        }),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn run_analyze(
    matrix: &PathBuf,
    only_flats: bool,
    radius: Option<f64>,
    tol: &TolArgs,
    out: &Option<PathBuf>,
) -> Result<(), u8> {
    let a = read_matrix(matrix)?;
    let opts = AnalyzeOptions { config: tol.config(), only_flats, search_radius: radius };
    let rep = analyze(&a, &opts).map_err(|e| {
        eprintln!("error: {e}");
        exit_code_for(&e)
    })?;
    emit(out, &to_stable_json(&rep))
}

fn run_boundary(
    matrix: &PathBuf,
    samples: usize,
    format: BoundaryFormat,
    support_lines: bool,
    tol: &TolArgs,
    out: &Option<PathBuf>,
) -> Result<(), u8> {
    if samples < 16 {
        eprintln!("error: need at least 16 samples");
        return Err(2);
    }
    let a = read_matrix(matrix)?;
    let content = match format {
        BoundaryFormat::Csv => svg::boundary_csv(&a, samples),
        BoundaryFormat::Svg => {
            let portions = match flat_portions_with(&a, &tol.config()) {
                Ok(p) => p,
                Err(Error::DegenerateRange) => Vec::new(),
                Err(e) => {
                    eprintln!("error: {e}");
                    return Err(exit_code_for(&e));
                }
            };
            svg::render(&a, samples, &portions, support_lines)
        }
    };
    emit(out, &content)
}

fn run_kippenhahn(matrix: &PathBuf, radius: Option<f64>, out: &Option<PathBuf>) -> Result<(), u8> {
    let a = read_matrix(matrix)?;
    if a.n() != 4 || !is_nilpotent(&a) {
        eprintln!("error: the quartic coefficient formulas need a nilpotent 4x4 matrix");
        return Err(3);
    }
    let q = coeffs_nilpotent4(&a).map_err(|e| {
        eprintln!("error: {e}");
        exit_code_for(&e)
    })?;
    let r = radius.unwrap_or_else(|| numrange::default_search_radius(&a));
    let pts = singular_points(&q, r);
    let payload = serde_json::json!({
        "c1": q.c[0], "c2": q.c[1], "c3": q.c[2],
        "c4": q.c[3], "c5": q.c[4], "c6": q.c[5],
        "search_radius": r,
        "singular_points": pts.iter().map(|p| serde_json::json!({
            "u": p.u, "v": p.v, "residual": p.residual,
        })).collect::<Vec<_>>(),
    });
    emit(out, &serde_json::to_string_pretty(&payload).expect("serializable"))
}

fn run_construct(cmd: &ConstructCmd) -> Result<(), u8> {
    let bad = |e: Error| {
        eprintln!("error: {e}");
        2u8
    };
    let (matrix, out) = match cmd {
        ConstructCmd::Exceptional { alpha, a1, a2, a3, theta1, theta2, out } => {
            let p = ExceptionalParams::new(*alpha, *a1, *a2, *a3, *theta1, *theta2).map_err(bad)?;
            (construct_exceptional(&p), out)
        }
        ConstructCmd::Parallel { a1, a2, a3, alpha, out } => {
            (parallel_canonical(*a1, *a2, *a3, *alpha).map_err(bad)?, out)
        }
        ConstructCmd::RealFamily { a1, a2, a3, out } => (real_family_matrix(*a1, *a2, *a3), out),
        ConstructCmd::Reducible5 { r, r1, r2, r3, out } => {
            let p = Reducible5Params::new(*r, *r1, *r2, *r3).map_err(bad)?;
            (assemble_5x5(&p), out)
        }
    };
    emit(out, &matrix_to_json(&matrix))
}

fn run_verify(family: &str, trials: u64, seed: u64, tol: &TolArgs) -> Result<(), u8> {
    let Some(fam) = CertFamily::parse(family) else {
        eprintln!(
            "error: unknown family {family:?} (expected nilpotent4, general4, reducible4 or reducible5)"
        );
        return Err(2);
    };
    if trials == 0 {
        eprintln!("error: need at least one trial");
        return Err(2);
    }
    let summary = run_certification(fam, trials, seed, &tol.config());
    println!("family: {}", summary.family);
    println!("trials: {}", summary.trials);
    println!("seed: {}", summary.seed);
    println!("bound: {} flat portions", summary.bound);
    for (count, n) in &summary.histogram {
        println!("count {count}: {n}");
    }
    println!("max observed: {}", summary.max_count);
    if summary.passed() {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL ({} violations)", summary.violations.len());
        for v in &summary.violations {
            eprintln!("violation at trial {} (trial seed {}): {}", v.trial, v.trial_seed, v.reason);
            eprintln!("{}", matrix_to_json(&v.matrix));
        }
        Err(1)
    }
}

fn dispatch(cli: &Cli) -> Result<(), u8> {
    match &cli.command {
        Command::Analyze { matrix, only_flats, radius, tol, out } => {
            run_analyze(matrix, *only_flats, *radius, tol, out)
        }
        Command::FlatPortions { matrix, tol, out } => run_analyze(matrix, true, None, tol, out),
        Command::Boundary { matrix, samples, format, support_lines, tol, out } => {
            run_boundary(matrix, *samples, *format, *support_lines, tol, out)
        }
        Command::Kippenhahn { matrix, radius, out } => run_kippenhahn(matrix, *radius, out),
        Command::Construct { family } => run_construct(family),
        Command::Verify { family, trials, seed, tol } => run_verify(family, *trials, *seed, tol),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("NR_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
