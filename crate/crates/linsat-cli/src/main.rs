//! `linsat`: generate, transform, solve, verify, and benchmark max-LINSAT
//! instances from the command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 I/O error, 4 invariant violation
//! reported by a module. Failures print one machine-readable JSON line on
//! stderr.

mod bench;
mod manifest;
mod records;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linsat_core::generators::generate;
use linsat_core::solvers::DEFAULT_ENUM_CAP;
use linsat_core::{
    landscape_curve, parse_rational, prange_expected_ratio, verify_reduction, Algorithm,
    Assignment, GenConfig, Instance, Kind, Rat,
};
use manifest::{BenchManifest, GenManifest};
use num_traits::ToPrimitive;
use records::SolveRecord;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Module(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Module(_) => "module",
        }
    }

    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Module(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Module(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "linsat",
    version,
    about = "max-LINSAT(q, r) toolkit: instances, reductions, baselines, landscape data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance (random | e3lin | opi | planted)
    Generate(GenerateArgs),
    /// Expand singleton acceptance sets into all r-element supersets
    Reduce(ReduceArgs),
    /// Run a solver and emit one result record
    Solve(SolveArgs),
    /// Check predicted vs. actual satisfied counts over assignments
    VerifyReduction(VerifyReductionArgs),
    /// Evaluate closed-form performance curves
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Run a kinds x algorithms cross product from a manifest
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Manifest file with `key = value` lines; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Acceptance-set size (1 <= r <= q-1)
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_kind)]
    kind: Option<Kind>,
    /// Fraction of constraints the planted assignment satisfies (planted only)
    #[arg(long, value_parser = parse_rat_arg)]
    planted_sat_fraction: Option<Rat>,
    /// Output file (default stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Where to write the planted assignment (planted only)
    #[arg(long)]
    assignment_out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Target acceptance-set size
    #[arg(long)]
    r: usize,
    /// Instance file
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// brute | random | ce | prange
    #[arg(long, value_parser = parse_algo)]
    algo: Algorithm,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Iteration count for the information-set solver
    #[arg(long, default_value_t = 1)]
    iters: u64,
    /// Enumeration cap for the exhaustive solver
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = RecordFormat::Jsonl)]
    format: RecordFormat,
    /// Instance file
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyReductionArgs {
    /// The singleton-set instance
    original: PathBuf,
    /// Its expansion
    reduced: PathBuf,
    /// Check every assignment (subject to --cap)
    #[arg(long, conflicts_with = "assignments")]
    all: bool,
    /// File with one serialized assignment per line
    #[arg(long)]
    assignments: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Sample the semicircle law on a uniform ell/m grid
    Semicircle(SemicircleArgs),
    /// Evaluate the information-set-decoding expected ratio
    Prange(PrangeArgs),
}

#[derive(Args)]
struct SemicircleArgs {
    /// r/q as a fraction (e.g. 1/2) or decimal
    #[arg(long, value_parser = parse_rat_arg)]
    r_over_q: Rat,
    #[arg(long)]
    steps: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PrangeArgs {
    #[arg(long)]
    n_over_m: f64,
    #[arg(long)]
    r_over_q: f64,
}

#[derive(Args)]
struct BenchArgs {
    /// Bench manifest file
    #[arg(long)]
    manifest: PathBuf,
    /// Output directory (default: $LINSAT_OUT_DIR, else `.`)
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Format of the per-run records file
    #[arg(long, value_enum, default_value_t = RecordFormat::Jsonl)]
    format: RecordFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecordFormat {
    Jsonl,
    Csv,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse()
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rational(s)
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!(
            "{}",
            serde_json::json!({ "error": err.kind(), "message": err.message() })
        );
        std::process::exit(err.code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Solve(args) => cmd_solve(args),
        Command::VerifyReduction(args) => cmd_verify_reduction(args),
        Command::Analyze(AnalyzeCommand::Semicircle(args)) => cmd_semicircle(args),
        Command::Analyze(AnalyzeCommand::Prange(args)) => cmd_prange(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {}", path.display(), e)))
}

fn write_output(target: Option<&Path>, body: &str) -> Result<(), CliError> {
    match target {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("writing {}: {}", path.display(), e))),
        None => {
            print!("{}", body);
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, CliError> {
    Instance::parse(&read_file(path)?).map_err(|e| CliError::Module(e.to_string()))
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let from_config = match &args.config {
        Some(path) => GenManifest::parse(&read_file(path)?).map_err(CliError::Usage)?,
        None => GenManifest::default(),
    };
    let missing = |name: &str| CliError::Usage(format!("missing required parameter `{}`", name));
    let cfg = GenConfig {
        q: args.q.or(from_config.q).ok_or_else(|| missing("q"))?,
        n: args.n.or(from_config.n).ok_or_else(|| missing("n"))?,
        m: args.m.or(from_config.m).ok_or_else(|| missing("m"))?,
        r: args.r.or(from_config.r).ok_or_else(|| missing("r"))?,
        seed: args.seed.or(from_config.seed).unwrap_or(0),
        kind: args.kind.or(from_config.kind).unwrap_or(Kind::Random),
        planted_sat_fraction: args
            .planted_sat_fraction
            .or(from_config.planted_sat_fraction)
            .unwrap_or_else(|| Rat::from_integer(1)),
    };
    let (inst, planted) = generate(&cfg).map_err(|e| CliError::Module(e.to_string()))?;

    let mut body = String::new();
    if let Some(x) = &planted {
        body.push_str(&format!("# planted assignment: {}\n", x.serialize()));
    }
    body.push_str(&inst.serialize());
    write_output(args.output.as_deref(), &body)?;

    if let Some(path) = &args.assignment_out {
        let x = planted.as_ref().ok_or_else(|| {
            CliError::Usage("--assignment-out only applies to kind=planted".into())
        })?;
        std::fs::write(path, format!("{}\n", x.serialize()))
            .map_err(|e| CliError::Io(format!("writing {}: {}", path.display(), e)))?;
    }
    Ok(())
}

fn cmd_reduce(args: ReduceArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.input)?;
    let reduced =
        linsat_core::reduce(&inst, args.r).map_err(|e| CliError::Module(e.to_string()))?;
    write_output(args.output.as_deref(), &reduced.serialize())
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let inst = load_instance(&args.input)?;
    let clock = Instant::now();
    let result = bench::run_algorithm(&inst, args.algo, args.seed, args.iters, args.cap)
        .map_err(|e| CliError::Module(e.to_string()))?;
    let wall_time_ms = clock.elapsed().as_secs_f64() * 1e3;
    let record = SolveRecord::from_result(&result, wall_time_ms);
    let body = match args.format {
        RecordFormat::Jsonl => format!(
            "{}\n",
            serde_json::to_string(&record).expect("record serializes")
        ),
        RecordFormat::Csv => format!("{}\n{}\n", SolveRecord::CSV_HEADER, record.csv_row()),
    };
    write_output(args.output.as_deref(), &body)
}

/// Ascending enumeration of all q^n assignments.
fn all_assignments(inst: &Instance) -> impl Iterator<Item = Assignment> {
    let spec = inst.spec().clone();
    let q = spec.q();
    let n = inst.n();
    let mut values = vec![0u32; n];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = Assignment::new(values.iter().map(|&v| spec.elem(v)).collect());
        let mut i = n;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < q {
                break;
            }
            values[i] = 0;
        }
        Some(out)
    })
}

fn cmd_verify_reduction(args: VerifyReductionArgs) -> Result<(), CliError> {
    let original = load_instance(&args.original)?;
    let reduced = load_instance(&args.reduced)?;

    let assignments: Vec<Assignment> = if let Some(path) = &args.assignments {
        let spec = original.spec();
        read_file(path)?
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|l| Assignment::parse(spec, l).map_err(|e| CliError::Module(e.to_string())))
            .collect::<Result<_, _>>()?
    } else if args.all {
        let states = u128::from(original.spec().q()).checked_pow(original.n() as u32);
        match states {
            Some(s) if s <= u128::from(args.cap) => {}
            _ => {
                return Err(CliError::Usage(format!(
                    "enumerating q^n assignments exceeds --cap {}",
                    args.cap
                )))
            }
        }
        all_assignments(&original).collect()
    } else {
        return Err(CliError::Usage(
            "pass --all or --assignments <FILE>".into(),
        ));
    };

    let mut body = String::from("assignment,mu,predicted,actual,equal\n");
    let mut violations = 0u64;
    for x in &assignments {
        let report = verify_reduction(&original, &reduced, x)
            .map_err(|e| CliError::Module(e.to_string()))?;
        let equal = report.law_holds();
        if !equal {
            violations += 1;
        }
        body.push_str(&format!(
            "{},{},{},{},{}\n",
            x.serialize(),
            report.mu,
            report.predicted_satisfied,
            report.actual_satisfied,
            equal
        ));
    }
    write_output(args.output.as_deref(), &body)?;
    if violations > 0 {
        return Err(CliError::Module(format!(
            "{} of {} assignments violate the reduction law",
            violations,
            assignments.len()
        )));
    }
    Ok(())
}

fn cmd_semicircle(args: SemicircleArgs) -> Result<(), CliError> {
    let points =
        landscape_curve(args.r_over_q, args.steps).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut body = String::from("ell_over_m,alpha_dqi,hardness_wall,saturated\n");
    for p in &points {
        body.push_str(&format!(
            "{},{},{},{}\n",
            p.ell_over_m.to_f64().expect("grid fits f64"),
            p.alpha_dqi,
            p.hardness_wall.to_f64().expect("wall fits f64"),
            p.saturated
        ));
    }
    write_output(args.output.as_deref(), &body)
}

fn cmd_prange(args: PrangeArgs) -> Result<(), CliError> {
    let ratio = prange_expected_ratio(args.n_over_m, args.r_over_q)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    println!("{}", ratio);
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let text = read_file(&args.manifest)?;
    let manifest = BenchManifest::parse(&text).map_err(CliError::Usage)?;
    let out_dir = args
        .out_dir
        .or_else(|| std::env::var_os("LINSAT_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    bench::run_bench(&manifest, &args.manifest, &text, &out_dir, args.format)
}
