use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use picpos::{EnumerationBounds, TriState, DEFAULT_ENUMERATION_CAP, DEFAULT_ORBIT_DEPTH};
use picpos_cli::{
    compare_expectations, grid_cap_from_env, pretty, read_document, run_certify, run_check, run_enumerate,
    run_orbit_search, run_standardize, run_sweep, CheckInput, CheckRequest, Expectation, Format, GridCapExceeded,
    OracleInput, Range, SweepRequest, SCHEMA_VERSION,
};
use serde::Serialize;

/// Positivity of line bundles on blow-ups of the plane at points of a curve.
#[derive(Parser)]
#[command(name = "picpos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate positivity properties of one class.
    Check(CheckArgs),
    /// Build and verify an effectivity certificate.
    CertifyEffective(Common),
    /// Reduce a class on a cubic (e = 3) to standard form.
    Standardize(Common),
    /// Search the orbit under quadratic transforms for a standard form.
    OrbitSearch(OrbitArgs),
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Evaluate a grid of uniform classes.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// List classes satisfying the obstruction inequalities for N = L - K.
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct ClassArgs {
    /// JSON or TOML request; flags override its fields.
    file: Option<PathBuf>,
    /// Degree of the curve through the points.
    #[arg(long)]
    e: Option<i64>,
    /// Number of points.
    #[arg(long)]
    r: Option<usize>,
    /// Degree of L.
    #[arg(long)]
    d: Option<i64>,
    /// Uniform multiplicity (needs --r).
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Multiplicities, comma separated; `3x13` repeats 3 thirteen times.
    #[arg(long, allow_hyphen_values = true)]
    mults: Option<String>,
    /// Whether some e of the points are collinear.
    #[arg(long)]
    collinear: Option<TriState>,
    /// Whether the curve has positive geometric genus.
    #[arg(long)]
    positive_genus: Option<TriState>,
}

impl ClassArgs {
    fn input(&self) -> Result<CheckInput> {
        let base = match &self.file {
            Some(path) => read_document(path)?,
            None => CheckInput::default(),
        };
        let flags = CheckInput {
            e: self.e,
            r: self.r,
            d: self.d,
            m: self.m,
            mults: self.mults.as_deref().map(parse_mults).transpose()?,
            collinear: self.collinear.map(|t| t.to_string()),
            positive_genus: self.positive_genus.map(|t| t.to_string()),
            ..CheckInput::default()
        };
        let mut merged = base.overlay(flags);
        // `--mults` and `--m` on the command line replace each other.
        if self.mults.is_some() {
            merged.m = self.m;
        } else if self.m.is_some() {
            merged.mults = None;
        }
        Ok(merged)
    }
}

fn parse_mults(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (value, count) = match part.split_once(['x', '*']) {
            Some((v, n)) => (v.trim(), n.trim().parse::<usize>().map_err(|_| anyhow!("bad repeat count in `{part}`"))?),
            None => (part, 1),
        };
        let value: i64 = value.parse().map_err(|_| anyhow!("bad multiplicity `{part}`"))?;
        out.extend(std::iter::repeat_n(value, count));
    }
    Ok(out)
}

#[derive(Args)]
struct Output {
    /// Human-readable output instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    output: Output,
}

impl Common {
    /// The class and context only; property selection does not apply.
    fn request(&self) -> Result<CheckRequest> {
        let mut input = self.class.input()?;
        input.k = None;
        input.properties.clear();
        input.oracle = None;
        input.resolve()
    }
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Properties to evaluate (comma separated or repeated); default all that apply.
    #[arg(long = "property", value_delimiter = ',')]
    properties: Vec<String>,
    /// k for k-very ampleness.
    #[arg(long)]
    k: Option<u32>,
    /// Also run the obstruction enumeration with this degree bound.
    #[arg(long)]
    f_max: Option<i64>,
    /// Also run the obstruction enumeration with this multiplicity bound.
    #[arg(long)]
    n_max: Option<i64>,
    /// Assert `property=status`; exit 1 on a mismatch.
    #[arg(long)]
    expect: Vec<Expectation>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    common: Common,
    /// Maximum number of quadratic transforms.
    #[arg(long, default_value_t = DEFAULT_ORBIT_DEPTH)]
    depth: u32,
    /// Largest degree visited; defaults to the degree of the input.
    #[arg(long)]
    degree_cap: Option<i64>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Largest f in D = fH - sum ni Ei (default 2e).
    #[arg(long)]
    f_max: Option<i64>,
    /// Largest ni (default r).
    #[arg(long)]
    n_max: Option<i64>,
    /// Refuse search boxes larger than this.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u128,
}

#[derive(Args)]
struct SweepArgs {
    /// Range `a:b[:step]` or a single value.
    #[arg(long)]
    e: Range,
    #[arg(long)]
    r: Range,
    #[arg(long, allow_hyphen_values = true)]
    d: Range,
    #[arg(long, allow_hyphen_values = true)]
    m: Range,
    #[arg(long)]
    k: Option<Range>,
    #[arg(long, default_value = "unknown")]
    collinear: TriState,
    #[arg(long, default_value = "unknown")]
    positive_genus: TriState,
    /// csv or jsonl.
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

fn emit<T: Serialize>(value: &T, pretty_text: Option<String>) -> Result<()> {
    let mut out = io::stdout().lock();
    match pretty_text {
        Some(text) => write!(out, "{text}")?,
        None => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
    }
    Ok(())
}

/// Runs the command; `Ok(false)` means an `--expect` assertion failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check(args) => {
            let mut input = args.class.input()?;
            if !args.properties.is_empty() {
                input.properties = args.properties.clone();
            }
            if args.k.is_some() {
                input.k = args.k;
            }
            if args.f_max.is_some() || args.n_max.is_some() {
                let base = input.oracle.unwrap_or_default();
                input.oracle = Some(OracleInput { f_max: args.f_max.or(base.f_max), n_max: args.n_max.or(base.n_max) });
            }
            let request = input.resolve()?;
            let report = run_check(&request)?;
            let mismatches = compare_expectations(&report, &args.expect)?;
            emit(&report, args.output.pretty.then(|| pretty::check_report(&report)))?;
            for m in &mismatches {
                eprintln!("expectation failed: {m}");
            }
            Ok(mismatches.is_empty())
        }
        Command::CertifyEffective(common) => {
            let report = run_certify(&common.request()?)?;
            let text = common.output.pretty.then(|| {
                let mut s = format!("L = {}\n", report.class);
                s.push_str(&pretty::verdict_details(&report.verdict));
                if let Some(check) = &report.certificate_check {
                    s.push_str(&format!("    certificate valid: {}\n", check.valid));
                }
                s
            });
            emit(&report, text)?;
            Ok(true)
        }
        Command::Standardize(common) => {
            let report = run_standardize(&common.request()?)?;
            let text = common.output.pretty.then(|| {
                let mut s = format!(
                    "L = {}\nfinal = {} ({:?}, {} quadratic steps)\n",
                    report.class,
                    report.final_class,
                    report.trace.outcome,
                    report.trace.quadratic_steps()
                );
                if let Some(v) = &report.verdict {
                    s.push_str(&pretty::verdict_details(v));
                }
                s
            });
            emit(&report, text)?;
            Ok(true)
        }
        Command::OrbitSearch(args) => {
            let report = run_orbit_search(&args.common.request()?, args.depth, args.degree_cap)?;
            let text = args.common.output.pretty.then(|| {
                let stats = report.search.stats();
                let head = match report.search.trace() {
                    Some(t) => format!("found {} after {} quadratic steps", t.final_class, t.quadratic_steps()),
                    None => "no standard form within bounds".to_string(),
                };
                format!(
                    "L = {}\n{head}\nnodes {}, deepest {}, frontier exhausted: {}\n",
                    report.class, stats.nodes_explored, stats.deepest_level, stats.frontier_exhausted
                )
            });
            emit(&report, text)?;
            Ok(true)
        }
        Command::Oracle(OracleCommand::Enumerate(args)) => {
            let request = args.common.request()?;
            let default = EnumerationBounds::default_for(&request.ctx);
            let bounds = EnumerationBounds {
                f_max: args.f_max.unwrap_or(default.f_max),
                n_max: args.n_max.unwrap_or(default.n_max),
            };
            let report = run_enumerate(&request, args.k, bounds, args.cap)?;
            let text = args.common.output.pretty.then(|| {
                let mut s = format!(
                    "L = {}\nN = {}\n{} candidates ({} admissible), {} with n >= r, {} meeting C1\n",
                    report.class,
                    report.adjoint,
                    report.report.candidates.len(),
                    report.report.admissible().count(),
                    report.point_bound_violations,
                    report.curve_violations
                );
                for c in report.report.admissible() {
                    s.push_str(&format!(
                        "    D = {} (N.D = {}, D^2 = {}, x{})\n",
                        c.class, c.alpha, c.beta, c.orbit_size
                    ));
                }
                s
            });
            emit(&report, text)?;
            Ok(true)
        }
        Command::Sweep(args) => {
            let request = SweepRequest {
                d: args.d,
                m: args.m,
                r: args.r,
                e: args.e,
                k: args.k,
                collinear: args.collinear,
                positive_genus: args.positive_genus,
                format: args.format,
            };
            let cap = grid_cap_from_env()?;
            let mut out = io::BufWriter::new(io::stdout());
            match args.jobs {
                Some(jobs) => {
                    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
                    pool.install(|| run_sweep(&request, cap, &mut out))?;
                }
                None => {
                    run_sweep(&request, cap, &mut out)?;
                }
            }
            out.flush()?;
            Ok(true)
        }
    }
}

#[derive(Serialize)]
struct ErrorDoc {
    schema: u32,
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    required: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            let body = match err.downcast_ref::<GridCapExceeded>() {
                Some(cap) => ErrorBody {
                    kind: "grid_cap_exceeded",
                    message: err.to_string(),
                    required: Some(cap.required),
                    cap: Some(cap.cap),
                },
                None => ErrorBody { kind: "error", message: format!("{err:#}"), required: None, cap: None },
            };
            let doc = ErrorDoc { schema: SCHEMA_VERSION, error: body };
            eprintln!("{}", serde_json::to_string(&doc).unwrap_or_else(|_| err.to_string()));
            ExitCode::from(2)
        }
    }
}
