//! Command-line surface. [`run`] executes a parsed [`Cli`] against the given
//! output streams and returns the process status.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latticeset::analysis::{
    count_cohyperplanar_tuples, count_traces, find_violations, find_violations_of_kind, rich_surface_histogram,
    vc_refute, SurfaceKind,
};
use latticeset::constructions::{
    greedy_construct, moment_curve, theorem1_pipeline, CandidateOrder, ConstructionReport, PipelineOverrides,
};
use latticeset::{LatticePoint, PointSet};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bench::{self, BenchRow};
use crate::{pointfile, stats, CliError, ExitStatus};

#[derive(Parser, Debug)]
#[command(name = "latticeset", version, about = "Lattice point sets with no d+2 points on a sphere or hyperplane")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a point set and write it as a latticeset/1 file.
    Gen(GenArgs),
    /// Exit 0 if no surface carries `threshold` points, 1 with witnesses otherwise.
    Verify(VerifyArgs),
    /// Incidence statistics of a point set, as JSON.
    Stats(StatsArgs),
    /// Run constructions over a grid of parameters and tabulate sizes.
    Bench(BenchArgs),
    /// Build and validate VC refutation certificates for random subsets.
    VcCheck(VcCheckArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GenMethod {
    Moment,
    Pipeline,
    Greedy,
}

impl GenMethod {
    pub fn name(self) -> &'static str {
        match self {
            GenMethod::Moment => "moment",
            GenMethod::Pipeline => "pipeline",
            GenMethod::Greedy => "greedy",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum Order {
    #[default]
    Lex,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum Kind {
    #[default]
    All,
    Spheres,
    Hyperplanes,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    Rich,
    Lines,
    Cohyperplanar,
    Traces,
}

/// Parameters shared by `gen` and `bench`.
#[derive(Args, Debug, Clone)]
pub struct ConstructionFlags {
    /// Candidate order for the greedy method.
    #[arg(long, value_enum, default_value_t = Order::Lex)]
    pub order: Order,
    /// Constant c in the second-stage exponent of the pipeline.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub c_const: f64,
    /// Pipeline resamples allowed when the first-stage sample is atypical.
    #[arg(long, default_value_t = 3)]
    pub retries: u32,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub method: GenMethod,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub flags: ConstructionFlags,
    /// Point file to write; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the construction report as JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Defaults to d+2.
    #[arg(long)]
    pub threshold: Option<usize>,
    #[arg(long, value_enum, default_value_t = Kind::All)]
    pub kind: Kind,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "rich")]
    pub which: Vec<Section>,
    /// Subset size for traces; defaults to d+2.
    #[arg(long)]
    pub z: Option<usize>,
    /// Sampled subsets when exhaustive trace counting is too large.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<i64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "moment")]
    pub methods: Vec<GenMethod>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub seeds: Vec<u64>,
    #[command(flatten)]
    pub flags: ConstructionFlags,
    /// CSV destination; standard output when absent (the summary then goes
    /// to standard error).
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Leave runtime_ms empty so that repeated runs give identical tables.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct VcCheckArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitStatus, CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Stats(a) => cmd_stats(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
        Command::VcCheck(a) => cmd_vc_check(a, out, err),
    }
}

fn stdio(e: std::io::Error) -> CliError {
    CliError::io("<output stream>", e)
}

/// Builds a point set and re-verifies it independently of the construction.
pub fn construct(
    method: GenMethod,
    n: i64,
    d: usize,
    seed: u64,
    flags: &ConstructionFlags,
) -> Result<(PointSet, ConstructionReport), CliError> {
    let (ps, report) = match method {
        GenMethod::Moment => moment_curve(n, d)?,
        GenMethod::Pipeline => {
            let overrides = PipelineOverrides { c_const: flags.c_const, retries: flags.retries };
            theorem1_pipeline(n, d, seed, overrides)?
        }
        GenMethod::Greedy => {
            let order = match flags.order {
                Order::Lex => CandidateOrder::Lexicographic,
                Order::Random => CandidateOrder::Random,
            };
            greedy_construct(n, d, seed, order)?
        }
    };
    let mut clean = report.verified && find_violations(&ps, report.verify_threshold)?.is_empty();
    if let Some(h) = report.hyperplane_threshold {
        clean &= find_violations_of_kind(&ps, h, SurfaceKind::Hyperplanes)?.is_empty();
    }
    if !clean {
        return Err(CliError::Internal(format!("{} output for n={n} d={d} seed={seed} failed verification", method.name())));
    }
    Ok((ps, report))
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let (ps, report) = construct(a.method, a.n, a.d, a.seed, &a.flags)?;
    match &a.out {
        Some(path) => pointfile::store(&ps, path)?,
        None => out.write_all(pointfile::to_string(&ps).as_bytes()).map_err(stdio)?,
    }
    match &a.report {
        Some(path) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            std::fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e))?;
        }
        None => writeln!(err, "{}: d={} n={} size={} verified", report.method.name(), a.d, a.n, ps.len()).map_err(stdio)?,
    }
    for w in &report.warnings {
        writeln!(err, "warning: {w}").map_err(stdio)?;
    }
    Ok(ExitStatus::Ok)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let ps = pointfile::load(&a.file)?;
    let threshold = a.threshold.unwrap_or(ps.d() + 2);
    let kind = match a.kind {
        Kind::All => SurfaceKind::All,
        Kind::Spheres => SurfaceKind::Spheres,
        Kind::Hyperplanes => SurfaceKind::Hyperplanes,
    };
    let witnesses = find_violations_of_kind(&ps, threshold, kind)?;
    if witnesses.is_empty() {
        writeln!(out, "OK").map_err(stdio)?;
        return Ok(ExitStatus::Ok);
    }
    for w in &witnesses {
        w.validate().map_err(|e| CliError::Internal(format!("witness does not validate: {e}")))?;
    }
    let text = serde_json::to_string_pretty(&witnesses).expect("witnesses serialize");
    writeln!(out, "{text}").map_err(stdio)?;
    Ok(ExitStatus::Violated)
}

fn cmd_stats(a: StatsArgs, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let ps = pointfile::load(&a.file)?;
    let d = ps.d();
    let mut report = serde_json::Map::new();
    report.insert("d".into(), json!(d));
    report.insert("n".into(), json!(ps.n()));
    report.insert("points".into(), json!(ps.len()));
    for section in &a.which {
        let (key, value) = match section {
            Section::Rich => ("rich", serde_json::to_value(rich_surface_histogram(&ps)?).expect("histogram serializes")),
            Section::Lines => ("lines", json!({ "collinear_triples": stats::collinear_triples(&ps) })),
            Section::Cohyperplanar => {
                let tuples = count_cohyperplanar_tuples(&ps, d + 1)?;
                ("cohyperplanar", json!({ "arity": d + 1, "tuples": tuples }))
            }
            Section::Traces => {
                let r = count_traces(&ps, a.z.unwrap_or(d + 2), a.trials, a.seed)?;
                let within = r.within_bound();
                let mut v = serde_json::to_value(r).expect("trace report serializes");
                v["within_bound"] = json!(within);
                ("traces", v)
            }
        };
        report.insert(key.into(), value);
    }
    let text = serde_json::to_string_pretty(&Value::Object(report)).expect("stats serialize");
    writeln!(out, "{text}").map_err(stdio)?;
    Ok(ExitStatus::Ok)
}

pub fn bench_rows(a: &BenchArgs) -> Result<Vec<BenchRow>, CliError> {
    if a.n_list.is_empty() {
        return Err(CliError::Usage("empty --n-list".into()));
    }
    if let Some(n) = a.n_list.iter().find(|&&n| n < 2) {
        return Err(CliError::Usage(format!("grid size {n} < 2 in --n-list")));
    }
    let mut jobs = Vec::new();
    for &m in &a.methods {
        for &n in &a.n_list {
            for &seed in &a.seeds {
                jobs.push((m, n, seed));
            }
        }
    }
    jobs.sort();
    jobs.dedup();
    let mut rows = jobs
        .into_par_iter()
        .map(|(method, n, seed)| {
            let start = Instant::now();
            let (ps, _) = construct(method, n, a.d, seed, &a.flags)?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let final_size = ps.len() as u64;
            Ok(BenchRow {
                method: method.name(),
                d: a.d,
                n,
                seed,
                final_size,
                runtime_ms: (!a.no_timing).then_some(elapsed),
                exponent_estimate: bench::exponent_estimate(final_size, n),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    bench::sort_rows(&mut rows);
    Ok(rows)
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let rows = bench_rows(&a)?;
    match &a.csv {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
            bench::write_csv(&rows, file)?;
            bench::write_summary(&rows, out).map_err(stdio)?;
        }
        None => {
            bench::write_csv(&rows, &mut *out)?;
            bench::write_summary(&rows, err).map_err(stdio)?;
        }
    }
    Ok(ExitStatus::Ok)
}

/// `count` distinct points of `[n]^d`, drawn from the seeded stream.
fn random_subset(rng: &mut ChaCha8Rng, n: i64, d: usize, count: usize) -> Vec<LatticePoint> {
    let cells = (n as usize).pow(d as u32);
    index::sample(rng, cells, count)
        .into_iter()
        .map(|mut i| {
            let mut c = vec![0i64; d];
            for slot in c.iter_mut().rev() {
                *slot = (i % n as usize) as i64 + 1;
                i /= n as usize;
            }
            LatticePoint::new(c)
        })
        .collect()
}

fn cmd_vc_check(a: VcCheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitStatus, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    PointSet::empty(a.d, a.n)?;
    let cells = usize::try_from(a.n).ok().and_then(|n| n.checked_pow(a.d as u32));
    match cells {
        Some(c) if c >= a.d + 2 => {}
        Some(_) => return Err(CliError::Usage(format!("[{}]^{} has fewer than d+2 points", a.n, a.d))),
        None => return Err(CliError::Usage(format!("[{}]^{} is too large to sample from", a.n, a.d))),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut reasons: BTreeMap<String, u64> = BTreeMap::new();
    let mut depths: BTreeMap<usize, u64> = BTreeMap::new();
    let mut valid = 0u64;
    let mut invalid = 0u64;
    for _ in 0..a.samples {
        let q = random_subset(&mut rng, a.n, a.d, a.d + 2);
        let checked = vc_refute(&q).and_then(|r| r.validate().map(|()| r));
        match checked {
            Ok(r) => {
                valid += 1;
                let reason = serde_json::to_value(r.reason).expect("reason serializes");
                *reasons.entry(reason.as_str().unwrap_or_default().to_string()).or_default() += 1;
                *depths.entry(r.depth()).or_default() += 1;
            }
            Err(e) => {
                invalid += 1;
                let coords: Vec<&[i64]> = q.iter().map(|p| p.coords()).collect();
                writeln!(err, "certificate failed for {coords:?}: {e}").map_err(stdio)?;
            }
        }
    }
    let report = json!({
        "d": a.d,
        "n": a.n,
        "samples": a.samples,
        "seed": a.seed,
        "rng": latticeset::RNG_IDENTITY,
        "valid": valid,
        "invalid": invalid,
        "reasons": reasons,
        "depths": depths,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes")).map_err(stdio)?;
    Ok(if invalid == 0 { ExitStatus::Ok } else { ExitStatus::Internal })
}
