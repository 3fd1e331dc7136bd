//! Command-line front end.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::time::Instant;

use adiamis_core::analysis::anneal_on_basis;
use adiamis_core::basis::{IsBasis, DEFAULT_BASIS_CAP};
use adiamis_core::dynamics::{evolve_trajectory, initial_state, EvolveOptions, RunTime, ScheduleSpec};
use adiamis_core::spectra::{gap_scan, GapScanOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::merge_config_args;
use crate::ensemble::{run_ensemble, EnsembleConfig};
use crate::graph_io::write_graph;
use crate::manifest::{Manifest, Seeds, MANIFEST_FILE};
use crate::records::{basis_csv, gap_csv, runs_csv, to_json, trajectory_csv, write_file, GapSummary, RunRecord};
use crate::source::GraphSource;
use crate::svg::line_chart;
use crate::validate::validate;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "adiamis", version, about = "Adiabatic maximum-independent-set simulator")]
pub struct Cli {
    /// key = value file with defaults for any long flag.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a graph file.
    Gen(GenArgs),
    /// Check H0 and the gauge matrix on a graph.
    Validate(ValidateArgs),
    /// Scan the gap of A(theta) over [0, pi].
    GapScan(GapScanArgs),
    /// Anneal one graph.
    Anneal(AnnealArgs),
    /// Anneal a seeded ensemble of graphs.
    Ensemble(EnsembleArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Erdős–Rényi G(n, p).
    #[arg(long, num_args = 2, value_names = ["N", "P"])]
    pub gnp: Option<Vec<String>>,
    /// Uniform G(n, m).
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    pub gnm: Option<Vec<String>>,
    /// G(n, m) with m = n.
    #[arg(long, value_name = "N")]
    pub gnm_equal_n: Option<usize>,
    /// Spider graph with N legs.
    #[arg(long, value_name = "N")]
    pub spider: Option<usize>,
    #[arg(long, value_name = "N")]
    pub edgeless: Option<usize>,
    /// Graph text file.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScheduleArgs {
    /// Total run time T.
    #[arg(long, conflicts_with = "gamma")]
    pub total_time: Option<f64>,
    /// T = n^gamma (default 2).
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub omega_phi: f64,
    /// Integrator steps (default max(4000, ceil(50 T max(1, n/10)))).
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also write the independent-set basis.
    #[arg(long)]
    pub dump_basis: bool,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    pub basis_cap: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coupling of H0.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    pub basis_cap: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GapScanArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Grid points over [0, pi].
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Keep the dtheta/dt = pi omega_phi / T term in A.
    #[arg(long)]
    pub include_omega_theta: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also draw the gap curve as gap.svg.
    #[arg(long)]
    pub svg: bool,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    pub basis_cap: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnnealArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Write this many evenly spaced snapshots to trajectory.csv.
    #[arg(long, value_name = "SAMPLES")]
    pub trajectory: Option<usize>,
    #[arg(long)]
    pub dump_basis: bool,
    /// Record wall-clock runtime (outputs are then no longer reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Rerun with twice the steps and report the change in mean size.
    #[arg(long)]
    pub check_doubling: bool,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    pub basis_cap: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnsembleArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long = "master-seed", visible_alias = "seed", default_value_t = 0)]
    pub master_seed: u64,
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Worker threads (default: all cores).
    #[arg(long, default_value_t = 0)]
    pub parallelism: usize,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub check_doubling: bool,
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    pub basis_cap: usize,
}

fn parse_num<T: std::str::FromStr>(flag: &str, what: &str, s: &str) -> Result<T, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("--{flag}: cannot parse {what} from {s:?}")))
}

impl SourceArgs {
    pub fn resolve(&self) -> Result<GraphSource, CliError> {
        if let Some(v) = &self.gnp {
            return Ok(GraphSource::Gnp {
                n: parse_num("gnp", "N", &v[0])?,
                p: parse_num("gnp", "P", &v[1])?,
            });
        }
        if let Some(v) = &self.gnm {
            return Ok(GraphSource::Gnm {
                n: parse_num("gnm", "N", &v[0])?,
                m: parse_num("gnm", "M", &v[1])?,
            });
        }
        if let Some(n) = self.gnm_equal_n {
            return Ok(GraphSource::GnmEqualN { n });
        }
        if let Some(legs) = self.spider {
            return Ok(GraphSource::Spider { legs });
        }
        if let Some(n) = self.edgeless {
            return Ok(GraphSource::Edgeless { n });
        }
        if let Some(path) = &self.graph {
            return Ok(GraphSource::File { path: path.clone() });
        }
        Err(CliError::Usage("no graph source given".into()))
    }
}

impl ScheduleArgs {
    pub fn spec(&self) -> ScheduleSpec {
        let run_time = match (self.total_time, self.gamma) {
            (Some(t), _) => RunTime::Total(t),
            (None, g) => RunTime::Exponent(g.unwrap_or(2.0)),
        };
        ScheduleSpec {
            run_time,
            omega_phi: self.omega_phi,
            steps: self.steps,
        }
    }
}

/// Resolved schedule values echoed next to results.
#[derive(Debug, Serialize)]
struct ScheduleEcho {
    total_time: f64,
    gamma: Option<f64>,
    omega_phi: f64,
    omega_theta: f64,
    steps: usize,
}

fn echo(s: &adiamis_core::Schedule) -> ScheduleEcho {
    ScheduleEcho {
        total_time: s.total_time(),
        gamma: s.gamma(),
        omega_phi: s.omega_phi(),
        omega_theta: s.omega_theta(),
        steps: s.steps(),
    }
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn graph_seeds(source: &GraphSource, seed: u64) -> Seeds {
    Seeds {
        graph: source.is_random().then_some(seed),
        master: None,
        member_rule: None,
    }
}

fn write_manifest<C: Serialize>(
    dir: &Path,
    subcommand: &'static str,
    seeds: Seeds,
    config: &C,
    outputs: &[&str],
) -> Result<(), CliError> {
    let mut outputs: Vec<String> = outputs.iter().map(|s| s.to_string()).collect();
    outputs.push(MANIFEST_FILE.into());
    let manifest = Manifest::new(subcommand, seeds, config, outputs);
    write_file(dir, MANIFEST_FILE, &to_json(&manifest))
}

fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    let source = args.source.resolve()?;
    let g = source.build(args.seed)?;
    let dir = &args.output.out;
    prepare_dir(dir)?;
    write_file(dir, "graph.txt", write_graph(&g).as_bytes())?;
    let mut outputs = vec!["graph.txt"];
    if args.dump_basis {
        let basis = IsBasis::build_capped(&g, args.basis_cap)?;
        write_file(dir, "basis.csv", &basis_csv(&basis)?)?;
        outputs.push("basis.csv");
    }
    write_manifest(dir, "gen", graph_seeds(&source, args.seed), args, &outputs)?;
    println!("graph n={} m={} d={:.3}", g.n(), g.m(), g.average_degree());
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), CliError> {
    let g = args.source.resolve()?.build(args.seed)?;
    let report = validate(&g, args.delta, args.basis_cap)?;
    match args.format {
        ReportFormat::Json => print!("{}", String::from_utf8_lossy(&to_json(&report))),
        ReportFormat::Text => {
            for c in &report.checks {
                let status = match (c.ran, c.passed) {
                    (false, _) => "SKIP",
                    (true, true) => "PASS",
                    (true, false) => "FAIL",
                };
                println!("{status} {}: {}", c.name, c.detail);
            }
        }
    }
    match report.first_failure() {
        Some(c) => Err(CliError::Check(format!("{}: {}", c.name, c.detail))),
        None => Ok(()),
    }
}

fn cmd_gap_scan(args: &GapScanArgs) -> Result<(), CliError> {
    let source = args.source.resolve()?;
    let g = source.build(args.seed)?;
    let schedule = args.schedule.spec().for_vertices(g.n())?;
    let basis = IsBasis::build_capped(&g, args.basis_cap)?;
    let opts = GapScanOptions {
        omega_phi: schedule.omega_phi(),
        omega_theta: if args.include_omega_theta {
            PI * schedule.omega_phi() / schedule.total_time()
        } else {
            0.0
        },
        grid_points: args.grid,
        ..Default::default()
    };
    let curve = gap_scan(&basis, &opts)?;
    let dir = &args.output.out;
    prepare_dir(dir)?;
    let curve_file = match args.output.format {
        Format::Csv => {
            write_file(dir, "gap.csv", &gap_csv(&curve)?)?;
            "gap.csv"
        }
        Format::Json => {
            #[derive(Serialize)]
            struct CurveJson<'a> {
                manifest: &'static str,
                theta: &'a [f64],
                lambda0: &'a [f64],
                lambda1: &'a [f64],
                gap: &'a [f64],
            }
            let body = CurveJson {
                manifest: MANIFEST_FILE,
                theta: &curve.thetas,
                lambda0: &curve.lambda0,
                lambda1: &curve.lambda1,
                gap: &curve.gap,
            };
            write_file(dir, "gap.json", &to_json(&body))?;
            "gap.json"
        }
    };
    let summary = GapSummary {
        manifest: MANIFEST_FILE.into(),
        n: g.n(),
        dimension: curve.dimension,
        min_gap: curve.min_gap,
        theta_at_min: curve.theta_at_min,
    };
    write_file(dir, "summary.json", &to_json(&summary))?;
    let mut outputs = vec![curve_file, "summary.json"];
    if args.svg {
        let points: Vec<(f64, f64)> = curve.thetas.iter().copied().zip(curve.gap.iter().copied()).collect();
        let title = format!("gap of A(theta), n = {}, dimension = {}", g.n(), curve.dimension);
        write_file(dir, "gap.svg", line_chart(&title, "theta", "gap", &points).as_bytes())?;
        outputs.push("gap.svg");
    }
    write_manifest(dir, "gap-scan", graph_seeds(&source, args.seed), args, &outputs)?;
    println!(
        "dimension={} min_gap={} theta_at_min={}",
        curve.dimension, curve.min_gap, curve.theta_at_min
    );
    Ok(())
}

fn cmd_anneal(args: &AnnealArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let source = args.source.resolve()?;
    let g = source.build(args.seed)?;
    let schedule = args.schedule.spec().for_vertices(g.n())?;
    let basis = IsBasis::build_capped(&g, args.basis_cap)?;
    let opts = EvolveOptions::default();
    let out = anneal_on_basis(&g, &basis, &schedule, &opts)?;
    let runtime_ms = start.elapsed().as_millis() as u64;
    let doubling_delta = if args.check_doubling {
        let fine = anneal_on_basis(&g, &basis, &schedule.with_steps(2 * schedule.steps())?, &opts)?;
        Some((fine.mean_size - out.mean_size).abs())
    } else {
        None
    };
    let record = RunRecord {
        n: g.n(),
        m: g.m(),
        generator: source.label(),
        seed: args.seed,
        alpha: out.mis.alpha,
        mean_size: out.mean_size,
        ratio: out.ratio,
        mis_probability: out.mis_probability,
        runtime_ms: args.timing.then_some(runtime_ms),
    };

    let dir = &args.output.out;
    prepare_dir(dir)?;
    let mut outputs = Vec::new();
    match args.output.format {
        Format::Csv => {
            write_file(dir, "run.csv", &runs_csv([&record])?)?;
            outputs.push("run.csv");
        }
        Format::Json => {
            #[derive(Serialize)]
            struct RunJson<'a> {
                manifest: &'static str,
                record: &'a RunRecord,
                schedule: ScheduleEcho,
                dimension: usize,
                norm_drift: f64,
                doubling_delta: Option<f64>,
            }
            let body = RunJson {
                manifest: MANIFEST_FILE,
                record: &record,
                schedule: echo(&schedule),
                dimension: out.dimension,
                norm_drift: (out.final_norm - 1.0).abs(),
                doubling_delta,
            };
            write_file(dir, "run.json", &to_json(&body))?;
            outputs.push("run.json");
        }
    }
    if let Some(samples) = args.trajectory {
        let snaps = evolve_trajectory(&basis, &schedule, &initial_state(&basis), samples, &opts)?;
        write_file(dir, "trajectory.csv", &trajectory_csv(&snaps)?)?;
        outputs.push("trajectory.csv");
    }
    if args.dump_basis {
        write_file(dir, "basis.csv", &basis_csv(&basis)?)?;
        outputs.push("basis.csv");
    }
    #[derive(Serialize)]
    struct Resolved<'a> {
        arguments: &'a AnnealArgs,
        schedule: ScheduleEcho,
    }
    let resolved = Resolved {
        arguments: args,
        schedule: echo(&schedule),
    };
    write_manifest(dir, "anneal", graph_seeds(&source, args.seed), &resolved, &outputs)?;
    print!(
        "T={} steps={} dimension={} alpha={} mean_size={} ratio={} mis_probability={}",
        schedule.total_time(),
        schedule.steps(),
        out.dimension,
        out.mis.alpha,
        out.mean_size,
        out.ratio,
        out.mis_probability
    );
    match doubling_delta {
        Some(d) => println!(" doubling_delta={d:e}"),
        None => println!(),
    }
    Ok(())
}

fn cmd_ensemble(args: &EnsembleArgs) -> Result<(), CliError> {
    let source = args.source.resolve()?;
    let cfg = EnsembleConfig {
        source: source.clone(),
        count: args.count,
        master_seed: args.master_seed,
        schedule: args.schedule.spec(),
        parallelism: args.parallelism,
        basis_cap: args.basis_cap,
        check_doubling: args.check_doubling,
        timing: args.timing,
        evolve: EvolveOptions::default(),
    };
    let result = run_ensemble(&cfg)?;
    let dir = &args.output.out;
    prepare_dir(dir)?;
    let runs_file = match args.output.format {
        Format::Csv => {
            write_file(dir, "runs.csv", &runs_csv(result.records())?)?;
            "runs.csv"
        }
        Format::Json => {
            let records: Vec<&RunRecord> = result.records().collect();
            write_file(dir, "runs.json", &to_json(&records))?;
            "runs.json"
        }
    };

    #[derive(Serialize)]
    struct Summary<'a> {
        manifest: &'static str,
        generator: String,
        source: &'a GraphSource,
        total_time: Option<f64>,
        gamma: Option<f64>,
        omega_phi: f64,
        steps: Option<usize>,
        count: usize,
        master_seed: u64,
        completed: usize,
        skip_count: usize,
        skipped: &'a [crate::ensemble::SkippedMember],
        r_bar: Option<f64>,
        r_variance: Option<f64>,
        r_std_error: Option<f64>,
        max_norm_drift: f64,
        max_doubling_delta: Option<f64>,
    }
    let spec = cfg.schedule;
    let (total_time, gamma) = match spec.run_time {
        RunTime::Total(t) => (Some(t), None),
        RunTime::Exponent(g) => (None, Some(g)),
    };
    let summary = Summary {
        manifest: MANIFEST_FILE,
        generator: source.label(),
        source: &source,
        total_time,
        gamma,
        omega_phi: spec.omega_phi,
        steps: spec.steps,
        count: args.count,
        master_seed: args.master_seed,
        completed: result.runs.len(),
        skip_count: result.skipped.len(),
        skipped: &result.skipped,
        r_bar: result.stats.map(|s| s.mean),
        r_variance: result.stats.map(|s| s.variance),
        r_std_error: result.stats.map(|s| s.std_error),
        max_norm_drift: result.max_norm_drift(),
        max_doubling_delta: result.max_doubling_delta(),
    };
    write_file(dir, "summary.json", &to_json(&summary))?;
    let seeds = Seeds {
        graph: None,
        master: Some(args.master_seed),
        member_rule: Some("seed_i = split_seed(master_seed, i), the (i+1)-th SplitMix64 output"),
    };
    write_manifest(dir, "ensemble", seeds, args, &[runs_file, "summary.json"])?;
    match result.stats {
        Some(s) => println!(
            "completed={} skipped={} r_bar={} r_variance={:e} std_error={:e}",
            result.runs.len(),
            result.skipped.len(),
            s.mean,
            s.variance,
            s.std_error
        ),
        None => println!("completed=0 skipped={}", result.skipped.len()),
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Validate(a) => cmd_validate(a),
        Command::GapScan(a) => cmd_gap_scan(a),
        Command::Anneal(a) => cmd_anneal(a),
        Command::Ensemble(a) => cmd_ensemble(a),
    }
}

/// Parses arguments (after merging any config file), runs the command and
/// returns the process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = OsString>) -> i32 {
    let args = match merge_config_args(args.into_iter().collect()) {
        Ok(a) => a,
        Err(e) => return report(&e),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> i32 {
    eprintln!("error[{}]: {e}", e.code());
    e.exit_code()
}
