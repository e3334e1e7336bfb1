//! `hypergen` command-line front end.
//!
//! Exit codes: 0 success, 2 flag or parameter error, 3 calibration failure,
//! 4 I/O error.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{MetricReport, DEFAULT_K_MIN};
use crate::dynamics::{DynamicGraph, MovementState, DEFAULT_TAU_PHI_RANGE, DEFAULT_TAU_R_RANGE};
use crate::error::{Error, Result};
use crate::generator::{GeneratorConfig, HyperbolicGenerator};
use crate::io::{write_coords, write_delta, write_edges, EdgeFormat};
use crate::params::{DiskParameters, RadiusSpec};
use crate::slab::DEFAULT_SLAB_RATIO;
use crate::validation::{
    bench_grid, best_of_reps, fit_complexity, sample_ensemble, BenchRow, EnsembleComparison, EnsembleConfig, Implementation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CALIBRATION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hypergen", version, about = "Threshold random hyperbolic graph generator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a static graph.
    Generate(GenerateArgs),
    /// Generate a graph and move its vertices for a number of steps.
    Dynamic(DynamicArgs),
    /// Compare metric ensembles of the slab generator and the quadratic oracle.
    Validate(ValidateArgs),
    /// Time generation over a grid of sizes and degrees.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("density").required(true).args(["avg_degree", "disk_constant", "radius"])))]
pub struct ModelArgs {
    /// Number of vertices.
    #[arg(short = 'n', long = "nodes")]
    pub nodes: u64,
    /// Target average degree.
    #[arg(short = 'k', long = "avg-degree")]
    pub avg_degree: Option<f64>,
    /// C in R = 2 ln n + C.
    #[arg(long = "disk-constant", allow_hyphen_values = true)]
    pub disk_constant: Option<f64>,
    /// Disk radius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Power-law exponent.
    #[arg(short = 'g', long, conflicts_with = "alpha")]
    pub gamma: Option<f64>,
    /// Radial dispersion, alternative to --gamma.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "HYPERGEN_THREADS", default_value_t = 0)]
    pub threads: usize,
    #[arg(long = "slab-ratio", default_value_t = DEFAULT_SLAB_RATIO)]
    pub slab_ratio: f64,
    #[arg(long = "slab-count")]
    pub slab_count: Option<usize>,
    /// Refuse runs whose edge list would exceed this many MiB.
    #[arg(long = "max-edge-memory-mb")]
    pub max_edge_memory_mb: Option<u64>,
}

impl ModelArgs {
    fn spec(&self) -> RadiusSpec {
        match (self.avg_degree, self.disk_constant, self.radius) {
            (Some(k), _, _) => RadiusSpec::AvgDegree(k),
            (_, Some(c), _) => RadiusSpec::DiskConstant(c),
            (_, _, Some(r)) => RadiusSpec::Radius(r),
            _ => unreachable!("clap enforces the density group"),
        }
    }

    fn params(&self) -> Result<DiskParameters> {
        match self.alpha {
            Some(alpha) => DiskParameters::with_alpha(self.nodes, alpha, self.spec()),
            None => DiskParameters::new(self.nodes, self.gamma.unwrap_or(3.0), self.spec()),
        }
    }

    fn config(&self) -> GeneratorConfig {
        GeneratorConfig {
            threads: self.threads,
            slab_ratio: self.slab_ratio,
            slab_count: self.slab_count,
            max_edge_bytes: self.max_edge_memory_mb.map(|mb| mb << 20),
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Edge output file.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    /// Coordinate output file.
    #[arg(long = "coords-out")]
    pub coords_out: Option<PathBuf>,
    /// Edge file format: el or csv.
    #[arg(long, default_value = "el")]
    pub format: EdgeFormat,
    /// Sort edges before writing.
    #[arg(long)]
    pub canonical: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DynamicArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, default_value_t = 10)]
    pub steps: u64,
    /// Fraction of vertices moved per step.
    #[arg(long = "move-fraction", default_value_t = 1.0)]
    pub move_fraction: f64,
    /// Angular step range "lo,hi".
    #[arg(long = "tau-phi-range", value_parser = parse_range, allow_hyphen_values = true)]
    pub tau_phi_range: Option<(f64, f64)>,
    /// Radial step range "lo,hi".
    #[arg(long = "tau-r-range", value_parser = parse_range, allow_hyphen_values = true)]
    pub tau_r_range: Option<(f64, f64)>,
    /// Per-step edge changes, lines "step +|- u v".
    #[arg(long = "delta-log")]
    pub delta_log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(short = 'n', long = "nodes", default_value_t = 10_000)]
    pub nodes: u64,
    #[arg(short = 'k', long = "avg-degree", default_value_t = 6.0)]
    pub avg_degree: f64,
    #[arg(short = 'g', long, default_value_t = 3.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 100)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "HYPERGEN_THREADS", default_value_t = 0)]
    pub threads: usize,
    #[arg(long = "k-min", default_value_t = DEFAULT_K_MIN)]
    pub k_min: usize,
    /// Largest accepted standardized mean difference.
    #[arg(long = "max-z", default_value_t = 3.0)]
    pub max_z: f64,
    /// Per-run metric rows, tagged by implementation.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = vec![10_000u64, 100_000, 1_000_000])]
    pub sizes: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![2.0f64, 8.0, 32.0])]
    pub degrees: Vec<f64>,
    #[arg(short = 'g', long, default_value_t = 3.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "HYPERGEN_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// CSV output file (stdout when omitted).
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected \"lo,hi\", got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if !(lo < hi) {
        return Err(format!("empty range {lo},{hi}"));
    }
    Ok((lo, hi))
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Calibration { .. } => EXIT_CALIBRATION,
        Error::Io(_) | Error::Parse { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T, O, E>(args: I, stdout: &mut O, stderr: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(&a, stdout),
        Command::Dynamic(a) => cmd_dynamic(&a, stdout),
        Command::Validate(a) => cmd_validate(&a, stdout),
        Command::Bench(a) => cmd_bench(&a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn cmd_generate<O: Write>(args: &GenerateArgs, stdout: &mut O) -> Result<()> {
    let start = Instant::now();
    let params = args.model.params()?;
    let calibration = start.elapsed();
    let generation = HyperbolicGenerator::from_params(params, args.model.seed)
        .with_config(args.model.config())
        .run()?;
    let graph = &generation.graph;
    let start = Instant::now();
    if let Some(path) = &args.out.output {
        write_edges(create(path)?, graph.edges(), args.out.format, args.out.canonical)?;
    }
    if let Some(path) = &args.out.coords_out {
        write_coords(create(path)?, graph.coords())?;
    }
    let write_time = start.elapsed();
    let t = &generation.timings;
    writeln!(stdout, "n={}", graph.n())?;
    writeln!(stdout, "m={}", graph.m())?;
    writeln!(stdout, "R={}", params.radius())?;
    writeln!(stdout, "alpha={}", params.alpha())?;
    writeln!(stdout, "gamma={}", params.gamma())?;
    writeln!(stdout, "k_bar={}", params.k_bar())?;
    writeln!(stdout, "avg_deg={}", 2.0 * graph.m() as f64 / graph.n().max(1) as f64)?;
    writeln!(stdout, "t_calibration_s={:.6}", calibration.as_secs_f64())?;
    writeln!(stdout, "t_positions_s={:.6}", t.positions.as_secs_f64())?;
    writeln!(stdout, "t_index_s={:.6}", t.index.as_secs_f64())?;
    writeln!(stdout, "t_edges_s={:.6}", t.edges.as_secs_f64())?;
    writeln!(stdout, "t_assembly_s={:.6}", t.assembly.as_secs_f64())?;
    writeln!(stdout, "t_write_s={:.6}", write_time.as_secs_f64())?;
    Ok(())
}

fn cmd_dynamic<O: Write>(args: &DynamicArgs, stdout: &mut O) -> Result<()> {
    let params = args.model.params()?;
    let generation = HyperbolicGenerator::from_params(params, args.model.seed)
        .with_config(args.model.config())
        .run()?;
    let n = generation.graph.n();
    let movement = MovementState::sample(
        n,
        args.tau_phi_range.unwrap_or(DEFAULT_TAU_PHI_RANGE),
        args.tau_r_range.unwrap_or(DEFAULT_TAU_R_RANGE),
        args.model.seed.wrapping_add(1),
    )?;
    let mut dynamic = DynamicGraph::new(generation.graph, params.alpha(), movement)?
        .with_move_fraction(args.move_fraction, args.model.seed.wrapping_add(2))?
        .with_threads(args.model.threads);
    let mut log = match &args.delta_log {
        Some(path) => Some(create(path)?),
        None => None,
    };
    let start = Instant::now();
    let (mut inserted, mut deleted) = (0usize, 0usize);
    for step in 1..=args.steps {
        let delta = dynamic.move_step()?;
        inserted += delta.inserted.len();
        deleted += delta.deleted.len();
        if let Some(w) = log.as_mut() {
            write_delta(w, step, &delta)?;
        }
    }
    if let Some(mut w) = log {
        w.flush()?;
    }
    let elapsed = start.elapsed();
    if let Some(path) = &args.out.output {
        write_edges(create(path)?, &dynamic.edges(), args.out.format, args.out.canonical)?;
    }
    if let Some(path) = &args.out.coords_out {
        write_coords(create(path)?, dynamic.positions())?;
    }
    writeln!(stdout, "n={n}")?;
    writeln!(stdout, "m={}", dynamic.m())?;
    writeln!(stdout, "R={}", dynamic.radius())?;
    writeln!(stdout, "steps={}", args.steps)?;
    writeln!(stdout, "edges_inserted={inserted}")?;
    writeln!(stdout, "edges_deleted={deleted}")?;
    writeln!(stdout, "t_steps_s={:.6}", elapsed.as_secs_f64())?;
    Ok(())
}

fn cmd_validate<O: Write>(args: &ValidateArgs, stdout: &mut O) -> Result<()> {
    let config = EnsembleConfig {
        threads: args.threads,
        k_min: args.k_min,
        ..EnsembleConfig::new(args.nodes, args.avg_degree, args.gamma, args.runs, args.seed)
    };
    let slab = sample_ensemble(&config, Implementation::Slab)?;
    let oracle = sample_ensemble(&config, Implementation::Oracle)?;
    if let Some(path) = &args.csv {
        let mut w = create(path)?;
        writeln!(w, "implementation,{}", MetricReport::CSV_HEADER)?;
        for r in &slab {
            writeln!(w, "slab,{}", r.to_csv_row())?;
        }
        for r in &oracle {
            writeln!(w, "oracle,{}", r.to_csv_row())?;
        }
        w.flush()?;
    }
    let cmp = EnsembleComparison::from_reports(&slab, &oracle);
    write!(stdout, "{}", cmp.to_key_value())?;
    let pass = cmp.metrics.iter().all(|m| m.z < args.max_z);
    writeln!(stdout, "verdict={}", if pass { "pass" } else { "fail" })?;
    Ok(())
}

fn cmd_bench<O: Write>(args: &BenchArgs, stdout: &mut O) -> Result<()> {
    let rows = bench_grid(&args.sizes, &args.degrees, args.gamma, args.reps, args.seed, args.threads)?;
    let mut text = String::new();
    text.push_str(BenchRow::CSV_HEADER);
    text.push('\n');
    for r in &rows {
        text.push_str(&r.to_csv_row());
        text.push('\n');
    }
    match &args.output {
        Some(path) => {
            let mut w = create(path)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    if let Some(fit) = fit_complexity(&best_of_reps(&rows)) {
        let c = &fit.n_log_n_plus_m.coefficients;
        writeln!(stdout, "# fit T = a*n*ln(n) + b*m + c: a={:e} b={:e} c={:e} r2={:.6}", c[0], c[1], c[2], fit.n_log_n_plus_m.r_squared)?;
        let q = &fit.quadratic.coefficients;
        writeln!(stdout, "# fit T = a*n^2 + b*n + c: a={:e} b={:e} c={:e} r2={:.6}", q[0], q[1], q[2], fit.quadratic.r_squared)?;
    }
    Ok(())
}
