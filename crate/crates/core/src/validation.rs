//! Ensemble comparison between the slab generator and the quadratic oracle,
//! and timing sweeps with complexity fits.

use std::fmt::Write as _;

use crate::analysis::{MetricReport, DEFAULT_K_MIN};
use crate::error::Result;
use crate::generator::{generate_positions, in_pool, GeneratorConfig, HyperbolicGenerator, PhaseTimings};
use crate::oracle::generate_quadratic;
use crate::params::{DiskParameters, RadiusSpec};
use crate::stats::{least_squares, standardized_difference, LinearFit, Summary};

// offsets the oracle's seeds so both ensembles are independent samples
const ORACLE_SEED_OFFSET: u64 = 0x5DEE_CE66_D1CE_4E5B;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Implementation {
    Slab,
    Oracle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleConfig {
    pub n: u64,
    pub k_bar: f64,
    pub gamma: f64,
    pub runs: usize,
    pub seed: u64,
    pub threads: usize,
    pub k_min: usize,
}

impl EnsembleConfig {
    pub fn new(n: u64, k_bar: f64, gamma: f64, runs: usize, seed: u64) -> Self {
        Self {
            n,
            k_bar,
            gamma,
            runs,
            seed,
            threads: 0,
            k_min: DEFAULT_K_MIN,
        }
    }
}

/// Metric reports of `config.runs` independent graphs.
pub fn sample_ensemble(config: &EnsembleConfig, which: Implementation) -> Result<Vec<MetricReport>> {
    let params = DiskParameters::new(config.n, config.gamma, RadiusSpec::AvgDegree(config.k_bar))?;
    in_pool(config.threads, || {
        (0..config.runs as u64)
            .map(|run| {
                let graph = match which {
                    Implementation::Slab => {
                        HyperbolicGenerator::from_params(params, config.seed.wrapping_add(run))
                            .run()?
                            .graph
                    }
                    Implementation::Oracle => {
                        let seed = config.seed.wrapping_add(ORACLE_SEED_OFFSET).wrapping_add(run);
                        let positions =
                            generate_positions(config.n as usize, params.alpha(), params.radius(), seed, 0);
                        generate_quadratic(&positions, params.radius())?
                    }
                };
                Ok(MetricReport::compute(&graph.adjacency(), config.k_min))
            })
            .collect()
    })
}

/// One metric across both ensembles.
#[derive(Clone, Debug)]
pub struct MetricComparison {
    pub name: &'static str,
    pub slab: Summary,
    pub oracle: Summary,
    /// |mean difference| / combined standard error.
    pub z: f64,
}

#[derive(Clone, Debug)]
pub struct EnsembleComparison {
    pub metrics: Vec<MetricComparison>,
}

impl EnsembleComparison {
    pub fn from_reports(slab: &[MetricReport], oracle: &[MetricReport]) -> Self {
        type Getter = fn(&MetricReport) -> f64;
        let getters: [(&'static str, Getter); 6] = [
            ("avg_deg", |r| r.avg_deg),
            ("cc", |r| r.cc),
            ("assort", |r| r.assort),
            ("degeneracy", |r| r.degeneracy as f64),
            ("lcc_size", |r| r.lcc_size as f64),
            ("lcc_diam", |r| r.lcc_diam as f64),
        ];
        let metrics = getters
            .iter()
            .map(|&(name, get)| {
                let a = Summary::of(&slab.iter().map(get).collect::<Vec<_>>());
                let b = Summary::of(&oracle.iter().map(get).collect::<Vec<_>>());
                MetricComparison {
                    name,
                    slab: a,
                    oracle: b,
                    z: standardized_difference(&a, &b),
                }
            })
            .collect();
        Self { metrics }
    }

    pub fn get(&self, name: &str) -> Option<&MetricComparison> {
        self.metrics.iter().find(|m| m.name == name)
    }

    /// `key=value` lines: `<metric>.slab_mean`, `.slab_se`, `.oracle_mean`,
    /// `.oracle_se`, `.z`.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        for m in &self.metrics {
            let _ = writeln!(s, "{}.slab_mean={}", m.name, m.slab.mean);
            let _ = writeln!(s, "{}.slab_se={}", m.name, m.slab.std_error());
            let _ = writeln!(s, "{}.oracle_mean={}", m.name, m.oracle.mean);
            let _ = writeln!(s, "{}.oracle_se={}", m.name, m.oracle.std_error());
            let _ = writeln!(s, "{}.z={}", m.name, m.z);
        }
        s
    }
}

/// Runs both ensembles and compares them metric by metric.
pub fn compare_ensembles(config: &EnsembleConfig) -> Result<EnsembleComparison> {
    let slab = sample_ensemble(config, Implementation::Slab)?;
    let oracle = sample_ensemble(config, Implementation::Oracle)?;
    Ok(EnsembleComparison::from_reports(&slab, &oracle))
}

/// Timing of one generation run.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: u64,
    pub k_bar: f64,
    pub m: u64,
    pub threads: usize,
    pub timings: PhaseTimings,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str =
        "n,k_bar,m,threads,calibration_s,positions_s,index_s,edges_s,assembly_s,total_s";

    pub fn to_csv_row(&self) -> String {
        let t = &self.timings;
        format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            self.n,
            self.k_bar,
            self.m,
            self.threads,
            t.calibration.as_secs_f64(),
            t.positions.as_secs_f64(),
            t.index.as_secs_f64(),
            t.edges.as_secs_f64(),
            t.assembly.as_secs_f64(),
            t.total().as_secs_f64()
        )
    }
}

/// Times one full generation.
pub fn bench_point(n: u64, k_bar: f64, gamma: f64, seed: u64, threads: usize) -> Result<BenchRow> {
    let generator = HyperbolicGenerator::new(n, gamma, RadiusSpec::AvgDegree(k_bar), seed)?
        .with_config(GeneratorConfig::with_threads(threads));
    let generation = generator.run()?;
    Ok(BenchRow {
        n,
        k_bar,
        m: generation.graph.m() as u64,
        threads,
        timings: generation.timings,
    })
}

/// Times every `(n, k̄)` combination `reps` times. The whole grid is swept
/// once per repetition so slow periods spread over all points.
pub fn bench_grid(
    sizes: &[u64],
    degrees: &[f64],
    gamma: f64,
    reps: usize,
    seed: u64,
    threads: usize,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for rep in 0..reps as u64 {
        for &n in sizes {
            for &k in degrees {
                rows.push(bench_point(n, k, gamma, seed.wrapping_add(rep), threads)?);
            }
        }
    }
    Ok(rows)
}

/// Keeps the fastest repetition of every `(n, k̄, threads)` point, in first-seen order.
pub fn best_of_reps(rows: &[BenchRow]) -> Vec<BenchRow> {
    let mut best: Vec<BenchRow> = Vec::new();
    for row in rows {
        match best
            .iter_mut()
            .find(|b| b.n == row.n && b.k_bar == row.k_bar && b.threads == row.threads)
        {
            Some(b) if row.timings.total() < b.timings.total() => *b = row.clone(),
            Some(_) => {}
            None => best.push(row.clone()),
        }
    }
    best
}

/// Competing running-time models over the same measurements.
#[derive(Clone, Debug)]
pub struct ComplexityFit {
    /// `T = a·n·ln n + b·m + c`
    pub n_log_n_plus_m: LinearFit,
    /// `T = a·n² + b·n + c`
    pub quadratic: LinearFit,
}

pub fn fit_complexity(rows: &[BenchRow]) -> Option<ComplexityFit> {
    let y: Vec<f64> = rows.iter().map(|r| r.timings.total().as_secs_f64()).collect();
    let linear: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let n = r.n as f64;
            vec![n * n.ln(), r.m as f64, 1.0]
        })
        .collect();
    let quad: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let n = r.n as f64;
            vec![n * n, n, 1.0]
        })
        .collect();
    Some(ComplexityFit {
        n_log_n_plus_m: least_squares(&linear, &y)?,
        quadratic: least_squares(&quad, &y)?,
    })
}
