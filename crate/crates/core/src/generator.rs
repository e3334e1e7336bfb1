//! Static threshold-graph generation.
//!
//! Positions are drawn per vertex from counter-based random streams, sorted
//! into the slab index, and every vertex then scans its own slab and all
//! slabs further out. Each slab contributes only the angular window returned
//! by [`min_max_phi`], and every candidate in it gets an exact distance test.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{min_max_phi_cached, sample_angular, sample_radial, PolarPoint, RadialTerms, Threshold};
use crate::graph::{Edge, Graph};
use crate::params::{DiskParameters, RadiusSpec};
use crate::slab::{RadialBoundaries, SlabEntry, SlabIndex, DEFAULT_SLAB_RATIO};

/// Vertices per random stream. Fixed so positions do not depend on scheduling.
const POSITION_CHUNK: usize = 4096;
/// Vertices per unit of parallel scan work.
const SCAN_CHUNK: usize = 512;

// Widening of each candidate arc, covering rounding in the arc bound.
const ARC_RELATIVE_SLACK: f64 = 1e-9;
const ARC_ABSOLUTE_SLACK: f64 = 1e-12;

/// Tuning knobs shared by all generation entry points.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    /// Worker threads; 0 uses the ambient rayon pool.
    pub threads: usize,
    /// Width ratio of consecutive slabs.
    pub slab_ratio: f64,
    /// Overrides `ceil(log₂ n)` slabs.
    pub slab_count: Option<usize>,
    /// Refuse to materialize more than this many bytes of edges (estimated).
    pub max_edge_bytes: Option<u64>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            threads: 0,
            slab_ratio: DEFAULT_SLAB_RATIO,
            slab_count: None,
            max_edge_bytes: None,
        }
    }
}

impl GeneratorConfig {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads,
            ..Self::default()
        }
    }

    fn boundaries(&self, radius: f64, n: u64) -> Result<RadialBoundaries> {
        match self.slab_count {
            Some(count) => RadialBoundaries::with_count(radius, count, self.slab_ratio),
            None => RadialBoundaries::compute(radius, n, self.slab_ratio),
        }
    }
}

/// Runs `f` on a pool with `threads` workers, or inline when `threads == 0`.
pub(crate) fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Wall time spent in each phase.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTimings {
    pub calibration: Duration,
    pub positions: Duration,
    pub index: Duration,
    pub edges: Duration,
    pub assembly: Duration,
}

impl PhaseTimings {
    pub fn total(&self) -> Duration {
        self.calibration + self.positions + self.index + self.edges + self.assembly
    }
}

/// Output of a full generation run.
#[derive(Clone, Debug)]
pub struct Generation {
    pub graph: Graph,
    pub params: DiskParameters,
    pub timings: PhaseTimings,
}

/// Generator for one parameter set and seed.
#[derive(Clone, Debug)]
pub struct HyperbolicGenerator {
    params: DiskParameters,
    seed: u64,
    config: GeneratorConfig,
    calibration: Duration,
}

impl HyperbolicGenerator {
    /// Resolves the disk radius from `spec` (timed as the calibration phase).
    pub fn new(n: u64, gamma: f64, spec: RadiusSpec, seed: u64) -> Result<Self> {
        let start = Instant::now();
        let params = DiskParameters::new(n, gamma, spec)?;
        Ok(Self {
            calibration: start.elapsed(),
            ..Self::from_params(params, seed)
        })
    }

    pub fn from_params(params: DiskParameters, seed: u64) -> Self {
        Self {
            params,
            seed,
            config: GeneratorConfig::default(),
            calibration: Duration::ZERO,
        }
    }

    pub fn with_config(mut self, config: GeneratorConfig) -> Self {
        self.config = config;
        self
    }

    pub fn params(&self) -> &DiskParameters {
        &self.params
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.config
    }

    fn check_vertex_count(&self) -> Result<usize> {
        let n = self.params.n();
        if n > u32::MAX as u64 {
            return Err(Error::InvalidParameter(format!(
                "at most {} vertices supported, got {n}",
                u32::MAX
            )));
        }
        Ok(n as usize)
    }

    fn check_memory(&self) -> Result<()> {
        if let Some(cap) = self.config.max_edge_bytes {
            let expected_edges = self.params.k_bar().max(0.0) * self.params.n() as f64 / 2.0;
            let estimated = (expected_edges * std::mem::size_of::<Edge>() as f64).ceil() as u64;
            if estimated > cap {
                return Err(Error::MemoryCap { estimated, cap });
            }
        }
        Ok(())
    }

    fn prepare(&self, timings: &mut PhaseTimings) -> Result<(Vec<PolarPoint>, SlabIndex)> {
        let n = self.check_vertex_count()?;
        let (alpha, radius) = (self.params.alpha(), self.params.radius());
        let start = Instant::now();
        let positions = sample_positions(n, alpha, radius, self.seed);
        timings.positions = start.elapsed();
        let start = Instant::now();
        let index = SlabIndex::from_positions(&positions, self.config.boundaries(radius, n as u64)?)?;
        timings.index = start.elapsed();
        Ok((positions, index))
    }

    /// Generates positions and the full edge set.
    pub fn run(&self) -> Result<Generation> {
        self.check_memory()?;
        in_pool(self.config.threads, || {
            let mut timings = PhaseTimings {
                calibration: self.calibration,
                ..PhaseTimings::default()
            };
            let (positions, index) = self.prepare(&mut timings)?;
            let radius = self.params.radius();
            let scanner = EdgeScanner::new(&positions, &index, radius);
            let start = Instant::now();
            let chunks = scanner.edge_chunks();
            timings.edges = start.elapsed();
            let start = Instant::now();
            let edges = concat(chunks);
            let graph = Graph::from_parts(positions, edges, radius);
            timings.assembly = start.elapsed();
            Ok(Generation {
                graph,
                params: self.params,
                timings,
            })
        })
    }

    /// Edge-stream mode: runs the full scan but only counts edges.
    pub fn count_edges(&self) -> Result<(u64, PhaseTimings)> {
        in_pool(self.config.threads, || {
            let mut timings = PhaseTimings {
                calibration: self.calibration,
                ..PhaseTimings::default()
            };
            let (positions, index) = self.prepare(&mut timings)?;
            let scanner = EdgeScanner::new(&positions, &index, self.params.radius());
            let start = Instant::now();
            let m = scanner.count();
            timings.edges = start.elapsed();
            Ok((m, timings))
        })
    }

    /// Edge-stream mode: calls `sink(u, v)` once per edge from worker threads,
    /// without assembling a graph. Returns the positions.
    pub fn for_each_edge<F>(&self, sink: F) -> Result<Vec<PolarPoint>>
    where
        F: Fn(u32, u32) + Sync + Send,
    {
        in_pool(self.config.threads, || {
            let mut timings = PhaseTimings::default();
            let (positions, index) = self.prepare(&mut timings)?;
            EdgeScanner::new(&positions, &index, self.params.radius()).for_each_edge(sink);
            Ok(positions)
        })
    }
}

/// Threshold graph with `n` vertices, target average degree `k_bar` and
/// power-law exponent `gamma`.
pub fn generate(n: u64, k_bar: f64, gamma: f64, seed: u64, threads: usize) -> Result<Graph> {
    let generator = HyperbolicGenerator::new(n, gamma, RadiusSpec::AvgDegree(k_bar), seed)?
        .with_config(GeneratorConfig::with_threads(threads));
    Ok(generator.run()?.graph)
}

/// Threshold graph on a disk of the given radius, skipping calibration.
pub fn generate_with_radius(n: u64, radius: f64, alpha: f64, seed: u64, threads: usize) -> Result<Graph> {
    let params = DiskParameters::with_alpha(n, alpha, RadiusSpec::Radius(radius))?;
    let generator = HyperbolicGenerator::from_params(params, seed)
        .with_config(GeneratorConfig::with_threads(threads));
    Ok(generator.run()?.graph)
}

/// `n` i.i.d. positions. Bit-identical for a given seed at any thread count.
pub fn generate_positions(n: usize, alpha: f64, radius: f64, seed: u64, threads: usize) -> Vec<PolarPoint> {
    in_pool(threads, || sample_positions(n, alpha, radius, seed))
}

fn sample_positions(n: usize, alpha: f64, radius: f64, seed: u64) -> Vec<PolarPoint> {
    let mut positions = vec![PolarPoint::new(0.0, 0.0); n];
    positions
        .par_chunks_mut(POSITION_CHUNK)
        .enumerate()
        .for_each(|(chunk, out)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            for p in out {
                let phi = sample_angular(&mut rng);
                let r = sample_radial(alpha, radius, &mut rng);
                *p = PolarPoint::new(phi, r);
            }
        });
    positions
}

/// Threshold graph on caller-supplied positions.
pub fn threshold_graph(positions: Vec<PolarPoint>, radius: f64, config: &GeneratorConfig) -> Result<Graph> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "disk radius must be finite and > 0, got {radius}"
        )));
    }
    if positions.len() > u32::MAX as usize {
        return Err(Error::InvalidParameter("too many vertices".into()));
    }
    in_pool(config.threads, || {
        let index = SlabIndex::from_positions(&positions, config.boundaries(radius, positions.len() as u64)?)?;
        let edges = concat(EdgeScanner::new(&positions, &index, radius).edge_chunks());
        Ok(Graph::from_parts(positions, edges, radius))
    })
}

fn concat(chunks: Vec<Vec<Edge>>) -> Vec<Edge> {
    let total = chunks.iter().map(Vec::len).sum();
    let mut edges = Vec::with_capacity(total);
    for c in chunks {
        edges.extend_from_slice(&c);
    }
    edges
}

/// Neighborhood queries against a built index.
pub(crate) struct EdgeScanner<'a> {
    positions: &'a [PolarPoint],
    index: &'a SlabIndex,
    threshold: Threshold,
    disk: RadialTerms,
    inner: Vec<RadialTerms>,
}

impl<'a> EdgeScanner<'a> {
    pub(crate) fn new(positions: &'a [PolarPoint], index: &'a SlabIndex, radius: f64) -> Self {
        let boundaries = index.boundaries();
        let inner = (0..boundaries.slab_count())
            .map(|j| RadialTerms::new(boundaries.inner(j)))
            .collect();
        Self {
            positions,
            index,
            threshold: Threshold::new(radius),
            disk: RadialTerms::new(radius),
            inner,
        }
    }

    /// Scans slabs from `first` outward for neighbors of `v`. In slab `own`
    /// only larger ids are reported.
    fn scan<F: FnMut(u32)>(&self, v: &SlabEntry, first: usize, own: usize, mut emit: F) {
        let terms = v.prepared.radial_terms(v.point.r);
        for j in first..self.index.slabs().len() {
            let slab = self.index.slab(j);
            if slab.is_empty() {
                continue;
            }
            let range = min_max_phi_cached(v.point.phi, &terms, &self.inner[j], &self.disk)
                .widened(ARC_RELATIVE_SLACK, ARC_ABSOLUTE_SLACK);
            let entries = slab.entries();
            for run in slab.candidate_ranges(range) {
                for e in &entries[run] {
                    if e.id == v.id || (j == own && e.id < v.id) {
                        continue;
                    }
                    if self.threshold.connects(&v.prepared, &e.prepared) {
                        emit(e.id);
                    }
                }
            }
        }
    }

    /// Each edge is reported by exactly one endpoint. `own` is the slab
    /// holding `v`.
    fn outward<F: FnMut(u32)>(&self, v: &SlabEntry, own: usize, emit: F) {
        self.scan(v, own, own, emit);
    }

    /// Every neighbor of `v`, in no particular order.
    pub(crate) fn all_neighbors<F: FnMut(u32)>(&self, v: usize, emit: F) {
        let entry = SlabEntry::new(v as u32, self.positions[v]);
        self.scan(&entry, 0, usize::MAX, emit);
    }

    /// Work units in index order: by slab, then by angle. Consecutive queries
    /// touch neighbouring index entries.
    fn work_chunks(&self) -> Vec<(usize, &'a [SlabEntry])> {
        self.index
            .slabs()
            .iter()
            .flat_map(|slab| slab.entries().chunks(SCAN_CHUNK).map(move |c| (slab.index(), c)))
            .collect()
    }

    fn edge_chunks(&self) -> Vec<Vec<Edge>> {
        self.work_chunks()
            .into_par_iter()
            .map(|(own, chunk)| {
                let mut out = Vec::new();
                for v in chunk {
                    self.outward(v, own, |w| out.push(if v.id < w { (v.id, w) } else { (w, v.id) }));
                }
                out
            })
            .collect()
    }

    fn count(&self) -> u64 {
        self.work_chunks()
            .into_par_iter()
            .map(|(own, chunk)| {
                let mut m = 0u64;
                for v in chunk {
                    self.outward(v, own, |_| m += 1);
                }
                m
            })
            .sum()
    }

    fn for_each_edge<F: Fn(u32, u32) + Sync>(&self, sink: F) {
        self.work_chunks().into_par_iter().for_each(|(own, chunk)| {
            for v in chunk {
                self.outward(v, own, |w| sink(v.id, w));
            }
        });
    }
}
