//! Directed node movement that keeps the stationary position distribution.
//!
//! Every vertex carries an angular step and a radial step. A movement step
//! rotates the vertex and shifts it in the space `x = sinh(αr)`, where the
//! radial density is (nearly) flat, folding back at `0` and `sinh(αR)` with
//! the radial step reversed on each fold. After the positions change the slab
//! index is patched and only moved vertices have their neighborhoods
//! recomputed.

use std::f64::consts::TAU;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generator::EdgeScanner;
use crate::geometry::PolarPoint;
use crate::graph::{edge, Edge, Graph};
use crate::slab::{angle_key, RadialBoundaries, SlabIndex, DEFAULT_SLAB_RATIO};

/// Default angular step range.
pub const DEFAULT_TAU_PHI_RANGE: (f64, f64) = (-1.0, 1.0);
/// Default radial step range (in `sinh(αr)` units).
pub const DEFAULT_TAU_R_RANGE: (f64, f64) = (-10.0, 1.0);

/// `(φ + τ_φ) mod 2π`.
pub fn rotate_step(phi: f64, tau_phi: f64) -> f64 {
    let out = (phi + tau_phi).rem_euclid(TAU);
    if out >= TAU {
        0.0
    } else {
        out
    }
}

/// One radial move. Returns the new radius and the (possibly reversed) step.
///
/// The move happens in `x = sinh(αr)` on the interval `[0, sinh(αR)]`. Moves
/// that leave the interval are folded back by reflection, as often as needed,
/// and the step changes sign once per fold.
pub fn radial_step(r: f64, tau_r: f64, radius: f64, alpha: f64) -> (f64, f64) {
    if tau_r == 0.0 {
        return (r, tau_r);
    }
    let limit = (alpha * radius).sinh();
    let y = (r * alpha).sinh() + tau_r;
    // reflect at the origin first, which is exact, then fold at the rim
    let (mut z, mut flips) = if y < 0.0 { (-y, 1.0) } else { (y, 0.0) };
    if z > limit {
        flips += (z / limit).floor();
        let t = z.rem_euclid(2.0 * limit);
        z = if t <= limit { t } else { 2.0 * limit - t };
    }
    let x = z;
    let tau = if flips.rem_euclid(2.0) == 1.0 { -tau_r } else { tau_r };
    ((x.asinh() / alpha).clamp(0.0, radius), tau)
}

/// Per-vertex step values.
#[derive(Clone, Debug, PartialEq)]
pub struct MovementState {
    tau_phi: Vec<f64>,
    tau_r: Vec<f64>,
}

impl MovementState {
    pub fn new(tau_phi: Vec<f64>, tau_r: Vec<f64>) -> Result<Self> {
        if tau_phi.len() != tau_r.len() {
            return Err(Error::InvalidParameter(format!(
                "{} angular steps but {} radial steps",
                tau_phi.len(),
                tau_r.len()
            )));
        }
        if tau_phi.iter().chain(&tau_r).any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("step values must be finite".into()));
        }
        Ok(Self { tau_phi, tau_r })
    }

    /// Steps drawn uniformly from the given open ranges.
    pub fn sample(n: usize, tau_phi: (f64, f64), tau_r: (f64, f64), seed: u64) -> Result<Self> {
        for (lo, hi) in [tau_phi, tau_r] {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidParameter(format!("bad step range ({lo}, {hi})")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = (0..n).map(|_| rng.gen_range(tau_phi.0..tau_phi.1)).collect();
        let r = (0..n).map(|_| rng.gen_range(tau_r.0..tau_r.1)).collect();
        Self::new(phi, r)
    }

    /// Steps from the default ranges `τ_φ ∈ (−1, 1)`, `τ_r ∈ (−10, 1)`.
    pub fn with_default_ranges(n: usize, seed: u64) -> Self {
        Self::sample(n, DEFAULT_TAU_PHI_RANGE, DEFAULT_TAU_R_RANGE, seed)
            .expect("default ranges are valid")
    }

    pub fn len(&self) -> usize {
        self.tau_phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau_phi.is_empty()
    }

    pub fn tau_phi(&self) -> &[f64] {
        &self.tau_phi
    }

    pub fn tau_r(&self) -> &[f64] {
        &self.tau_r
    }
}

/// Edges gained and lost in one step, each sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeDelta {
    pub inserted: Vec<Edge>,
    pub deleted: Vec<Edge>,
}

impl EdgeDelta {
    pub fn is_empty(&self) -> bool {
        self.inserted.is_empty() && self.deleted.is_empty()
    }
}

/// Threshold graph that can be moved one step at a time.
#[derive(Clone, Debug)]
pub struct DynamicGraph {
    radius: f64,
    alpha: f64,
    positions: Vec<PolarPoint>,
    movement: MovementState,
    index: SlabIndex,
    adjacency: Vec<Vec<u32>>,
    move_fraction: f64,
    seed: u64,
    step: u64,
    threads: usize,
}

impl DynamicGraph {
    /// Takes over a threshold graph built with dispersion `alpha`.
    pub fn new(graph: Graph, alpha: f64, movement: MovementState) -> Result<Self> {
        let (positions, edges, radius) = graph.into_parts();
        if movement.len() != positions.len() {
            return Err(Error::InvalidParameter(format!(
                "movement state has {} entries for {} vertices",
                movement.len(),
                positions.len()
            )));
        }
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("dispersion must be > 0, got {alpha}")));
        }
        let boundaries = RadialBoundaries::compute(radius, positions.len() as u64, DEFAULT_SLAB_RATIO)?;
        let index = SlabIndex::from_positions(&positions, boundaries)?;
        let mut adjacency = vec![Vec::new(); positions.len()];
        for &(u, v) in &edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        adjacency.par_iter_mut().for_each(|a| a.sort_unstable());
        Ok(Self {
            radius,
            alpha,
            positions,
            movement,
            index,
            adjacency,
            move_fraction: 1.0,
            seed: 0,
            step: 0,
            threads: 0,
        })
    }

    /// Fraction of vertices moved by [`DynamicGraph::move_step`]; the subset is
    /// redrawn each step from `seed`.
    pub fn with_move_fraction(mut self, fraction: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::InvalidParameter(format!(
                "move fraction must lie in [0, 1], got {fraction}"
            )));
        }
        self.move_fraction = fraction;
        self.seed = seed;
        Ok(self)
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn m(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn positions(&self) -> &[PolarPoint] {
        &self.positions
    }

    pub fn movement(&self) -> &MovementState {
        &self.movement
    }

    pub fn steps_taken(&self) -> u64 {
        self.step
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    /// Current edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v as usize > u).map(|&v| (u as u32, v)));
        }
        out
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_parts(self.positions.clone(), self.edges(), self.radius)
    }

    /// Moves the configured fraction of vertices by one step.
    pub fn move_step(&mut self) -> Result<EdgeDelta> {
        let n = self.n();
        let count = (self.move_fraction * n as f64).round() as usize;
        let movers: Vec<u32> = if count >= n {
            (0..n as u32).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(self.step);
            let mut picked: Vec<u32> = sample(&mut rng, n, count).into_iter().map(|i| i as u32).collect();
            picked.sort_unstable();
            picked
        };
        self.move_vertices(&movers)
    }

    /// Moves exactly the listed vertices by one step.
    pub fn move_vertices(&mut self, movers: &[u32]) -> Result<EdgeDelta> {
        let threads = self.threads;
        crate::generator::in_pool(threads, || self.apply_moves(movers))
    }

    fn apply_moves(&mut self, movers: &[u32]) -> Result<EdgeDelta> {
        self.step += 1;
        let n = self.n();
        let mut movers = movers.to_vec();
        movers.sort_unstable();
        movers.dedup();
        if let Some(&bad) = movers.iter().find(|&&v| v as usize >= n) {
            return Err(Error::InvalidParameter(format!("vertex {bad} out of range")));
        }
        if movers.is_empty() {
            return Ok(EdgeDelta::default());
        }

        let (radius, alpha) = (self.radius, self.alpha);
        let updates: Vec<(PolarPoint, f64)> = movers
            .par_iter()
            .map(|&v| {
                let v = v as usize;
                let p = self.positions[v];
                let phi = rotate_step(p.phi, self.movement.tau_phi[v]);
                let (r, tau) = radial_step(p.r, self.movement.tau_r[v], radius, alpha);
                (PolarPoint::new(phi, r), tau)
            })
            .collect();
        let mut is_moved = vec![false; n];
        let mut moved = Vec::with_capacity(movers.len());
        for (&v, &(p, tau)) in movers.iter().zip(&updates) {
            self.positions[v as usize] = p;
            self.movement.tau_r[v as usize] = tau;
            is_moved[v as usize] = true;
            moved.push((v, p));
        }
        self.index.relocate(&moved, &is_moved)?;

        let scanner = EdgeScanner::new(&self.positions, &self.index, radius);
        // queries in angular order touch neighbouring slab memory
        let mut order: Vec<usize> = (0..movers.len()).collect();
        order.sort_unstable_by_key(|&i| angle_key(updates[i].0.phi));
        let mut fresh: Vec<Vec<u32>> = vec![Vec::new(); movers.len()];
        let lists: Vec<(usize, Vec<u32>)> = order
            .par_iter()
            .map(|&i| {
                let mut list = Vec::new();
                scanner.all_neighbors(movers[i] as usize, |w| list.push(w));
                list.sort_unstable();
                (i, list)
            })
            .collect();
        for (i, list) in lists {
            fresh[i] = list;
        }
        drop(scanner);

        let mut delta = EdgeDelta::default();
        for (&u, new) in movers.iter().zip(&fresh) {
            let old = &self.adjacency[u as usize];
            // pairs of two movers are reported from the smaller id
            let keep = |w: u32| !(is_moved[w as usize] && w < u);
            diff_sorted(new, old, |w| {
                if keep(w) {
                    delta.inserted.push(edge(u, w));
                }
            });
            diff_sorted(old, new, |w| {
                if keep(w) {
                    delta.deleted.push(edge(u, w));
                }
            });
        }

        // non-moving endpoints keep their lists sorted in place
        for &(a, b) in &delta.inserted {
            for (x, y) in [(a, b), (b, a)] {
                if !is_moved[x as usize] {
                    let list = &mut self.adjacency[x as usize];
                    if let Err(pos) = list.binary_search(&y) {
                        list.insert(pos, y);
                    }
                }
            }
        }
        for &(a, b) in &delta.deleted {
            for (x, y) in [(a, b), (b, a)] {
                if !is_moved[x as usize] {
                    let list = &mut self.adjacency[x as usize];
                    if let Ok(pos) = list.binary_search(&y) {
                        list.remove(pos);
                    }
                }
            }
        }
        for (&u, new) in movers.iter().zip(fresh) {
            self.adjacency[u as usize] = new;
        }
        delta.inserted.sort_unstable();
        delta.deleted.sort_unstable();
        Ok(delta)
    }
}

/// Calls `f` for every element of sorted `a` missing from sorted `b`.
fn diff_sorted<F: FnMut(u32)>(a: &[u32], b: &[u32], mut f: F) {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            f(x);
        }
    }
}
