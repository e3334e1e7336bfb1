//! Network-analytic metrics used to compare generated graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};

/// Components up to this size get an exact diameter.
pub const EXACT_DIAMETER_LIMIT: usize = 10_000;
/// Default lower degree cutoff for the exponent estimate.
pub const DEFAULT_K_MIN: usize = 10;
/// Minimum number of tail vertices for the exponent estimate.
pub const MIN_TAIL: usize = 100;

/// `2m / n`.
pub fn average_degree(adj: &Adjacency) -> f64 {
    if adj.n() == 0 {
        return 0.0;
    }
    2.0 * adj.m() as f64 / adj.n() as f64
}

/// Number of triangles through each vertex.
pub fn triangle_counts(adj: &Adjacency) -> Vec<u64> {
    let n = adj.n();
    // orient every edge towards the endpoint of higher (degree, id)
    let rank = |v: usize| (adj.degree(v), v);
    let forward: Vec<Vec<u32>> = (0..n)
        .map(|u| {
            adj.neighbors(u)
                .iter()
                .copied()
                .filter(|&w| rank(w as usize) > rank(u))
                .collect()
        })
        .collect();
    let mut counts = vec![0u64; n];
    let mut mark = vec![false; n];
    for u in 0..n {
        for &v in &forward[u] {
            mark[v as usize] = true;
        }
        for &v in &forward[u] {
            for &w in &forward[v as usize] {
                if mark[w as usize] {
                    counts[u] += 1;
                    counts[v as usize] += 1;
                    counts[w as usize] += 1;
                }
            }
        }
        for &v in &forward[u] {
            mark[v as usize] = false;
        }
    }
    counts
}

/// Local clustering coefficient of every vertex; 0 below degree 2.
pub fn local_clustering(adj: &Adjacency) -> Vec<f64> {
    triangle_counts(adj)
        .into_iter()
        .enumerate()
        .map(|(v, t)| {
            let d = adj.degree(v) as f64;
            if d < 2.0 {
                0.0
            } else {
                2.0 * t as f64 / (d * (d - 1.0))
            }
        })
        .collect()
}

/// Mean local clustering coefficient.
pub fn clustering_coefficient(adj: &Adjacency) -> f64 {
    if adj.n() == 0 {
        return 0.0;
    }
    local_clustering(adj).iter().sum::<f64>() / adj.n() as f64
}

/// Pearson correlation of the degrees at the two ends of each edge.
///
/// A graph whose edge endpoints all share one degree returns 1. An edgeless
/// graph returns NaN.
pub fn degree_assortativity(adj: &Adjacency) -> f64 {
    let mut count = 0.0;
    let (mut sum, mut sum_sq, mut sum_prod) = (0.0, 0.0, 0.0);
    for u in 0..adj.n() {
        let du = adj.degree(u) as f64;
        for &v in adj.neighbors(u) {
            let dv = adj.degree(v as usize) as f64;
            // each undirected edge is visited from both sides
            count += 1.0;
            sum += du;
            sum_sq += du * du;
            sum_prod += du * dv;
        }
    }
    if count == 0.0 {
        return f64::NAN;
    }
    let mean = sum / count;
    let var = sum_sq / count - mean * mean;
    if var <= 1e-12 * mean * mean.max(1.0) {
        return 1.0;
    }
    ((sum_prod / count - mean * mean) / var).clamp(-1.0, 1.0)
}

/// Core number of every vertex (bucket-based peeling).
pub fn core_numbers(adj: &Adjacency) -> Vec<usize> {
    let n = adj.n();
    let mut degree = adj.degrees();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        order[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..bin.len()).rev() {
        bin[d] = bin[d - 1];
    }
    if !bin.is_empty() {
        bin[0] = 0;
    }
    for i in 0..n {
        let v = order[i];
        for &w in adj.neighbors(v) {
            let w = w as usize;
            if degree[w] > degree[v] {
                let dw = degree[w];
                let pw = pos[w];
                let first = bin[dw];
                let u = order[first];
                if u != w {
                    order.swap(first, pw);
                    pos[u] = pw;
                    pos[w] = first;
                }
                bin[dw] += 1;
                degree[w] -= 1;
            }
        }
    }
    degree
}

/// Largest core number.
pub fn degeneracy(adj: &Adjacency) -> usize {
    core_numbers(adj).into_iter().max().unwrap_or(0)
}

/// Connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component label per vertex, labels `0..count` in order of first vertex.
    pub labels: Vec<usize>,
    /// Size per label.
    pub sizes: Vec<usize>,
}

impl Components {
    /// Sizes in decreasing order.
    pub fn sorted_sizes(&self) -> Vec<usize> {
        let mut s = self.sizes.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Label of a largest component (smallest label on ties).
    pub fn largest(&self) -> Option<usize> {
        let max = *self.sizes.iter().max()?;
        self.sizes.iter().position(|&s| s == max)
    }
}

pub fn connected_components(adj: &Adjacency) -> Components {
    let n = adj.n();
    let mut labels = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if labels[s] != usize::MAX {
            continue;
        }
        let label = sizes.len();
        labels[s] = label;
        queue.push_back(s);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in adj.neighbors(v) {
                if labels[w as usize] == usize::MAX {
                    labels[w as usize] = label;
                    queue.push_back(w as usize);
                }
            }
        }
        sizes.push(size);
    }
    Components { labels, sizes }
}

/// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
pub fn bfs_distances(adj: &Adjacency, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.n()];
    bfs_into(adj, source, &mut dist);
    dist
}

fn bfs_into(adj: &Adjacency, source: usize, dist: &mut [usize]) -> (usize, usize) {
    dist.fill(usize::MAX);
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    let mut far = (source, 0);
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        if d > far.1 {
            far = (v, d);
        }
        for &w in adj.neighbors(v) {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = d + 1;
                queue.push_back(w as usize);
            }
        }
    }
    far
}

/// Exact diameter of the component containing `members` by eccentricity
/// bounding: each BFS tightens lower and upper eccentricity bounds of all
/// remaining candidates until the bounds on the diameter meet.
fn exact_diameter(adj: &Adjacency, members: &[usize]) -> usize {
    if members.len() <= 1 {
        return 0;
    }
    let n = adj.n();
    let mut low = vec![0usize; n];
    let mut high = vec![usize::MAX; n];
    let mut candidates: Vec<usize> = members.to_vec();
    let mut dist = vec![usize::MAX; n];
    let (mut lower, mut upper) = (0usize, usize::MAX);
    let mut pick_high = true;
    while !candidates.is_empty() && lower < upper {
        let v = if pick_high {
            *candidates
                .iter()
                .max_by_key(|&&w| (high[w], adj.degree(w), std::cmp::Reverse(w)))
                .unwrap()
        } else {
            *candidates
                .iter()
                .min_by_key(|&&w| (low[w], std::cmp::Reverse(adj.degree(w)), w))
                .unwrap()
        };
        pick_high = !pick_high;
        let (_, ecc) = bfs_into(adj, v, &mut dist);
        lower = lower.max(ecc);
        low[v] = ecc;
        high[v] = ecc;
        for &w in &candidates {
            let d = dist[w];
            low[w] = low[w].max(d.max(ecc - d));
            high[w] = high[w].min(ecc + d);
        }
        candidates.retain(|&w| {
            if low[w] == high[w] {
                lower = lower.max(low[w]);
                false
            } else {
                high[w] > lower
            }
        });
        upper = candidates.iter().map(|&w| high[w]).max().unwrap_or(lower).max(lower);
    }
    lower
}

/// Lower bound on the diameter from repeated double sweeps.
fn double_sweep_bound(adj: &Adjacency, members: &[usize], sweeps: usize) -> usize {
    let n = adj.n();
    let mut dist = vec![usize::MAX; n];
    let mut best = 0;
    let mut start = *members
        .iter()
        .max_by_key(|&&v| adj.degree(v))
        .unwrap_or(&members[0]);
    for _ in 0..sweeps {
        let (far, _) = bfs_into(adj, start, &mut dist);
        let (other, ecc) = bfs_into(adj, far, &mut dist);
        best = best.max(ecc);
        // next sweep starts midway along the found path
        let mid = members
            .iter()
            .copied()
            .find(|&v| dist[v] == ecc / 2)
            .unwrap_or(other);
        if mid == start {
            break;
        }
        start = mid;
    }
    best
}

/// Diameter of the largest component: exact up to [`EXACT_DIAMETER_LIMIT`]
/// vertices, a double-sweep lower bound above.
pub fn largest_component_diameter(adj: &Adjacency) -> usize {
    let comps = connected_components(adj);
    largest_component_diameter_with(adj, &comps)
}

fn largest_component_diameter_with(adj: &Adjacency, comps: &Components) -> usize {
    let Some(label) = comps.largest() else {
        return 0;
    };
    let members: Vec<usize> = (0..adj.n()).filter(|&v| comps.labels[v] == label).collect();
    if members.len() <= EXACT_DIAMETER_LIMIT {
        exact_diameter(adj, &members)
    } else {
        double_sweep_bound(adj, &members, 8)
    }
}

/// Maximum-likelihood tail exponent of the degree distribution over degrees
/// `>= k_min`, using the discrete approximation
/// `γ = 1 + N / Σ ln(k_i / (k_min − 1/2))`.
pub fn powerlaw_exponent_estimate(adj: &Adjacency, k_min: usize) -> Result<f64> {
    exponent_from_degrees(&adj.degrees(), k_min)
}

/// As [`powerlaw_exponent_estimate`], on a raw degree sample.
pub fn exponent_from_degrees(degrees: &[usize], k_min: usize) -> Result<f64> {
    if k_min == 0 {
        return Err(Error::InvalidParameter("k_min must be >= 1".into()));
    }
    let shift = k_min as f64 - 0.5;
    let (count, log_sum) = degrees
        .iter()
        .filter(|&&k| k >= k_min)
        .fold((0usize, 0.0), |(c, s), &k| (c + 1, s + (k as f64 / shift).ln()));
    if count < MIN_TAIL {
        return Err(Error::InsufficientTail {
            k_min,
            found: count,
            required: MIN_TAIL,
        });
    }
    Ok(1.0 + count as f64 / log_sum)
}

/// One row of metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub n: usize,
    pub m: usize,
    pub avg_deg: f64,
    pub cc: f64,
    pub assort: f64,
    pub degeneracy: usize,
    pub lcc_size: usize,
    pub lcc_diam: usize,
    pub gamma_hat: Option<f64>,
}

impl MetricReport {
    pub const CSV_HEADER: &'static str = "n,m,avg_deg,cc,assort,degeneracy,lcc_size,lcc_diam,gamma_hat";

    pub fn compute(adj: &Adjacency, k_min: usize) -> Self {
        let comps = connected_components(adj);
        Self {
            n: adj.n(),
            m: adj.m(),
            avg_deg: average_degree(adj),
            cc: clustering_coefficient(adj),
            assort: degree_assortativity(adj),
            degeneracy: degeneracy(adj),
            lcc_size: comps.sizes.iter().copied().max().unwrap_or(0),
            lcc_diam: largest_component_diameter_with(adj, &comps),
            gamma_hat: powerlaw_exponent_estimate(adj, k_min).ok(),
        }
    }

    pub fn of_graph(graph: &Graph) -> Self {
        Self::compute(&graph.adjacency(), DEFAULT_K_MIN)
    }

    fn gamma_text(&self) -> String {
        self.gamma_hat.map_or_else(|| "nan".to_string(), |g| g.to_string())
    }

    /// `key=value` lines.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n={}", self.n);
        let _ = writeln!(s, "m={}", self.m);
        let _ = writeln!(s, "avg_deg={}", self.avg_deg);
        let _ = writeln!(s, "cc={}", self.cc);
        let _ = writeln!(s, "assort={}", self.assort);
        let _ = writeln!(s, "degeneracy={}", self.degeneracy);
        let _ = writeln!(s, "lcc_size={}", self.lcc_size);
        let _ = writeln!(s, "lcc_diam={}", self.lcc_diam);
        let _ = writeln!(s, "gamma_hat={}", self.gamma_text());
        s
    }

    /// Values in [`MetricReport::CSV_HEADER`] order.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.avg_deg,
            self.cc,
            self.assort,
            self.degeneracy,
            self.lcc_size,
            self.lcc_diam,
            self.gamma_text()
        )
    }
}
