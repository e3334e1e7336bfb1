use std::collections::BTreeSet;

use crate::geometry::PolarPoint;

/// Undirected edge `(u, v)` with `u < v`.
pub type Edge = (u32, u32);

/// Orders an unordered pair.
#[inline]
pub fn edge(a: u32, b: u32) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Vertex positions in the disk plus the threshold edge set.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    coords: Vec<PolarPoint>,
    edges: Vec<Edge>,
    radius: f64,
}

impl Graph {
    /// Assembles a graph. Edges must already satisfy `u < v < n`.
    pub fn from_parts(coords: Vec<PolarPoint>, edges: Vec<Edge>, radius: f64) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < coords.len()));
        Self {
            coords,
            edges,
            radius,
        }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn coords(&self) -> &[PolarPoint] {
        &self.coords
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn into_parts(self) -> (Vec<PolarPoint>, Vec<Edge>, f64) {
        (self.coords, self.edges, self.radius)
    }

    /// Edges sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<Edge> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::from_edges(self.n(), &self.edges)
    }
}

/// Compressed sparse rows, neighbors sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    pub fn from_edges(n: usize, edges: &[Edge]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Self { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }
}
