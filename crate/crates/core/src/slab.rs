//! Concentric-slab spatial index.
//!
//! The disk is cut into `L` rings whose radial widths shrink geometrically
//! towards the rim. Each ring keeps its points sorted by angle, so the
//! candidates inside an angular window are one or two contiguous runs found
//! by binary search.

use std::f64::consts::TAU;
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{AngularRange, PolarPoint, PreparedPoint};

/// Default ratio between the widths of consecutive slabs.
pub const DEFAULT_SLAB_RATIO: f64 = 0.9;

/// `max(1, ceil(log₂ n))`.
pub fn default_slab_count(n: u64) -> usize {
    if n <= 2 {
        1
    } else {
        (64 - (n - 1).leading_zeros()) as usize
    }
}

/// Radial boundaries `0 = c_0 < c_1 < … < c_L = R`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialBoundaries {
    bounds: Vec<f64>,
    ratio: f64,
}

impl RadialBoundaries {
    /// Boundaries for `n` points, using [`default_slab_count`] slabs.
    pub fn compute(radius: f64, n: u64, ratio: f64) -> Result<Self> {
        Self::with_count(radius, default_slab_count(n), ratio)
    }

    /// Boundaries with an explicit slab count. Widths follow
    /// `c_{k+1} − c_k = c_1 p^k` with `c_1 = (1 − p) R / (1 − p^L)`.
    pub fn with_count(radius: f64, count: usize, ratio: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "disk radius must be finite and > 0, got {radius}"
            )));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "slab ratio must lie in (0, 1), got {ratio}"
            )));
        }
        if count == 0 {
            return Err(Error::InvalidParameter("slab count must be >= 1".into()));
        }
        let first = (1.0 - ratio) * radius / (1.0 - ratio.powi(count as i32));
        let mut bounds = Vec::with_capacity(count + 1);
        bounds.push(0.0);
        let mut width = first;
        for _ in 1..count {
            let next = bounds.last().unwrap() + width;
            bounds.push(next);
            width *= ratio;
        }
        bounds.push(radius);
        Ok(Self { bounds, ratio })
    }

    pub fn bounds(&self) -> &[f64] {
        &self.bounds
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn slab_count(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn radius(&self) -> f64 {
        *self.bounds.last().unwrap()
    }

    /// Inner radius of slab `i`.
    pub fn inner(&self, i: usize) -> f64 {
        self.bounds[i]
    }

    /// Slab holding radius `r`: `c_i ≤ r < c_{i+1}`, with the last slab closed.
    pub fn slab_of(&self, r: f64) -> usize {
        let interior = &self.bounds[1..self.bounds.len() - 1];
        interior.partition_point(|&c| c <= r)
    }
}

/// A stored point with its cached distance terms.
#[derive(Clone, Copy, Debug)]
pub struct SlabEntry {
    pub id: u32,
    pub point: PolarPoint,
    pub prepared: PreparedPoint,
}

impl SlabEntry {
    pub fn new(id: u32, point: PolarPoint) -> Self {
        Self {
            id,
            point,
            prepared: PreparedPoint::new(point),
        }
    }
}

/// One ring of the index, sorted by angle.
#[derive(Clone, Debug)]
pub struct Slab {
    index: usize,
    phis: Vec<f64>,
    entries: Vec<SlabEntry>,
    // `starts[b]` is the first entry whose angle falls in bucket `b` or later;
    // one bucket per entry over [0, 2π)
    starts: Vec<u32>,
}

impl Slab {
    /// Slab over `points[i]` for every `i` in `members`.
    fn from_points(index: usize, points: &[(u32, PolarPoint)], members: &[u32]) -> Self {
        // bucket sort by angle, then order each (small) bucket exactly
        let buckets = members.len().max(1);
        let mut offsets = vec![0usize; buckets + 1];
        for &i in members {
            offsets[angle_bucket(points[i as usize].1.phi, buckets) + 1] += 1;
        }
        for b in 0..buckets {
            offsets[b + 1] += offsets[b];
        }
        let mut fill = offsets.clone();
        let mut keys = vec![(0u64, 0u32, 0u32); members.len()];
        for &i in members {
            let (id, point) = points[i as usize];
            let b = angle_bucket(point.phi, buckets);
            keys[fill[b]] = (angle_key(point.phi), id, i);
            fill[b] += 1;
        }
        for b in 0..buckets {
            keys[offsets[b]..offsets[b + 1]].sort_unstable();
        }
        // plain gather first, then the transcendental work on sequential data
        let sorted: Vec<(u32, PolarPoint)> = keys.iter().map(|&(_, _, i)| points[i as usize]).collect();
        let entries = sorted.iter().map(|&(id, p)| SlabEntry::new(id, p)).collect();
        let mut slab = Self {
            index,
            phis: Vec::new(),
            entries,
            starts: Vec::new(),
        };
        slab.rebuild_phis();
        slab
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SlabEntry] {
        &self.entries
    }

    /// Angular coordinates, nondecreasing.
    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    /// Index ranges of the entries whose angle lies in `range`. An arc that
    /// wraps past `2π` splits into a tail run and a head run.
    pub fn candidate_ranges(&self, range: AngularRange) -> [Range<usize>; 2] {
        let len = self.phis.len();
        match range {
            AngularRange::Empty => [0..0, 0..0],
            AngularRange::FullCircle => [0..len, 0..0],
            AngularRange::Arc { center, half_width } => {
                if half_width * 2.0 >= TAU {
                    return [0..len, 0..0];
                }
                let lo = center - half_width;
                let hi = center + half_width;
                if lo < 0.0 {
                    [self.span(lo + TAU, TAU), self.span(0.0, hi)]
                } else if hi >= TAU {
                    [self.span(lo, TAU), self.span(0.0, hi - TAU)]
                } else {
                    [self.span(lo, hi), 0..0]
                }
            }
        }
    }

    fn bucket_count(&self) -> usize {
        self.starts.len() - 1
    }

    fn bucket_of(&self, phi: f64) -> usize {
        angle_bucket(phi, self.bucket_count())
    }

    // first index whose angle fails `below`, for a predicate monotone in phi
    fn partition_near(&self, phi: f64, below: impl Fn(f64) -> bool) -> usize {
        let b = self.bucket_of(phi);
        let (lo, hi) = (self.starts[b] as usize, self.starts[b + 1] as usize);
        lo + self.phis[lo..hi].partition_point(|&p| below(p))
    }

    // entries with lo <= phi <= hi
    fn span(&self, lo: f64, hi: f64) -> Range<usize> {
        let start = self.partition_near(lo, |p| p < lo);
        let end = self.partition_near(hi, |p| p <= hi);
        start..end.max(start)
    }

    /// Points whose angle lies in `range`.
    pub fn candidates_in(&self, range: AngularRange) -> impl Iterator<Item = (u32, PolarPoint)> + '_ {
        let [a, b] = self.candidate_ranges(range);
        self.entries[a]
            .iter()
            .chain(self.entries[b].iter())
            .map(|e| (e.id, e.point))
    }

    fn rebuild_phis(&mut self) {
        self.phis.clear();
        self.phis.extend(self.entries.iter().map(|e| e.point.phi));
        let buckets = self.phis.len().max(1);
        self.starts.clear();
        self.starts.resize(buckets + 1, 0);
        let mut next = 0;
        for (i, &phi) in self.phis.iter().enumerate() {
            let b = angle_bucket(phi, buckets);
            while next <= b {
                self.starts[next] = i as u32;
                next += 1;
            }
        }
        for s in &mut self.starts[next..] {
            *s = self.phis.len() as u32;
        }
    }
}

/// Radial boundaries plus angularly sorted slabs.
#[derive(Clone, Debug)]
pub struct SlabIndex {
    boundaries: RadialBoundaries,
    slabs: Vec<Slab>,
}

impl SlabIndex {
    /// Assigns every point to its slab and sorts each slab by angle.
    pub fn build(points: &[(u32, PolarPoint)], boundaries: RadialBoundaries) -> Result<Self> {
        let radius = boundaries.radius();
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); boundaries.slab_count()];
        for (i, &(id, point)) in points.iter().enumerate() {
            if !(point.r >= 0.0 && point.r <= radius) {
                return Err(Error::PointOutsideDisk {
                    id,
                    r: point.r,
                    radius,
                });
            }
            members[boundaries.slab_of(point.r)].push(i as u32);
        }
        let slabs = members
            .par_iter()
            .enumerate()
            .map(|(i, m)| Slab::from_points(i, points, m))
            .collect();
        Ok(Self { boundaries, slabs })
    }

    /// Index over `positions`, using each position's array index as its id.
    pub fn from_positions(positions: &[PolarPoint], boundaries: RadialBoundaries) -> Result<Self> {
        let points: Vec<(u32, PolarPoint)> = positions
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u32, p))
            .collect();
        Self::build(&points, boundaries)
    }

    pub fn boundaries(&self) -> &RadialBoundaries {
        &self.boundaries
    }

    pub fn slabs(&self) -> &[Slab] {
        &self.slabs
    }

    pub fn slab(&self, i: usize) -> &Slab {
        &self.slabs[i]
    }

    pub fn len(&self) -> usize {
        self.slabs.iter().map(Slab::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Replaces the stored positions of `moved` (ids already in the index) and
    /// restores angular order. `is_moved[id]` must be set exactly for those ids.
    pub(crate) fn relocate(&mut self, moved: &[(u32, PolarPoint)], is_moved: &[bool]) -> Result<()> {
        let radius = self.boundaries.radius();
        let mut incoming: Vec<Vec<SlabEntry>> = vec![Vec::new(); self.slabs.len()];
        for &(id, point) in moved {
            if !(point.r >= 0.0 && point.r <= radius) {
                return Err(Error::PointOutsideDisk {
                    id,
                    r: point.r,
                    radius,
                });
            }
            incoming[self.boundaries.slab_of(point.r)].push(SlabEntry::new(id, point));
        }
        self.slabs
            .par_iter_mut()
            .zip(incoming.into_par_iter())
            .for_each(|(slab, mut add)| {
                let before = slab.entries.len();
                slab.entries.retain(|e| !is_moved[e.id as usize]);
                if add.is_empty() && slab.entries.len() == before {
                    return;
                }
                add.sort_unstable_by(|a, b| {
                    a.point.phi.total_cmp(&b.point.phi).then(a.id.cmp(&b.id))
                });
                let kept = std::mem::take(&mut slab.entries);
                slab.entries = merge_by_angle(kept, add);
                slab.rebuild_phis();
            });
        Ok(())
    }
}

// integer key with the ordering of `f64::total_cmp`
pub(crate) fn angle_key(phi: f64) -> u64 {
    let bits = phi.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | 1 << 63
    }
}

// monotone in phi, so a bucket lookup never skips a boundary entry
fn angle_bucket(phi: f64, buckets: usize) -> usize {
    ((phi * (buckets as f64 / TAU)) as usize).min(buckets - 1)
}

fn merge_by_angle(a: Vec<SlabEntry>, b: Vec<SlabEntry>) -> Vec<SlabEntry> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let ord = a[i]
            .point
            .phi
            .total_cmp(&b[j].point.phi)
            .then(a[i].id.cmp(&b[j].id));
        if ord.is_le() {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
