//! All-pairs reference generator. Quadratic on purpose; it shares nothing
//! with the slab index and serves as ground truth for edge sets.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{PolarPoint, PreparedPoint, Threshold};
use crate::graph::{Edge, Graph};

/// Largest input accepted without forcing.
pub const ORACLE_LIMIT: usize = 100_000;

/// Tests every pair `u < v` against `dist ≤ radius`.
pub fn generate_quadratic(positions: &[PolarPoint], radius: f64) -> Result<Graph> {
    if positions.len() > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge(positions.len()));
    }
    generate_quadratic_forced(positions, radius)
}

/// [`generate_quadratic`] without the size guard.
pub fn generate_quadratic_forced(positions: &[PolarPoint], radius: f64) -> Result<Graph> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("disk radius must be > 0, got {radius}")));
    }
    if positions.len() > u32::MAX as usize {
        return Err(Error::InvalidParameter("too many vertices".into()));
    }
    let threshold = Threshold::new(radius);
    let prepared: Vec<PreparedPoint> = positions.iter().map(|&p| PreparedPoint::new(p)).collect();
    let rows: Vec<Vec<Edge>> = (0..prepared.len())
        .into_par_iter()
        .map(|u| {
            let pu = &prepared[u];
            prepared[u + 1..]
                .iter()
                .enumerate()
                .filter(|(_, pv)| threshold.connects(pu, pv))
                .map(|(k, _)| (u as u32, (u + 1 + k) as u32))
                .collect()
        })
        .collect();
    let edges = rows.into_iter().flatten().collect();
    Ok(Graph::from_parts(positions.to_vec(), edges, radius))
}
