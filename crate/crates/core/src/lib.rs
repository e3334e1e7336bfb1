//! Fast generation of threshold random hyperbolic graphs.
//!
//! Vertices are points in a hyperbolic disk of radius `R`; two vertices are
//! adjacent exactly when their hyperbolic distance is at most `R`. The
//! generator sorts points into concentric slabs and only tests pairs whose
//! angular separation can still allow a connection, which in practice runs in
//! `O(n log n + m)`.
//!
//! ```
//! use hypergen::generate;
//!
//! let graph = generate(2_000, 8.0, 3.0, 42, 1).unwrap();
//! assert_eq!(graph.n(), 2_000);
//! ```
//!
//! Besides the static generator the crate contains a quadratic reference
//! generator ([`oracle`]), a node-movement model that preserves the point
//! distribution ([`dynamics`]), metrics for comparing graph ensembles
//! ([`analysis`], [`validation`]) and the `hypergen` command-line front end
//! ([`cli`]). The `examples/` directory has one runnable program per feature.

pub mod analysis;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod generator;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod params;
pub mod slab;
pub mod stats;
pub mod validation;

pub use error::{Error, Result};
pub use generator::{
    generate, generate_positions, generate_with_radius, threshold_graph, Generation, GeneratorConfig,
    HyperbolicGenerator, PhaseTimings,
};
pub use geometry::{hyperbolic_distance, AngularRange, PolarPoint};
pub use graph::{Adjacency, Edge, Graph};
pub use params::{DiskParameters, RadiusSpec};
