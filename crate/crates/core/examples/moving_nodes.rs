//! Move nodes through the disk and follow the edge changes.

use hypergen::analysis::{clustering_coefficient, degree_assortativity};
use hypergen::dynamics::{DynamicGraph, MovementState};
use hypergen::{HyperbolicGenerator, RadiusSpec};

fn main() -> hypergen::Result<()> {
    let n = 20_000;
    let generation = HyperbolicGenerator::new(n, 3.0, RadiusSpec::AvgDegree(10.0), 1)?.run()?;
    let alpha = generation.params.alpha();
    let movement = MovementState::with_default_ranges(n as usize, 2);
    let mut graph = DynamicGraph::new(generation.graph, alpha, movement)?.with_move_fraction(0.05, 3)?;

    for step in 1..=10 {
        let delta = graph.move_step()?;
        let adj = graph.to_graph().adjacency();
        println!(
            "step {step:2}: +{:5} -{:5} edges, m={}, cc={:.4}, assort={:.4}",
            delta.inserted.len(),
            delta.deleted.len(),
            graph.m(),
            clustering_coefficient(&adj),
            degree_assortativity(&adj)
        );
    }
    Ok(())
}
