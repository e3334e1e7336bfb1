//! One full movement step keeps the ensemble statistics of the graph.

use hypergen::analysis::{MetricReport, DEFAULT_K_MIN};
use hypergen::dynamics::{DynamicGraph, MovementState};
use hypergen::stats::{standardized_difference, Summary};
use hypergen::{DiskParameters, HyperbolicGenerator, RadiusSpec};

#[test]
fn clustering_and_assortativity_survive_a_full_move() {
    let params = DiskParameters::new(2000, 3.0, RadiusSpec::AvgDegree(8.0)).unwrap();
    let mut before = Vec::new();
    let mut after = Vec::new();
    for run in 0..100u64 {
        let graph = HyperbolicGenerator::from_params(params, 7_000 + run).run().unwrap().graph;
        before.push(MetricReport::compute(&graph.adjacency(), DEFAULT_K_MIN));
        let movement = MovementState::with_default_ranges(graph.n(), 8_000 + run);
        let mut dynamic = DynamicGraph::new(graph, params.alpha(), movement).unwrap();
        dynamic.move_step().unwrap();
        after.push(MetricReport::compute(&dynamic.to_graph().adjacency(), DEFAULT_K_MIN));
    }
    type Getter = fn(&MetricReport) -> f64;
    let metrics: [(&str, Getter); 2] = [("cc", |r| r.cc), ("assort", |r| r.assort)];
    for (name, get) in metrics {
        let a = Summary::of(&before.iter().map(get).collect::<Vec<_>>());
        let b = Summary::of(&after.iter().map(get).collect::<Vec<_>>());
        let z = standardized_difference(&a, &b);
        assert!(z < 3.0, "{name}: before {} after {} z {z}", a.mean, b.mean);
    }
}
