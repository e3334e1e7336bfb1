//! Place points by hand and check the fast generator against the
//! all-pairs reference.

use hypergen::geometry::PolarPoint;
use hypergen::oracle::generate_quadratic;
use hypergen::{generate_positions, hyperbolic_distance, threshold_graph, GeneratorConfig};

fn main() -> hypergen::Result<()> {
    let radius = 6.0;
    let hand = vec![
        PolarPoint::new(0.0, 1.0),
        PolarPoint::new(0.3, 2.5),
        PolarPoint::new(3.1, 5.9),
        PolarPoint::new(3.2, 5.9),
    ];
    let graph = threshold_graph(hand.clone(), radius, &GeneratorConfig::default())?;
    for &(u, v) in graph.edges() {
        let d = hyperbolic_distance(hand[u as usize], hand[v as usize]);
        println!("{u} -- {v}  d = {d:.4}");
    }

    let positions = generate_positions(3_000, 0.8, 14.0, 99, 0);
    let fast = threshold_graph(positions.clone(), 14.0, &GeneratorConfig::default())?;
    let slow = generate_quadratic(&positions, 14.0)?;
    assert_eq!(fast.edge_set(), slow.edge_set());
    println!("3000 random points: {} edges, identical to the reference", fast.m());
    Ok(())
}
