//! Generate a static graph and write it as an edge list.
//!
//! cargo run --example static_graph -- 100000 8 2.5 out.el

use std::fs::File;
use std::io::BufWriter;

use hypergen::io::{write_edges, EdgeFormat};
use hypergen::{HyperbolicGenerator, RadiusSpec};

fn main() -> hypergen::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u64 = args.next().map_or(100_000, |s| s.parse().expect("n"));
    let k: f64 = args.next().map_or(8.0, |s| s.parse().expect("k"));
    let gamma: f64 = args.next().map_or(3.0, |s| s.parse().expect("gamma"));
    let out = args.next();

    let generation = HyperbolicGenerator::new(n, gamma, RadiusSpec::AvgDegree(k), 7)?.run()?;
    let graph = &generation.graph;
    let p = &generation.params;
    println!("n={} m={} R={:.4} alpha={:.3}", graph.n(), graph.m(), p.radius(), p.alpha());
    println!("measured average degree {:.3} (target {k})", 2.0 * graph.m() as f64 / graph.n() as f64);
    println!("generation took {:?}", generation.timings.total());

    if let Some(path) = out {
        write_edges(BufWriter::new(File::create(&path)?), graph.edges(), EdgeFormat::EdgeList, true)?;
        println!("wrote {path}");
    }
    Ok(())
}
