//! Metric report of one graph, then a small slab-versus-reference ensemble.

use hypergen::analysis::MetricReport;
use hypergen::generate;
use hypergen::validation::{compare_ensembles, EnsembleConfig};

fn main() -> hypergen::Result<()> {
    let graph = generate(20_000, 6.0, 2.6, 5, 0)?;
    println!("{}", MetricReport::of_graph(&graph).to_key_value());

    let cmp = compare_ensembles(&EnsembleConfig::new(2_000, 6.0, 3.0, 20, 11))?;
    for m in &cmp.metrics {
        println!(
            "{:10} slab {:9.4} ± {:.4}   reference {:9.4} ± {:.4}   z = {:.2}",
            m.name,
            m.slab.mean,
            m.slab.std_error(),
            m.oracle.mean,
            m.oracle.std_error(),
            m.z
        );
    }
    Ok(())
}
