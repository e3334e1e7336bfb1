//! Use the slab index directly for neighbourhood queries.

use hypergen::geometry::{min_max_phi, PolarPoint, PreparedPoint, Threshold};
use hypergen::generate_positions;
use hypergen::slab::{RadialBoundaries, SlabIndex};

fn main() -> hypergen::Result<()> {
    let (n, alpha, radius) = (50_000usize, 1.0, 20.0);
    let positions = generate_positions(n, alpha, radius, 3, 0);
    let index = SlabIndex::from_positions(&positions, RadialBoundaries::compute(radius, n as u64, 0.9)?)?;
    for slab in index.slabs() {
        println!("slab {:2} from r={:7.3}: {:6} points", slab.index(), index.boundaries().inner(slab.index()), slab.len());
    }

    let query = PolarPoint::new(1.0, 8.0);
    let prepared = PreparedPoint::new(query);
    let threshold = Threshold::new(radius);
    let mut tested = 0;
    let mut found = Vec::new();
    for slab in index.slabs() {
        let range = min_max_phi(query, index.boundaries().inner(slab.index()), radius);
        for (id, p) in slab.candidates_in(range) {
            tested += 1;
            if threshold.connects(&prepared, &PreparedPoint::new(p)) {
                found.push(id);
            }
        }
    }
    println!("query at r=8: {} neighbours after testing {tested} of {n} points", found.len());
    Ok(())
}
