//! Random edge toggles checked against a from-scratch union-find count.

use fkmixer::connectivity::{Backend, ConnectivityOracle};
use fkmixer::graphs::sample_er_poisson_cloning;
use fkmixer::rc::{component_count, BoundaryPartition, RcConfiguration};
use fkmixer::rng::from_seed;
use rand::Rng;

fn main() -> fkmixer::Result<()> {
    let g = sample_er_poisson_cloning(500, 3.0, 1)?;
    let bc = BoundaryPartition::free(g.n());
    let m = g.edge_count();
    let mut rng = from_seed(1);
    let mut oracle =
        ConnectivityOracle::with_backend(&g, &bc, &RcConfiguration::closed(m), Backend::Dynamic)?;
    let mut mismatches = 0;
    for _ in 0..20_000 {
        let e = rng.random_range(0..m);
        oracle.set_edge(e, rng.random_bool(0.5))?;
        if oracle.component_count() != component_count(&g, &bc, &oracle.configuration()) {
            mismatches += 1;
        }
    }
    println!("{} ops on m={m}, {mismatches} mismatches, {} components", oracle.operations(), oracle.component_count());
    Ok(())
}
