//! Heat-bath updates per second on an ER graph with about 10^4 edges.

use std::time::Instant;

use fkmixer::connectivity::Backend;
use fkmixer::dynamics::FkChain;
use fkmixer::graphs::sample_er_poisson_cloning;
use fkmixer::rc::{BoundaryPartition, RcConfiguration, RcParams};

fn main() -> fkmixer::Result<()> {
    let g = sample_er_poisson_cloning(10_000, 2.0, 1)?;
    let params = RcParams::new(0.3, 2.0)?;
    let bc = BoundaryPartition::free(g.n());
    let steps = 1_000_000;
    for backend in [Backend::Dynamic, Backend::Naive] {
        let start = RcConfiguration::all_open(g.edge_count());
        let mut chain = FkChain::with_backend(&g, &bc, params, &start, backend)?;
        let clock = Instant::now();
        chain.run_discrete(steps, 1);
        let rate = steps as f64 / clock.elapsed().as_secs_f64();
        println!("{backend:?}: m={} {rate:.3e} updates/s", g.edge_count());
    }
    Ok(())
}
