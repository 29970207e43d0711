//! Escape times of Potts Glauber dynamics from the set where a high-degree
//! vertex holds a majority among its neighbours.

use fkmixer::diagnostics::{bottleneck_escape, BottleneckConfig};
use fkmixer::graphs::{sample_simple_graph, DegreeSequence};
use fkmixer::thresholds::beta_u;

fn main() -> fkmixer::Result<()> {
    let q = 2;
    let beta = 0.8 * beta_u(q as f64, 2.0)?;
    for d_star in [8, 12, 16, 20, 24] {
        let mut degrees = vec![3; 401];
        degrees[0] = d_star;
        let g = sample_simple_graph(&DegreeSequence::new(degrees)?, d_star as u64, 100_000)?;
        let mut cfg = BottleneckConfig::new(beta, q, 0, 0.25);
        cfg.seeds = 64;
        cfg.master_seed = 5;
        let r = bottleneck_escape(&g, &cfg)?;
        println!(
            "d*={d_star:>2} threshold={:>2} median sweeps={:?} censored={}",
            r.threshold,
            r.median_sweeps,
            r.censored()
        );
    }
    Ok(())
}
