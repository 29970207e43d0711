//! Starts from all edges open and watches the clusters break up within
//! time `ln n` below the uniqueness threshold.

use fkmixer::diagnostics::{kr_sparse_check, shatter_stats};
use fkmixer::graphs::sample_er_poisson_cloning;
use fkmixer::rc::RcParams;
use fkmixer::thresholds::p_u;

fn main() -> fkmixer::Result<()> {
    let (n, gamma, q) = (5000, 2.0, 2.0);
    let g = sample_er_poisson_cloning(n, gamma, 11)?;
    let params = RcParams::new(0.5 * p_u(q, gamma)?, q)?;
    let t = (n as f64).ln();
    let report = shatter_stats(&g, params, t, 10, 11)?;
    for s in &report.samples {
        let sparse = kr_sparse_check(&g, &s.final_config, 4, 2);
        println!(
            "seed {:>20}: largest cluster {:>3}, clusters ≥ 5: {:.4}, max sparsity {}",
            s.seed,
            s.max_cluster,
            s.tail_frequency(5),
            sparse.max_sparsity
        );
    }
    println!("ln^2 n = {:.1}", t * t);
    Ok(())
}
