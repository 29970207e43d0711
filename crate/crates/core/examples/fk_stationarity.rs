//! Runs the FK heat-bath chain on a triangle with a pendant edge and compares
//! its empirical law with the exact random-cluster measure.

use fkmixer::dynamics::FkChain;
use fkmixer::graphs::MultiGraph;
use fkmixer::rc::{exact_rc_distribution, BoundaryPartition, RcConfiguration, RcParams};
use fkmixer::stats::total_variation;

fn main() -> fkmixer::Result<()> {
    let g = MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)])?;
    let bc = BoundaryPartition::wired(4, &[0, 3])?;
    let params = RcParams::new(0.4, 2.5)?;
    let exact = exact_rc_distribution(&g, &bc, &params)?;

    let mut chain = FkChain::new(&g, &bc, params, &RcConfiguration::closed(4))?;
    chain.run_continuous(200.0, 0);
    let samples = 40_000;
    let mut freq = vec![0.0; exact.probs().len()];
    for s in 1..=samples {
        chain.run_continuous(4.0, s);
        freq[chain.configuration().to_mask() as usize] += 1.0 / samples as f64;
    }
    println!("mask   exact  empirical");
    for (mask, (a, b)) in exact.probs().iter().zip(&freq).enumerate() {
        println!("{mask:04b}  {a:.4}  {b:.4}");
    }
    println!("TV = {:.4}", total_variation(&freq, exact.probs()));
    Ok(())
}
