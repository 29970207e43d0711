//! Largest effect of a `K`-sparse boundary change on the root edges of a
//! binary tree, by radius.

use fkmixer::diagnostics::{influence_profile, k_sparse_partitions, max_influence_over};
use fkmixer::graphs::MultiGraph;
use fkmixer::rc::RcParams;
use fkmixer::thresholds::p_u;

fn main() -> fkmixer::Result<()> {
    let (b, q, k) = (2, 2.0, 4);
    let params = RcParams::new(0.5 * p_u(q, b as f64)?, q)?;
    let mut points = Vec::new();
    for radius in 1..=3 {
        let ball = MultiGraph::regular_tree(b, radius);
        let leaves: Vec<usize> = (ball.n() - b.pow(radius as u32)..ball.n()).collect();
        let family = k_sparse_partitions(ball.n(), &leaves, k);
        let (tv, _) = max_influence_over(&ball, 0, &family, &params)?;
        println!("R={radius}: {} partitions, max TV {tv:.5}", family.len());
        points.push((radius, tv));
    }
    let profile = influence_profile(points);
    println!("strictly decreasing: {}", profile.strictly_decreasing);
    Ok(())
}
