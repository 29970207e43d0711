//! Root-to-leaf connection probabilities on the wired binary tree decay like
//! `p̂^h` below the threshold.

use fkmixer::rc::RcParams;
use fkmixer::thresholds::{decay_fit, p_u, regular_tree_phi, regular_tree_point_to_point};

fn main() -> fkmixer::Result<()> {
    let (b, q) = (2, 2.0);
    let params = RcParams::new(0.7 * p_u(q, b as f64)?, q)?;
    let mut points = Vec::new();
    println!("h  phi       point_to_point");
    for h in 1..=16 {
        let phi = regular_tree_phi(b, h, &params);
        let ptp = regular_tree_point_to_point(b, h, &params);
        println!("{h:<2} {phi:.3e} {ptp:.3e}");
        points.push((h, ptp));
    }
    let fit = decay_fit(&points[4..])?;
    println!("fitted theta = {:.4}, phat = {:.4}", fit.theta, params.phat());
    Ok(())
}
