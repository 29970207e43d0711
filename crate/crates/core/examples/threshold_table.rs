//! Uniqueness thresholds `p_u(q, γ)` over a small grid.

use fkmixer::thresholds::threshold_point;

fn main() -> fkmixer::Result<()> {
    println!("{:>5} {:>5} {:>9} {:>9} {:>9}", "q", "gamma", "p_u", "beta_u", "phat");
    for q in [1.0, 2.0, 3.0, 5.0] {
        for gamma in [1.5, 2.0, 3.0] {
            let t = threshold_point(q, gamma)?;
            println!(
                "{q:>5} {gamma:>5} {:>9.6} {:>9.6} {:>9.6}",
                t.p_u, t.beta_u, t.phat_at_pu
            );
        }
    }
    Ok(())
}
