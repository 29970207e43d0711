//! Median coupling time of the all-open and all-closed chains on ER graphs at
//! half the uniqueness threshold, against `ln n`.

use fkmixer::diagnostics::{mixing_scaling, GraphFamily};
use fkmixer::rc::RcParams;
use fkmixer::thresholds::p_u;

fn main() -> fkmixer::Result<()> {
    let (q, gamma) = (2.0, 2.0);
    let params = RcParams::new(0.5 * p_u(q, gamma)?, q)?;
    let ns = [250, 500, 1000, 2000, 4000];
    let report = mixing_scaling(&ns, GraphFamily::ErdosRenyi { gamma }, params, 24, 1000.0, 3)?;
    print!("{}", report.to_csv());
    if let Some(fit) = &report.fit {
        println!("slope per ln n = {:.3}, R^2 = {:.3}", fit.slope, fit.r_squared);
    }
    Ok(())
}
