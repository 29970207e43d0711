use rand::Rng;

use crate::graphs::MultiGraph;
use crate::rc::{PottsConfiguration, UnionFind};

/// One Swendsen–Wang move at inverse temperature `beta`: keep each
/// monochromatic edge with probability `p = 1 − e^{−β}`, then recolour every
/// resulting cluster uniformly.
pub fn sw_step<R: Rng + ?Sized>(g: &MultiGraph, sigma: &mut PottsConfiguration, beta: f64, rng: &mut R) {
    let p = -(-beta).exp_m1();
    let mut uf = UnionFind::new(g.n());
    for &(a, b) in g.edges() {
        if a != b && sigma.spin(a) == sigma.spin(b) && rng.random::<f64>() < p {
            uf.union(a, b);
        }
    }
    let q = sigma.q();
    let mut colour = vec![u16::MAX; g.n()];
    for v in 0..g.n() {
        let r = uf.find(v);
        if colour[r] == u16::MAX {
            colour[r] = rng.random_range(0..q);
        }
        sigma.set(v, colour[r]);
    }
}
