use rand::Rng;

use super::potts::{increment, state_count};
use super::{PottsConfiguration, RcConfiguration, RcDistribution, UnionFind};
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rng::substream;

/// Colours every open cluster with an independent uniform spin.
pub fn es_coloring(
    g: &MultiGraph,
    omega: &RcConfiguration,
    q: u16,
    seed: u64,
) -> Result<PottsConfiguration> {
    es_coloring_with(g, omega, q, &mut substream(seed, "es-coloring"))
}

pub fn es_coloring_with<R: Rng + ?Sized>(
    g: &MultiGraph,
    omega: &RcConfiguration,
    q: u16,
    rng: &mut R,
) -> Result<PottsConfiguration> {
    omega.check_graph(g)?;
    if q < 2 {
        return Err(Error::invalid(format!("Potts q must be at least 2, got {q}")));
    }
    let mut uf = UnionFind::new(g.n());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if omega.is_open(e) {
            uf.union(a, b);
        }
    }
    const UNSET: u16 = u16::MAX;
    let mut root_spin = vec![UNSET; g.n()];
    let mut spins = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let r = uf.find(v);
        if root_spin[r] == UNSET {
            root_spin[r] = rng.random_range(0..q);
        }
        spins.push(root_spin[r]);
    }
    PottsConfiguration::new(q, spins)
}

/// Exact law of the colouring of an exact free-boundary random-cluster sample,
/// indexed like [`crate::rc::PottsDistribution`].
pub fn es_pushforward(g: &MultiGraph, dist: &RcDistribution, q: u16) -> Result<Vec<f64>> {
    if dist.edge_count() != g.edge_count() {
        return Err(Error::invalid("distribution does not belong to this graph"));
    }
    let states = state_count(q, g.n())?;
    // P(σ) = Σ_{ω compatible with σ} π(ω) q^{−c(ω)}
    let mut uf = UnionFind::new(g.n());
    let comps: Vec<usize> = (0..dist.probs().len())
        .map(|mask| {
            uf.reset();
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                if mask >> e & 1 == 1 {
                    uf.union(a, b);
                }
            }
            uf.count()
        })
        .collect();
    let qf = q as f64;
    let mut out = Vec::with_capacity(states);
    let mut spins = vec![0u16; g.n()];
    for _ in 0..states {
        let mut disagree = 0u64;
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if spins[a] != spins[b] {
                disagree |= 1 << e;
            }
        }
        let total: f64 = dist
            .probs()
            .iter()
            .enumerate()
            .filter(|&(mask, _)| mask as u64 & disagree == 0)
            .map(|(mask, &p)| p * qf.powi(-(comps[mask] as i32)))
            .sum();
        out.push(total);
        increment(&mut spins, q);
    }
    Ok(out)
}
