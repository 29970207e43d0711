use super::PottsConfiguration;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::stats::log_sum_exp;

/// Largest state space `q^n` accepted by [`exact_potts_distribution`].
pub const POTTS_STATE_CAP: u64 = 10_000_000;

/// Number of edges whose endpoints carry different spins. Self-loops never count.
pub fn potts_energy(g: &MultiGraph, sigma: &PottsConfiguration) -> usize {
    g.edges()
        .iter()
        .filter(|&&(a, b)| sigma.spin(a) != sigma.spin(b))
        .count()
}

/// Unnormalized log weight `−β D(σ)`.
pub fn potts_weight(g: &MultiGraph, beta: f64, sigma: &PottsConfiguration) -> f64 {
    -beta * potts_energy(g, sigma) as f64
}

/// Normalized Potts law indexed by [`PottsConfiguration::index`].
#[derive(Debug, Clone)]
pub struct PottsDistribution {
    q: u16,
    n: usize,
    probs: Vec<f64>,
}

pub fn exact_potts_distribution(g: &MultiGraph, beta: f64, q: u16) -> Result<PottsDistribution> {
    if q < 2 {
        return Err(Error::invalid(format!("Potts q must be at least 2, got {q}")));
    }
    let states = state_count(q, g.n())?;
    let mut logw = Vec::with_capacity(states);
    let mut spins = vec![0u16; g.n()];
    for _ in 0..states {
        let d = g
            .edges()
            .iter()
            .filter(|&&(a, b)| spins[a] != spins[b])
            .count();
        logw.push(-beta * d as f64);
        increment(&mut spins, q);
    }
    let z = log_sum_exp(&logw);
    Ok(PottsDistribution {
        q,
        n: g.n(),
        probs: logw.into_iter().map(|w| (w - z).exp()).collect(),
    })
}

pub(crate) fn state_count(q: u16, n: usize) -> Result<usize> {
    let mut states: u64 = 1;
    for _ in 0..n {
        states = states.saturating_mul(q as u64);
        if states > POTTS_STATE_CAP {
            return Err(Error::TooLarge {
                what: "Potts states for exact enumeration",
                size: (q as f64).powi(n as i32).min(u64::MAX as f64) as u64,
                cap: POTTS_STATE_CAP,
            });
        }
    }
    Ok(states as usize)
}

/// Advances a base-`q` counter with vertex 0 least significant.
pub(crate) fn increment(spins: &mut [u16], q: u16) {
    for s in spins.iter_mut() {
        *s += 1;
        if *s < q {
            return;
        }
        *s = 0;
    }
}

impl PottsDistribution {
    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, sigma: &PottsConfiguration) -> f64 {
        self.probs[sigma.index()]
    }

    /// `P(σ_u = σ_v)`.
    pub fn pair_agreement(&self, u: usize, v: usize) -> f64 {
        let mut spins = vec![0u16; self.n];
        let mut total = 0.0;
        for &p in &self.probs {
            if spins[u] == spins[v] {
                total += p;
            }
            increment(&mut spins, self.q);
        }
        total
    }
}
