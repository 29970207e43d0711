use rand::Rng;

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rc::PottsConfiguration;

/// Potts Glauber dynamics with cached neighbour spin counts `m_i(v)`.
#[derive(Debug, Clone)]
pub struct PottsChain {
    adjacency: Vec<Vec<usize>>,
    beta: f64,
    q: usize,
    sigma: PottsConfiguration,
    counts: Vec<u32>,
    weights: Vec<f64>,
    steps: u64,
}

impl PottsChain {
    pub fn new(g: &MultiGraph, beta: f64, sigma: PottsConfiguration) -> Result<Self> {
        if sigma.len() != g.n() {
            return Err(Error::invalid(format!(
                "configuration has {} spins, graph has {} vertices",
                sigma.len(),
                g.n()
            )));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::invalid(format!("beta must be finite and non-negative, got {beta}")));
        }
        let adjacency: Vec<Vec<usize>> = (0..g.n())
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&(w, _)| w != v)
                    .map(|&(w, _)| w)
                    .collect()
            })
            .collect();
        let q = sigma.q() as usize;
        let mut chain = Self {
            adjacency,
            beta,
            q,
            sigma,
            counts: Vec::new(),
            weights: vec![0.0; q],
            steps: 0,
        };
        chain.recount();
        Ok(chain)
    }

    fn recount(&mut self) {
        self.counts = vec![0; self.adjacency.len() * self.q];
        for v in 0..self.adjacency.len() {
            for &w in &self.adjacency[v] {
                self.counts[v * self.q + self.sigma.spin(w) as usize] += 1;
            }
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn config(&self) -> &PottsConfiguration {
        &self.sigma
    }

    /// Number of neighbours of `v` (with multiplicity, loops excluded) holding `spin`.
    pub fn neighbor_count(&self, v: usize, spin: u16) -> u32 {
        self.counts[v * self.q + spin as usize]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Resamples `σ_v` from `P(i) ∝ exp(β m_i(v))` by inverse CDF on `u`.
    pub fn potts_glauber_step(&mut self, v: usize, u: f64) {
        let row = &self.counts[v * self.q..(v + 1) * self.q];
        let top = *row.iter().max().expect("q >= 2") as f64;
        let mut total = 0.0;
        for (w, &c) in self.weights.iter_mut().zip(row) {
            *w = (self.beta * (c as f64 - top)).exp();
            total += *w;
        }
        let target = u * total;
        let mut acc = 0.0;
        let mut new = self.q - 1;
        for (i, &w) in self.weights.iter().enumerate() {
            acc += w;
            if target < acc {
                new = i;
                break;
            }
        }
        self.set_spin(v, new as u16);
        self.steps += 1;
    }

    /// Overwrites `σ_v`, keeping neighbour counts current.
    pub fn set_spin(&mut self, v: usize, spin: u16) {
        let old = self.sigma.spin(v);
        if old == spin {
            return;
        }
        self.sigma.set(v, spin);
        for &w in &self.adjacency[v] {
            self.counts[w * self.q + old as usize] -= 1;
            self.counts[w * self.q + spin as usize] += 1;
        }
    }

    /// One step at a uniformly chosen vertex.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let v = rng.random_range(0..self.n());
        let u = rng.random::<f64>();
        self.potts_glauber_step(v, u);
    }

    pub fn run<R: Rng + ?Sized>(&mut self, steps: u64, rng: &mut R) {
        for _ in 0..steps {
            self.step(rng);
        }
    }

    /// Replaces the whole configuration.
    pub fn replace(&mut self, sigma: PottsConfiguration) {
        assert_eq!(sigma.len(), self.n());
        assert_eq!(sigma.q() as usize, self.q);
        self.sigma = sigma;
        self.recount();
    }

    /// Whether the cached counts equal a fresh recount.
    pub fn counts_consistent(&self) -> bool {
        let mut copy = self.clone();
        copy.recount();
        copy.counts == self.counts
    }
}
