use std::fmt::Write as _;

use rayon::prelude::*;

use super::{BoundaryPartition, RcConfiguration, RcParams, UnionFind};
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::stats::log_sum_exp;

/// Largest edge count accepted by [`exact_rc_distribution`].
pub const DEFAULT_EDGE_CAP: usize = 22;

const PARALLEL_FROM: usize = 12;

/// `c(ω;ξ)`: components of the open subgraph after merging each boundary class.
pub fn component_count(g: &MultiGraph, bc: &BoundaryPartition, omega: &RcConfiguration) -> usize {
    assert_eq!(bc.universe(), g.n(), "boundary universe must match vertex count");
    assert_eq!(omega.len(), g.edge_count(), "configuration size must match edge count");
    let mut uf = UnionFind::new(g.n());
    count_with(g, bc, &mut uf, |e| omega.is_open(e))
}

fn count_with(
    g: &MultiGraph,
    bc: &BoundaryPartition,
    uf: &mut UnionFind,
    open: impl Fn(usize) -> bool,
) -> usize {
    uf.reset();
    bc.apply_to(uf);
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if open(e) {
            uf.union(a, b);
        }
    }
    uf.count()
}

/// `ln( p^{|ω|} (1−p)^{|E|−|ω|} q^{c(ω;ξ)} )`.
pub fn rc_weight(
    g: &MultiGraph,
    bc: &BoundaryPartition,
    params: &RcParams,
    omega: &RcConfiguration,
) -> f64 {
    let c = component_count(g, bc, omega);
    let k = omega.open_count();
    log_weight(params, g.edge_count(), k, c)
}

fn log_weight(params: &RcParams, m: usize, open: usize, comps: usize) -> f64 {
    let p = params.p();
    open as f64 * p.ln() + (m - open) as f64 * (-p).ln_1p() + comps as f64 * params.q().ln()
}

/// Normalized random-cluster law over all `2^|E|` configurations, indexed by
/// bitmask (bit `e` set iff edge `e` is open).
#[derive(Debug, Clone)]
pub struct RcDistribution {
    edge_count: usize,
    log_weights: Vec<f64>,
    probs: Vec<f64>,
    log_partition: f64,
}

pub fn exact_rc_distribution(
    g: &MultiGraph,
    bc: &BoundaryPartition,
    params: &RcParams,
) -> Result<RcDistribution> {
    exact_rc_distribution_capped(g, bc, params, DEFAULT_EDGE_CAP)
}

pub fn exact_rc_distribution_capped(
    g: &MultiGraph,
    bc: &BoundaryPartition,
    params: &RcParams,
    edge_cap: usize,
) -> Result<RcDistribution> {
    let m = g.edge_count();
    if m > edge_cap.min(40) {
        return Err(Error::TooLarge {
            what: "edges for exact enumeration",
            size: m as u64,
            cap: edge_cap.min(40) as u64,
        });
    }
    if bc.universe() != g.n() {
        return Err(Error::invalid(format!(
            "boundary universe {} does not match vertex count {}",
            bc.universe(),
            g.n()
        )));
    }
    let weight = |uf: &mut UnionFind, mask: u64| {
        let c = count_with(g, bc, uf, |e| mask >> e & 1 == 1);
        log_weight(params, m, mask.count_ones() as usize, c)
    };
    let total = 1u64 << m;
    let log_weights: Vec<f64> = if m >= PARALLEL_FROM {
        (0..total)
            .into_par_iter()
            .map_init(|| UnionFind::new(g.n()), |uf, mask| weight(uf, mask))
            .collect()
    } else {
        let mut uf = UnionFind::new(g.n());
        (0..total).map(|mask| weight(&mut uf, mask)).collect()
    };
    let log_partition = log_sum_exp(&log_weights);
    let probs = log_weights
        .iter()
        .map(|w| (w - log_partition).exp())
        .collect();
    Ok(RcDistribution {
        edge_count: m,
        log_weights,
        probs,
        log_partition,
    })
}

impl RcDistribution {
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    pub fn prob(&self, omega: &RcConfiguration) -> f64 {
        self.probs[omega.to_mask() as usize]
    }

    /// `P(A)` for an event given as a predicate on bitmasks.
    pub fn event_prob(&self, event: impl Fn(u64) -> bool) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|&(mask, _)| event(mask as u64))
            .map(|(_, p)| p)
            .sum()
    }

    /// `P(e open)` for each edge.
    pub fn edge_marginals(&self) -> Vec<f64> {
        (0..self.edge_count)
            .map(|e| self.event_prob(|mask| mask >> e & 1 == 1))
            .collect()
    }

    /// Law of the states of `edges`, indexed by a bitmask over positions in `edges`.
    pub fn marginal_on(&self, edges: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << edges.len()];
        for (mask, &p) in self.probs.iter().enumerate() {
            let sub = edges
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, &e)| acc | (mask >> e & 1) << i);
            out[sub] += p;
        }
        out
    }

    /// Probability that `u` and `v` are joined by an open path.
    pub fn pair_connectivity(&self, g: &MultiGraph, u: usize, v: usize) -> f64 {
        self.set_connectivity(g, u, &[v])
    }

    /// Probability that `u` is joined by an open path to some vertex of `targets`.
    pub fn set_connectivity(&self, g: &MultiGraph, u: usize, targets: &[usize]) -> f64 {
        let free = BoundaryPartition::free(g.n());
        let mut uf = UnionFind::new(g.n());
        let mut total = 0.0;
        for (mask, &p) in self.probs.iter().enumerate() {
            count_with(g, &free, &mut uf, |e| mask >> e & 1 == 1);
            if targets.iter().any(|&t| uf.same(u, t)) {
                total += p;
            }
        }
        total
    }

    /// CSV with header `config_bitmask,log_weight,probability`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("config_bitmask,log_weight,probability\n");
        for (mask, (w, p)) in self.log_weights.iter().zip(&self.probs).enumerate() {
            let _ = writeln!(out, "{mask},{w},{p}");
        }
        out
    }
}
