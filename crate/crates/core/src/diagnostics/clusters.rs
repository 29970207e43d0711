use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::FkChain;
use crate::error::Result;
use crate::graphs::MultiGraph;
use crate::rc::{BoundaryPartition, RcConfiguration, RcParams, UnionFind};
use crate::rng::SeedTree;

/// Sizes of the open clusters of `omega`, largest first.
pub fn cluster_sizes(g: &MultiGraph, omega: &RcConfiguration) -> Vec<usize> {
    let mut uf = UnionFind::new(g.n());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if omega.is_open(e) {
            uf.union(a, b);
        }
    }
    let mut sizes = Vec::new();
    for v in 0..g.n() {
        if uf.find(v) == v {
            sizes.push(uf.set_size(v));
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[derive(Debug, Clone, Serialize)]
pub struct ShatterSample {
    pub seed: u64,
    pub max_cluster: usize,
    /// `(cluster size, number of clusters of that size)`, increasing in size.
    pub histogram: Vec<(usize, usize)>,
    #[serde(skip)]
    pub final_config: RcConfiguration,
}

impl ShatterSample {
    /// Fraction of clusters of size at least `s`.
    pub fn tail_frequency(&self, s: usize) -> f64 {
        let total: usize = self.histogram.iter().map(|&(_, c)| c).sum();
        let tail: usize = self
            .histogram
            .iter()
            .filter(|&&(size, _)| size >= s)
            .map(|&(_, c)| c)
            .sum();
        tail as f64 / total.max(1) as f64
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShatterReport {
    pub n: usize,
    pub t: f64,
    pub p: f64,
    pub q: f64,
    pub samples: Vec<ShatterSample>,
}

impl ShatterReport {
    /// Number of samples whose largest cluster is at most `bound`.
    pub fn count_max_at_most(&self, bound: f64) -> usize {
        self.samples
            .iter()
            .filter(|s| s.max_cluster as f64 <= bound)
            .count()
    }

    /// CSV `seed,max_cluster,clusters`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,max_cluster,clusters\n");
        for s in &self.samples {
            let clusters: usize = s.histogram.iter().map(|&(_, c)| c).sum();
            let _ = writeln!(out, "{},{},{}", s.seed, s.max_cluster, clusters);
        }
        out
    }
}

/// Runs `X^1` (all open, free boundary) for time `t` with clocks from `seed`.
pub fn shatter_run(g: &MultiGraph, params: RcParams, t: f64, seed: u64) -> Result<ShatterSample> {
    let m = g.edge_count();
    let mut chain = FkChain::new(
        g,
        &BoundaryPartition::free(g.n()),
        params,
        &RcConfiguration::all_open(m),
    )?;
    chain.run_continuous(t, seed);
    let omega = chain.configuration();
    let sizes = cluster_sizes(g, &omega);
    let mut hist = BTreeMap::new();
    for &s in &sizes {
        *hist.entry(s).or_insert(0usize) += 1;
    }
    Ok(ShatterSample {
        seed,
        max_cluster: sizes.first().copied().unwrap_or(0),
        histogram: hist.into_iter().collect(),
        final_config: omega,
    })
}

/// [`shatter_run`] for `n_seeds` independent clock streams derived from `master_seed`.
pub fn shatter_stats(
    g: &MultiGraph,
    params: RcParams,
    t: f64,
    n_seeds: usize,
    master_seed: u64,
) -> Result<ShatterReport> {
    let tree = SeedTree::new(master_seed);
    let samples = (0..n_seeds as u64)
        .into_par_iter()
        .map(|i| shatter_run(g, params, t, tree.child_seed("shatter", i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ShatterReport {
        n: g.n(),
        t,
        p: params.p(),
        q: params.q(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_time_is_one_cluster() {
        let g = MultiGraph::cycle(30);
        let r = shatter_stats(&g, RcParams::new(0.5, 2.0).unwrap(), 0.0, 3, 1).unwrap();
        for s in &r.samples {
            assert_eq!(s.max_cluster, 30);
            assert_eq!(s.histogram, vec![(30, 1)]);
        }
    }

    #[test]
    fn sizes_sum_to_n_and_tails_decrease() {
        let g = MultiGraph::complete(12);
        let r = shatter_stats(&g, RcParams::new(0.1, 2.0).unwrap(), 5.0, 4, 2).unwrap();
        for s in &r.samples {
            let total: usize = s.histogram.iter().map(|&(size, c)| size * c).sum();
            assert_eq!(total, 12);
            for k in 1..12 {
                assert!(s.tail_frequency(k + 1) <= s.tail_frequency(k));
            }
        }
        assert!(r.to_csv().starts_with("seed,max_cluster,clusters\n"));
    }

    #[test]
    fn low_p_shatters() {
        let g = MultiGraph::cycle(200);
        let r = shatter_stats(&g, RcParams::new(0.01, 2.0).unwrap(), 20.0, 2, 3).unwrap();
        assert!(r.samples.iter().all(|s| s.max_cluster <= 4));
    }
}
