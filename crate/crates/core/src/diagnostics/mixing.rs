use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::censored_median;
use crate::dynamics::coupling_time;
use crate::error::{Error, Result};
use crate::graphs::{sample_configuration_model, sample_er_poisson_cloning, DegreeSequence, MultiGraph};
use crate::rc::{BoundaryPartition, RcParams};
use crate::rng::SeedTree;
use crate::stats::{linear_fit, LineFit};

/// Random graph ensembles indexed by vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamily {
    /// Poisson-cloned Erdős–Rényi graph with mean degree `gamma`.
    ErdosRenyi { gamma: f64 },
    /// Configuration model with every degree equal to `degree`.
    Regular { degree: usize },
    /// One edge, whatever `n` is.
    SingleEdge,
}

impl GraphFamily {
    pub fn sample(&self, n: usize, seed: u64) -> Result<MultiGraph> {
        match *self {
            GraphFamily::ErdosRenyi { gamma } => sample_er_poisson_cloning(n, gamma, seed),
            GraphFamily::Regular { degree } => {
                sample_configuration_model(&DegreeSequence::regular(n, degree)?, seed)
            }
            GraphFamily::SingleEdge => Ok(MultiGraph::path(2)),
        }
    }

    /// Mean of the effective offspring law, the `γ` of the threshold.
    pub fn gamma(&self) -> Option<f64> {
        match *self {
            GraphFamily::ErdosRenyi { gamma } => Some(gamma),
            GraphFamily::Regular { degree } => Some(degree as f64 - 1.0),
            GraphFamily::SingleEdge => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingRow {
    pub n: usize,
    pub mean_edges: f64,
    pub median: Option<f64>,
    pub iqr: Option<f64>,
    pub timeouts: usize,
    /// Coupling time per seed; `None` marks a timeout.
    pub times: Vec<Option<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MixingReport {
    pub rows: Vec<MixingRow>,
    /// Median coupling time against `ln n`.
    pub fit: Option<LineFit>,
    pub t_max: f64,
}

impl MixingReport {
    /// `median(last n) / median(first n)`.
    pub fn ratio_last_first(&self) -> Option<f64> {
        Some(self.rows.last()?.median? / self.rows.first()?.median?)
    }

    pub fn medians_increasing(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| matches!((w[0].median, w[1].median), (Some(a), Some(b)) if b > a))
    }

    /// CSV `n,median_coupling_time,iqr`; censored cells are empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,median_coupling_time,iqr\n");
        let cell = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.n, cell(r.median), cell(r.iqr));
        }
        out
    }
}

/// Least-squares fit of `times` against `ln n`.
pub fn fit_log_scaling(ns: &[usize], times: &[f64]) -> Option<LineFit> {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    linear_fit(&xs, times)
}

fn censored_quantile(values: &[Option<f64>], prob: f64) -> Option<f64> {
    let mut v: Vec<f64> = values.iter().map(|x| x.unwrap_or(f64::INFINITY)).collect();
    v.sort_by(f64::total_cmp);
    let pos = prob * (v.len().checked_sub(1)?) as f64;
    let (lo, hi) = (v[pos.floor() as usize], v[pos.ceil() as usize]);
    if !hi.is_finite() {
        return None;
    }
    Some(lo + (hi - lo) * pos.fract())
}

/// Median continuous-time coupling time of the extreme chains for each `n`,
/// with fresh graphs and clocks per seed, all derived from `master_seed`.
pub fn mixing_scaling(
    ns: &[usize],
    family: GraphFamily,
    params: RcParams,
    seeds: usize,
    t_max: f64,
    master_seed: u64,
) -> Result<MixingReport> {
    if seeds == 0 {
        return Err(Error::invalid("at least one seed is needed"));
    }
    let tree = SeedTree::new(master_seed);
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let runs = (0..seeds as u64)
            .into_par_iter()
            .map(|s| {
                let index = (n as u64) << 24 | s;
                let g = family.sample(n, tree.child_seed("graph", index))?;
                let bc = BoundaryPartition::free(g.n());
                let t = coupling_time(&g, &bc, params, tree.child_seed("coupling", index), t_max)?;
                Ok((g.edge_count(), t.time()))
            })
            .collect::<Result<Vec<_>>>()?;
        let times: Vec<Option<f64>> = runs.iter().map(|r| r.1).collect();
        let iqr = censored_quantile(&times, 0.75)
            .and_then(|hi| Some(hi - censored_quantile(&times, 0.25)?));
        rows.push(MixingRow {
            n,
            mean_edges: runs.iter().map(|r| r.0 as f64).sum::<f64>() / seeds as f64,
            median: censored_median(&times),
            iqr,
            timeouts: times.iter().filter(|t| t.is_none()).count(),
            times,
        });
    }
    let (fit_ns, fit_ts): (Vec<usize>, Vec<f64>) =
        rows.iter().filter_map(|r| Some((r.n, r.median?))).unzip();
    Ok(MixingReport {
        fit: fit_log_scaling(&fit_ns, &fit_ts),
        rows,
        t_max,
    })
}
