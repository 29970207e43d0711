//! Measurable counterparts of the theorems: shattering, sparse induced
//! boundaries, influence decay, mixing-time scaling and the Potts bottleneck.

mod bottleneck;
mod clusters;
mod influence;
mod mixing;
mod sparse;

pub use bottleneck::{
    bottleneck_escape, exact_conductance, in_bottleneck, BottleneckConfig, BottleneckReport,
    ConductanceReport, EscapeSample,
};
pub use clusters::{cluster_sizes, shatter_run, shatter_stats, ShatterReport, ShatterSample};
pub use influence::{
    influence_decay_exact, influence_profile, k_sparse_partitions, max_influence_over, InfluenceProfile,
    InfluenceReport, INFLUENCE_EDGE_CAP,
};
pub use mixing::{fit_log_scaling, mixing_scaling, GraphFamily, MixingReport, MixingRow};
pub use sparse::{kr_sparse_check, SparseReport};

/// Median of a sample in which `None` marks a censored (at least as large as
/// every observed value) entry; `None` when the middle lands on a censored one.
pub(crate) fn censored_median(values: &[Option<f64>]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v: Vec<f64> = values.iter().map(|x| x.unwrap_or(f64::INFINITY)).collect();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    let mid = if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    };
    mid.is_finite().then_some(mid)
}
