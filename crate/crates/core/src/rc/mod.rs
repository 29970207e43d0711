//! Random-cluster and Potts measures, boundary partitions, exact enumeration
//! oracles and the Edwards–Sokal colouring.

mod boundary;
mod config;
mod edwards_sokal;
mod measure;
mod params;
mod partition;
mod potts;
mod union_find;

pub use boundary::{induced_boundary, InducedBoundaryScratch};
pub use config::{PottsConfiguration, RcConfiguration};
pub use edwards_sokal::{es_coloring, es_coloring_with, es_pushforward};
pub use measure::{
    component_count, exact_rc_distribution, exact_rc_distribution_capped, rc_weight,
    RcDistribution, DEFAULT_EDGE_CAP,
};
pub use params::RcParams;
pub use partition::{partition_distance, sparsity, BoundaryPartition};
pub use potts::{exact_potts_distribution, potts_energy, potts_weight, PottsDistribution, POTTS_STATE_CAP};
pub use union_find::UnionFind;
