//! Degree sequences, random multigraph generators and structural validators.

mod branching;
mod degree;
mod generators;
mod multigraph;
mod reveal;
mod structure;

pub use branching::{gw_generation_sizes, Offspring};
pub use degree::{effective_offspring, truncated_sequence, DegreeSequence, OffspringDistribution};
pub use generators::{sample_configuration_model, sample_er_poisson_cloning, sample_simple_graph};
pub use multigraph::MultiGraph;
pub use reveal::reveal_ball;
pub use structure::{
    ball, bfs_distances, has_volume_growth, is_lr_treelike, Ball, GrowthReport, TreelikeReport,
};
