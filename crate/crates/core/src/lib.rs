//! Random-cluster (FK) and Potts model simulation on random graphs with
//! prescribed degree sequences.
//!
//! The crate is organised bottom-up:
//!
//! * [`graphs`]: degree sequences, the size-biased offspring law, configuration
//!   model and Poisson-cloned Erdős–Rényi generators, ball/treelike/volume checks.
//! * [`rc`]: random-cluster and Potts weights under boundary partitions, exact
//!   enumeration oracles and the Edwards–Sokal colouring.
//! * [`thresholds`]: the uniqueness threshold `p_u(q, γ)` and exact tree recursions.
//! * [`connectivity`]: cut-edge oracles (naive BFS and a poly-log dynamic
//!   connectivity structure).
//! * [`dynamics`]: FK Glauber dynamics, the grand monotone coupling, Potts Glauber
//!   and Swendsen–Wang.
//! * [`diagnostics`]: shattering, sparse induced boundaries, influence decay,
//!   mixing-time scaling and the Potts bottleneck.
//! * [`cli`]: the `fkmixer` experiment runner.

pub mod cli;
pub mod connectivity;
pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod graphs;
pub mod rc;
pub mod rng;
pub mod stats;
pub mod thresholds;

pub use error::{Error, Result};
