//! The uniqueness threshold `p_u(q, γ)`, the `g`/`h` functionals and exact
//! root-connectivity recursions on finite trees.

mod decay;
mod functions;
mod threshold;
mod tree;

pub use decay::{decay_fit, DecayFit};
pub use functions::{g_func, g_excess, h_func};
pub use threshold::{
    alternate_form_sup, beta_u, check_alternate_form, p_u, threshold_point, ThresholdPoint,
};
pub use tree::{
    regular_tree_phi, regular_tree_point_to_point, tree_phi, tree_phi_logz, tree_point_to_point,
    TreeSpec,
};
