use serde::Serialize;

use crate::error::{Error, Result};

/// Edge probability `p ∈ (0,1)`, cluster weight `q > 0` and the cut-edge
/// probability `p̂ = p / (q(1−p) + p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RcParams {
    p: f64,
    q: f64,
    phat: f64,
}

impl RcParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::invalid(format!("p must lie in (0,1), got {p}")));
        }
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::invalid(format!("q must be positive, got {q}")));
        }
        Ok(Self {
            p,
            q,
            phat: p / (q * (1.0 - p) + p),
        })
    }

    /// Parameters for the Potts model at inverse temperature `beta`: `p = 1 − e^{−β}`.
    pub fn from_beta(beta: f64, q: f64) -> Result<Self> {
        Self::new(-(-beta).exp_m1(), q)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn phat(&self) -> f64 {
        self.phat
    }

    /// `β = −ln(1 − p)`.
    pub fn beta(&self) -> f64 {
        -(-self.p).ln_1p()
    }
}
