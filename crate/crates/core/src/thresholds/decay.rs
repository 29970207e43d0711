use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::linear_fit;

/// Least-squares fit of `log φ` against `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayFit {
    /// `exp(slope)`.
    pub theta: f64,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Points discarded because `φ = 0`.
    pub dropped: usize,
}

pub fn decay_fit(phis: &[(usize, f64)]) -> Result<DecayFit> {
    let kept: Vec<(f64, f64)> = phis
        .iter()
        .filter(|&&(_, phi)| phi > 0.0)
        .map(|&(h, phi)| (h as f64, phi.ln()))
        .collect();
    if kept.len() < 3 {
        return Err(Error::invalid(format!(
            "decay fit needs at least 3 positive values, got {}",
            kept.len()
        )));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = kept.into_iter().unzip();
    let fit = linear_fit(&xs, &ys).ok_or_else(|| Error::invalid("heights must not all coincide"))?;
    Ok(DecayFit {
        theta: fit.slope.exp(),
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        dropped: phis.len() - xs.len(),
    })
}
