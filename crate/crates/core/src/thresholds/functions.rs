use crate::error::{Error, Result};
use crate::rc::RcParams;

/// `h(y) = (y−1)(y^γ + q − 1)/(y^γ − y)` for `y > 1`.
pub fn h_func(y: f64, q: f64, gamma: f64) -> Result<f64> {
    if !(y > 1.0) || !y.is_finite() {
        return Err(Error::invalid(format!("h needs y > 1, got {y}")));
    }
    if !(gamma > 1.0) {
        return Err(Error::invalid(format!("h needs gamma > 1, got {gamma}")));
    }
    Ok(h_log(y.ln(), q, gamma))
}

/// `h(e^s)` written to stay accurate as `s → 0`.
pub(crate) fn h_log(s: f64, q: f64, gamma: f64) -> f64 {
    let num = s.exp_m1() * ((gamma * s).exp() + q - 1.0);
    let den = s.exp() * ((gamma - 1.0) * s).exp_m1();
    num / den
}

/// `g(x) = (x + (q−1)(1−p)) / ((1−p)x + p + (q−1)(1−p))` for `x ≥ 1`,
/// with `g(+∞) = 1/(1−p)`.
pub fn g_func(x: f64, params: &RcParams) -> Result<f64> {
    if x.is_nan() || x < 1.0 {
        return Err(Error::invalid(format!("g needs x >= 1, got {x}")));
    }
    Ok(1.0 + g_excess(x - 1.0, params))
}

/// `g(1 + e) − 1`, accepting `e = +∞`. Working with the excess keeps small
/// connection probabilities free of cancellation.
pub fn g_excess(e: f64, params: &RcParams) -> f64 {
    let (p, q) = (params.p(), params.q());
    if e.is_infinite() {
        return p / (1.0 - p);
    }
    p * e / (q * (1.0 - p) + p + (1.0 - p) * e)
}
