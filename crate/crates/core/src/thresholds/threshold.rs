use serde::Serialize;

use super::functions::h_log;
use crate::error::{Error, Result};

const S_MIN: f64 = 1e-12;
const S_MAX: f64 = 20.0;
const GRID: usize = 4000;

/// Location and value of the threshold for one `(q, γ)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdPoint {
    pub q: f64,
    pub gamma: f64,
    pub p_u: f64,
    pub beta_u: f64,
    /// `p̂` evaluated at `p = p_u`.
    pub phat_at_pu: f64,
    pub inf_h: f64,
    /// Interior minimiser of `h`, or `None` when the infimum is the `y → 1` limit.
    pub minimizer: Option<f64>,
}

/// `p_u(q, γ) = 1 − 1/(1 + inf_{y>1} h(y))`.
pub fn p_u(q: f64, gamma: f64) -> Result<f64> {
    Ok(threshold_point(q, gamma)?.p_u)
}

/// `β_u = −ln(1 − p_u)`.
pub fn beta_u(q: f64, gamma: f64) -> Result<f64> {
    Ok(threshold_point(q, gamma)?.beta_u)
}

pub fn threshold_point(q: f64, gamma: f64) -> Result<ThresholdPoint> {
    if !(gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::invalid(format!("gamma must exceed 1, got {gamma}")));
    }
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::invalid(format!("q must be at least 1, got {q}")));
    }
    let h = |s: f64| h_log(s, q, gamma);
    let endpoint = q / (gamma - 1.0);
    let ratio = (S_MAX / S_MIN).ln() / (GRID - 1) as f64;
    let grid: Vec<f64> = (0..GRID).map(|i| S_MIN * (ratio * i as f64).exp()).collect();
    let best = (0..GRID)
        .min_by(|&a, &b| h(grid[a]).total_cmp(&h(grid[b])))
        .expect("grid is non-empty");
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(GRID - 1)];
    let s_star = golden_min(h, lo, hi);
    let interior = h(s_star);
    let (inf_h, minimizer) = if interior < endpoint - 1e-12 * endpoint {
        (interior, Some(s_star.exp()))
    } else {
        (endpoint, None)
    };
    let p_u = inf_h / (1.0 + inf_h);
    let phat_at_pu = p_u / (q * (1.0 - p_u) + p_u);
    Ok(ThresholdPoint {
        q,
        gamma,
        p_u,
        beta_u: (1.0 + inf_h).ln(),
        phat_at_pu,
        inf_h,
        minimizer,
    })
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

/// Supremum over `x ∈ (1, 10^4]` of `(g_p(x) − x^{1/γ}) / (x − 1)`.
///
/// The quotient has the same sign as `g_p(x) − x^{1/γ}` but does not vanish as
/// `x → 1`, where its limit is `p̂ − 1/γ`.
pub fn alternate_form_sup(p: f64, q: f64, gamma: f64) -> f64 {
    let quotient = |s: f64| {
        let x = s.exp();
        p / ((1.0 - p) * x + p + (q - 1.0) * (1.0 - p)) - (s / gamma).exp_m1() / s.exp_m1()
    };
    let s_max = 1e4f64.ln();
    let n = 2000;
    let ratio = (s_max / S_MIN).ln() / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| S_MIN * (ratio * i as f64).exp()).collect();
    let best = (0..n)
        .max_by(|&a, &b| quotient(grid[a]).total_cmp(&quotient(grid[b])))
        .expect("grid is non-empty");
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(n - 1)];
    let refined = golden_min(|s| -quotient(s), lo, hi);
    quotient(refined).max(quotient(grid[best]))
}

/// `true` iff `sup_{x>1} g_p(x) − x^{1/γ} ≤ 0` up to `1e-9`.
pub fn check_alternate_form(p: f64, q: f64, gamma: f64) -> bool {
    alternate_form_sup(p, q, gamma) <= 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force infimum of the textbook formula on a dense grid in y.
    fn brute_inf_h(q: f64, gamma: f64) -> f64 {
        let mut best = f64::INFINITY;
        for k in 0..200_000 {
            let y = 1.0 + 1e-7 * (1.0001f64).powi(k);
            if y > 1e6 {
                break;
            }
            let h = (y - 1.0) * (y.powf(gamma) + q - 1.0) / (y.powf(gamma) - y);
            best = best.min(h);
        }
        best
    }

    #[test]
    fn known_values() {
        assert!((p_u(1.0, 2.0).unwrap() - 0.5).abs() < 1e-10);
        assert!((p_u(2.0, 2.0).unwrap() - 2.0 / 3.0).abs() < 1e-10);
        assert!(p_u(2.0, 1.0).is_err());
        assert!(p_u(0.5, 2.0).is_err());
    }

    #[test]
    fn against_brute_force() {
        for &(q, gamma) in &[(3.0, 2.0), (5.0, 3.0), (1.5, 1.5), (4.0, 5.0)] {
            let inf = brute_inf_h(q, gamma);
            let t = threshold_point(q, gamma).unwrap();
            assert!(t.inf_h <= inf + 1e-9, "{q} {gamma}: {} vs {inf}", t.inf_h);
            assert!(t.inf_h >= inf - 1e-6);
        }
    }

    #[test]
    fn endpoint_bound_and_beta() {
        for q in [1.0, 1.5, 2.0, 3.0, 5.0] {
            for gamma in [1.5, 2.0, 3.0, 5.0] {
                let t = threshold_point(q, gamma).unwrap();
                assert!(t.p_u <= q / (q + gamma - 1.0) + 1e-12);
                assert!((t.beta_u + (1.0 - t.p_u).ln()).abs() < 1e-12);
                assert!(t.phat_at_pu <= 1.0 / gamma + 1e-9);
            }
        }
    }

    #[test]
    fn alternate_form_examples() {
        assert!(check_alternate_form(0.5, 2.0, 2.0));
        assert!(!check_alternate_form(0.7, 2.0, 2.0));
        let pu = p_u(3.0, 2.0).unwrap();
        assert!(check_alternate_form(pu - 1e-6, 3.0, 2.0));
        assert!(!check_alternate_form(pu + 1e-6, 3.0, 2.0));
    }
}
