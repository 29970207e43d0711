use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rc::{exact_rc_distribution_capped, BoundaryPartition, RcParams};
use crate::stats::total_variation;
use crate::thresholds::{decay_fit, DecayFit};

/// Largest ball (in edges) accepted by the exact influence computations.
pub const INFLUENCE_EDGE_CAP: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct InfluenceReport {
    /// TV distance on `ω(E_v)` for each boundary pair, in input order.
    pub tvs: Vec<f64>,
    pub max_tv: f64,
    pub argmax: usize,
}

/// Exact total-variation distance between the laws of the edges at `center`
/// under the two boundary conditions of each pair.
pub fn influence_decay_exact(
    ball: &MultiGraph,
    center: usize,
    pairs: &[(BoundaryPartition, BoundaryPartition)],
    params: &RcParams,
) -> Result<InfluenceReport> {
    if pairs.is_empty() {
        return Err(Error::invalid("no boundary pairs given"));
    }
    let incident = ball.incident_edges(center);
    let marginal = |bc: &BoundaryPartition| -> Result<Vec<f64>> {
        let d = exact_rc_distribution_capped(ball, bc, params, INFLUENCE_EDGE_CAP)?;
        Ok(d.marginal_on(&incident))
    };
    let mut tvs = Vec::with_capacity(pairs.len());
    for (xi, tau) in pairs {
        tvs.push(total_variation(&marginal(xi)?, &marginal(tau)?));
    }
    let (argmax, &max_tv) = tvs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("pairs is non-empty");
    Ok(InfluenceReport {
        tvs,
        max_tv,
        argmax,
    })
}

/// Largest [`influence_decay_exact`] distance over all pairs drawn from `family`,
/// computing each marginal once. Returns the distance and the pair's indices.
pub fn max_influence_over(
    ball: &MultiGraph,
    center: usize,
    family: &[BoundaryPartition],
    params: &RcParams,
) -> Result<(f64, (usize, usize))> {
    let incident = ball.incident_edges(center);
    let marginals = family
        .iter()
        .map(|bc| {
            exact_rc_distribution_capped(ball, bc, params, INFLUENCE_EDGE_CAP)
                .map(|d| d.marginal_on(&incident))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = (0.0, (0, 0));
    for i in 0..marginals.len() {
        for j in i + 1..marginals.len() {
            let tv = total_variation(&marginals[i], &marginals[j]);
            if tv > best.0 {
                best = (tv, (i, j));
            }
        }
    }
    Ok(best)
}

/// All partitions of `vertices` (inside a universe of `universe` vertices) whose
/// non-singleton classes cover at most `k` vertices.
pub fn k_sparse_partitions(universe: usize, vertices: &[usize], k: usize) -> Vec<BoundaryPartition> {
    fn go(
        i: usize,
        vertices: &[usize],
        k: usize,
        classes: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        // every open class ends with at least two vertices
        let covered: usize = classes.iter().map(|c| c.len().max(2)).sum();
        if covered > k {
            return;
        }
        if i == vertices.len() {
            if classes.iter().all(|c| c.len() >= 2) {
                out.push(classes.clone());
            }
            return;
        }
        let v = vertices[i];
        // v stays a singleton
        go(i + 1, vertices, k, classes, out);
        for c in 0..classes.len() {
            classes[c].push(v);
            go(i + 1, vertices, k, classes, out);
            classes[c].pop();
        }
        classes.push(vec![v]);
        go(i + 1, vertices, k, classes, out);
        classes.pop();
    }
    let mut raw = Vec::new();
    go(0, vertices, k, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|classes| {
            BoundaryPartition::from_classes(universe, classes).expect("classes are disjoint")
        })
        .collect()
}

/// Largest influence per radius and its decay across radii.
#[derive(Debug, Clone, Serialize)]
pub struct InfluenceProfile {
    pub points: Vec<(usize, f64)>,
    pub strictly_decreasing: bool,
    pub fit: Option<DecayFit>,
}

pub fn influence_profile(points: Vec<(usize, f64)>) -> InfluenceProfile {
    let strictly_decreasing = points.windows(2).all(|w| w[1].1 < w[0].1);
    let fit = decay_fit(&points).ok();
    InfluenceProfile {
        points,
        strictly_decreasing,
        fit,
    }
}
