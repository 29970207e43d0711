use rand::Rng;

use super::{ball, Ball, DegreeSequence, MultiGraph};
use crate::error::{Error, Result};
use crate::rng;

/// Breadth-first revealing of `B_r(v)` in the configuration model.
///
/// Only the half-edges of vertices within distance `r` of `v` are matched, each
/// to a uniformly chosen unmatched half-edge; the rest of the matching is never
/// drawn. The returned ball has the same law as the ball read off a fully
/// sampled configuration model.
pub fn reveal_ball(dn: &DegreeSequence, center: usize, radius: usize, seed: u64) -> Result<Ball> {
    if !dn.has_even_sum() {
        return Err(Error::invalid("degree sum is odd"));
    }
    if center >= dn.len() {
        return Err(Error::invalid(format!("centre {center} outside 0..{}", dn.len())));
    }
    let mut rng = rng::substream(seed, "bfs-reveal");
    let n = dn.len();
    let mut first_stub = Vec::with_capacity(n + 1);
    let mut owner = Vec::with_capacity(dn.total());
    for (v, &d) in dn.degrees().iter().enumerate() {
        first_stub.push(owner.len());
        owner.extend(std::iter::repeat_n(v, d));
    }
    first_stub.push(owner.len());

    // unmatched stubs with O(1) removal
    let mut pool: Vec<usize> = (0..owner.len()).collect();
    let mut pos: Vec<usize> = (0..owner.len()).collect();
    let remove = |pool: &mut Vec<usize>, pos: &mut Vec<usize>, s: usize| {
        let i = pos[s];
        let last = *pool.last().expect("stub present");
        pool.swap_remove(i);
        if last != s {
            pos[last] = i;
        }
        pos[s] = usize::MAX;
    };

    let mut dist = vec![usize::MAX; n];
    dist[center] = 0;
    let mut order = vec![center];
    let mut edges = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        if dist[u] > radius {
            continue;
        }
        for s in first_stub[u]..first_stub[u + 1] {
            if pos[s] == usize::MAX {
                continue;
            }
            remove(&mut pool, &mut pos, s);
            let partner = pool[rng.random_range(0..pool.len())];
            remove(&mut pool, &mut pos, partner);
            let w = owner[partner];
            edges.push((u, w));
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                order.push(w);
            }
        }
    }
    let partial = MultiGraph::new(n, edges)?;
    Ok(ball(&partial, center, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn key(b: &Ball) -> Vec<(usize, usize)> {
        let mut k: Vec<(usize, usize)> = b
            .subgraph
            .edges()
            .iter()
            .map(|&(a, c)| {
                let (x, y) = (b.vertices[a], b.vertices[c]);
                (x.min(y), x.max(y))
            })
            .collect();
        k.sort();
        k
    }

    fn perfect_matchings(stubs: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if stubs.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        let first = stubs[0];
        for i in 1..stubs.len() {
            let rest: Vec<usize> = stubs[1..]
                .iter()
                .enumerate()
                .filter(|&(j, _)| j + 1 != i)
                .map(|(_, &s)| s)
                .collect();
            for mut m in perfect_matchings(&rest) {
                m.push((first, stubs[i]));
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn revealing_matches_full_matching_law() {
        let cases: [(&[usize], usize, usize); 3] =
            [(&[2, 2, 1, 1], 0, 1), (&[3, 2, 2, 1, 1, 1], 0, 2), (&[1, 2, 3, 2, 2], 2, 1)];
        for (degrees, center, radius) in cases {
            let dn = DegreeSequence::new(degrees.to_vec()).unwrap();
            let mut owner = Vec::new();
            for (v, &d) in degrees.iter().enumerate() {
                owner.extend(std::iter::repeat_n(v, d));
            }
            let stubs: Vec<usize> = (0..owner.len()).collect();
            let matchings = perfect_matchings(&stubs);
            let mut exact: HashMap<Vec<(usize, usize)>, f64> = HashMap::new();
            let w = 1.0 / matchings.len() as f64;
            for m in &matchings {
                let edges = m.iter().map(|&(a, b)| (owner[a], owner[b])).collect();
                let g = MultiGraph::new(degrees.len(), edges).unwrap();
                *exact.entry(key(&ball(&g, center, radius))).or_default() += w;
            }
            let trials = 40_000u64;
            let mut freq: HashMap<Vec<(usize, usize)>, f64> = HashMap::new();
            for seed in 0..trials {
                let b = reveal_ball(&dn, center, radius, seed).unwrap();
                *freq.entry(key(&b)).or_default() += 1.0 / trials as f64;
            }
            for (k, p) in &exact {
                let f = freq.get(k).copied().unwrap_or(0.0);
                let sigma = (p * (1.0 - p) / trials as f64).sqrt();
                assert!((f - p).abs() <= 4.0 * sigma + 1e-12, "{k:?}: {f} vs {p}");
            }
            assert!(freq.keys().all(|k| exact.contains_key(k)));
        }
    }
}
