use serde::Serialize;

use crate::graphs::MultiGraph;
use crate::rc::{InducedBoundaryScratch, RcConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SparseReport {
    /// Every ball's induced boundary has sparsity at most `K`.
    pub ok: bool,
    pub max_sparsity: usize,
    pub argmax: usize,
}

/// Sparsity of the boundary induced on every `B_R(v)` by the open edges outside it.
pub fn kr_sparse_check(g: &MultiGraph, omega: &RcConfiguration, k: usize, r: usize) -> SparseReport {
    let n = g.n();
    let mut scratch = InducedBoundaryScratch::new(n);
    let mut dist = vec![usize::MAX; n];
    let mut ball = Vec::new();
    let mut best = (0usize, 0usize);
    for v in 0..n {
        ball.clear();
        ball.push(v);
        dist[v] = 0;
        let mut i = 0;
        while i < ball.len() {
            let x = ball[i];
            i += 1;
            if dist[x] == r {
                continue;
            }
            for &(y, _) in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    ball.push(y);
                }
            }
        }
        let s = scratch.sparsity(g, omega, &ball);
        if s > best.0 {
            best = (s, v);
        }
        for &x in &ball {
            dist[x] = usize::MAX;
        }
    }
    SparseReport {
        ok: best.0 <= k,
        max_sparsity: best.0,
        argmax: best.1,
    }
}
