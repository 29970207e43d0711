use std::collections::VecDeque;

use super::{BoundaryPartition, RcConfiguration};
use crate::graphs::MultiGraph;

/// Partition of `ball` (local ids follow the slice order) in which two ball
/// vertices share a class iff they are joined by open edges outside `E(ball)`.
/// Edges with both endpoints in `ball` are ignored whatever their state.
pub fn induced_boundary(
    g: &MultiGraph,
    omega: &RcConfiguration,
    ball: &[usize],
) -> BoundaryPartition {
    let mut scratch = InducedBoundaryScratch::new(g.n());
    let labels = scratch.labels(g, omega, ball);
    BoundaryPartition::from_labels(labels)
}

/// Reusable buffers for computing many induced boundaries on one graph.
#[derive(Debug, Clone)]
pub struct InducedBoundaryScratch {
    in_ball: Vec<u32>,
    visited: Vec<u32>,
    stamp: u32,
    queue: VecDeque<usize>,
    local: Vec<usize>,
    labels: Vec<usize>,
}

impl InducedBoundaryScratch {
    pub fn new(n: usize) -> Self {
        Self {
            in_ball: vec![0; n],
            visited: vec![0; n],
            stamp: 0,
            queue: VecDeque::new(),
            local: vec![usize::MAX; n],
            labels: Vec::new(),
        }
    }

    /// Class label (smallest local id of the class) for each ball vertex.
    pub fn labels(&mut self, g: &MultiGraph, omega: &RcConfiguration, ball: &[usize]) -> &[usize] {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.in_ball.iter_mut().for_each(|x| *x = 0);
            self.visited.iter_mut().for_each(|x| *x = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        for (i, &v) in ball.iter().enumerate() {
            self.in_ball[v] = stamp;
            self.local[v] = i;
        }
        self.labels.clear();
        self.labels.resize(ball.len(), usize::MAX);
        for (i, &start) in ball.iter().enumerate() {
            if self.labels[i] != usize::MAX {
                continue;
            }
            self.labels[i] = i;
            self.visited[start] = stamp;
            self.queue.push_back(start);
            while let Some(x) = self.queue.pop_front() {
                let x_in = self.in_ball[x] == stamp;
                for &(y, e) in g.neighbors(x) {
                    if !omega.is_open(e) || (x_in && self.in_ball[y] == stamp) {
                        continue;
                    }
                    if self.visited[y] != stamp {
                        self.visited[y] = stamp;
                        if self.in_ball[y] == stamp {
                            self.labels[self.local[y]] = i;
                        }
                        self.queue.push_back(y);
                    }
                }
            }
        }
        &self.labels
    }

    /// Sparsity of the induced boundary.
    pub fn sparsity(&mut self, g: &MultiGraph, omega: &RcConfiguration, ball: &[usize]) -> usize {
        let labels = self.labels(g, omega, ball);
        let mut sizes = vec![0usize; labels.len()];
        for &l in labels {
            sizes[l] += 1;
        }
        sizes.iter().filter(|&&s| s >= 2).sum()
    }
}
