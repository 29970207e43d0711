use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::MultiGraph;
use crate::rc::UnionFind;

/// The ball `B_R(v)` with its induced edge set `E(B_R(v))`.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: usize,
    pub radius: usize,
    /// Global vertex ids in BFS order; `vertices[0] == center`.
    pub vertices: Vec<usize>,
    /// Distance from the centre, parallel to `vertices`.
    pub distances: Vec<usize>,
    /// Global ids of the vertices at distance exactly `radius`.
    pub boundary: Vec<usize>,
    /// Global indices of the edges with both endpoints in the ball.
    pub edges: Vec<usize>,
    /// The induced subgraph on local ids `0..vertices.len()`; its edge `i` is
    /// global edge `edges[i]`.
    pub subgraph: MultiGraph,
    local: HashMap<usize, usize>,
}

impl Ball {
    pub fn local_id(&self, global: usize) -> Option<usize> {
        self.local.get(&global).copied()
    }

    pub fn contains(&self, global: usize) -> bool {
        self.local.contains_key(&global)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `|E| − |V| + #components` of the induced subgraph.
    pub fn cycle_excess(&self) -> usize {
        cycle_excess(&self.subgraph)
    }
}

pub(crate) fn cycle_excess(g: &MultiGraph) -> usize {
    let mut uf = UnionFind::new(g.n());
    for &(u, v) in g.edges() {
        uf.union(u, v);
    }
    g.edge_count() + uf.count() - g.n()
}

/// BFS distances from `source` (`usize::MAX` when unreachable).
pub fn bfs_distances(g: &MultiGraph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn ball(g: &MultiGraph, center: usize, radius: usize) -> Ball {
    assert!(center < g.n(), "centre {center} outside graph");
    let mut local = HashMap::new();
    let mut vertices = vec![center];
    let mut distances = vec![0];
    local.insert(center, 0);
    let mut head = 0;
    while head < vertices.len() {
        let u = vertices[head];
        let du = distances[head];
        head += 1;
        if du == radius {
            continue;
        }
        for &(w, _) in g.neighbors(u) {
            if !local.contains_key(&w) {
                local.insert(w, vertices.len());
                vertices.push(w);
                distances.push(du + 1);
            }
        }
    }
    let boundary = vertices
        .iter()
        .zip(&distances)
        .filter(|&(_, &d)| d == radius)
        .map(|(&v, _)| v)
        .collect();
    let mut edges = Vec::new();
    let mut local_edges = Vec::new();
    let mut seen = HashSet::new();
    for &u in &vertices {
        for &(w, e) in g.neighbors(u) {
            if let Some(&lw) = local.get(&w) {
                if seen.insert(e) {
                    edges.push(e);
                    local_edges.push((local[&u], lw));
                }
            }
        }
    }
    let subgraph = MultiGraph::new(vertices.len(), local_edges).expect("local ids in range");
    Ball {
        center,
        radius,
        vertices,
        distances,
        boundary,
        edges,
        subgraph,
        local,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TreelikeReport {
    pub treelike: bool,
    pub max_excess: usize,
    pub worst_vertex: usize,
}

/// `(L, R)`-treelike: every `R`-ball has cycle excess at most `L`.
pub fn is_lr_treelike(g: &MultiGraph, max_excess: usize, radius: usize) -> TreelikeReport {
    let mut worst = (0, 0);
    for v in 0..g.n() {
        let ex = ball(g, v, radius).cycle_excess();
        if ex > worst.0 {
            worst = (ex, v);
        }
    }
    TreelikeReport {
        treelike: worst.0 <= max_excess,
        max_excess: worst.0,
        worst_vertex: worst.1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthReport {
    pub ok: bool,
    /// Inclusive integer radius window; `None` when empty.
    pub window: Option<(usize, usize)>,
    /// `(v, r, |B_r(v)|)` maximising `|B_r(v)| / γ^r` over the window.
    pub worst: Option<(usize, usize, usize)>,
}

/// `(γ, ε)`-volume growth: `|B_r(v)| ≤ γ^r` for all `v` and all integers
/// `r ∈ [ε log_γ n, ½ log_γ n]`.
pub fn has_volume_growth(g: &MultiGraph, gamma: f64, growth_eps: f64) -> GrowthReport {
    assert!(gamma > 1.0, "gamma must exceed 1");
    assert!(growth_eps > 0.0 && growth_eps < 0.5, "growth_eps must lie in (0, 1/2)");
    let log_n = (g.n() as f64).ln() / gamma.ln();
    let lo = (growth_eps * log_n).ceil().max(0.0) as usize;
    let hi = (0.5 * log_n).floor().max(0.0) as usize;
    if lo > hi || g.n() <= 1 {
        return GrowthReport {
            ok: true,
            window: None,
            worst: None,
        };
    }
    let mut ok = true;
    let mut worst: Option<(usize, usize, usize)> = None;
    let mut worst_ratio = f64::NEG_INFINITY;
    let mut dist = vec![usize::MAX; g.n()];
    let mut touched = Vec::new();
    let mut layer_sizes = vec![0usize; hi + 1];
    for v in 0..g.n() {
        layer_sizes.iter_mut().for_each(|c| *c = 0);
        dist[v] = 0;
        touched.push(v);
        let mut head = 0;
        while head < touched.len() {
            let u = touched[head];
            head += 1;
            layer_sizes[dist[u]] += 1;
            if dist[u] == hi {
                continue;
            }
            for &(w, _) in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    touched.push(w);
                }
            }
        }
        let mut size = 0;
        for (r, &layer) in layer_sizes.iter().enumerate() {
            size += layer;
            if r < lo {
                continue;
            }
            let bound = gamma.powi(r as i32);
            if size as f64 > bound {
                ok = false;
            }
            let ratio = size as f64 / bound;
            if ratio > worst_ratio {
                worst_ratio = ratio;
                worst = Some((v, r, size));
            }
        }
        for &u in &touched {
            dist[u] = usize::MAX;
        }
        touched.clear();
    }
    GrowthReport {
        ok,
        window: Some((lo, hi)),
        worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_zero() {
        let g = MultiGraph::path(3);
        let b = ball(&g, 1, 0);
        assert_eq!(b.vertices, vec![1]);
        assert!(b.edges.is_empty());
        assert_eq!(b.boundary, vec![1]);
    }

    #[test]
    fn path_and_triangle_balls() {
        let g = MultiGraph::path(3);
        let b = ball(&g, 1, 1);
        assert_eq!(b.len(), 3);
        assert_eq!(b.edges.len(), 2);
        let mut bd = b.boundary.clone();
        bd.sort();
        assert_eq!(bd, vec![0, 2]);

        let tri = MultiGraph::cycle(3);
        let b = ball(&tri, 0, 1);
        assert_eq!(b.edges.len(), 3, "edge {{1,2}} has both endpoints inside");
        let mut bd = b.boundary.clone();
        bd.sort();
        assert_eq!(bd, vec![1, 2]);
    }

    #[test]
    fn ball_keeps_loops_and_parallel_edges() {
        let g = MultiGraph::new(3, vec![(0, 0), (0, 1), (1, 0), (1, 2)]).unwrap();
        let b = ball(&g, 0, 1);
        let mut e = b.edges.clone();
        e.sort();
        assert_eq!(e, vec![0, 1, 2]);
        assert_eq!(b.subgraph.degree(b.local_id(0).unwrap()), 4);
    }

    #[test]
    fn treelike_examples() {
        let tree = MultiGraph::regular_tree(3, 3);
        for r in 0..4 {
            let rep = is_lr_treelike(&tree, 0, r);
            assert!(rep.treelike);
            assert_eq!(rep.max_excess, 0);
        }
        let tri = MultiGraph::cycle(3);
        assert!(!is_lr_treelike(&tri, 0, 1).treelike);
        assert_eq!(is_lr_treelike(&tri, 0, 1).max_excess, 1);
        assert!(is_lr_treelike(&tri, 1, 1).treelike);

        // bowtie: two triangles sharing vertex 0
        let bowtie =
            MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(ball(&bowtie, 0, 1).cycle_excess(), 2);
        assert!(!is_lr_treelike(&bowtie, 1, 1).treelike);
    }

    #[test]
    fn growth_examples() {
        // n = 3: window [ceil(0.4 * 1.58), floor(0.79)] = [1, 0] is empty
        let rep = has_volume_growth(&MultiGraph::path(3), 2.0, 0.4);
        assert!(rep.ok);
        assert!(rep.window.is_none());

        let star = MultiGraph::star(50);
        let rep = has_volume_growth(&star, 2.0, 0.1);
        assert!(!rep.ok);
        assert_eq!(rep.window, Some((1, 2)));
        let (v, r, size) = rep.worst.unwrap();
        assert_eq!((v, r, size), (0, 1, 51));

        // log2(65536) = 16, ε = 0.2 → window [4, 8]; 2r+1 ≤ 2^r there
        let cycle = MultiGraph::cycle(1 << 16);
        let rep = has_volume_growth(&cycle, 2.0, 0.2);
        assert_eq!(rep.window, Some((4, 8)));
        assert!(rep.ok);
    }

    #[test]
    fn validators_are_monotone() {
        let g = crate::graphs::sample_er_poisson_cloning(300, 2.5, 4).unwrap();
        for r in 1..4 {
            let reps: Vec<bool> = (0..6).map(|l| is_lr_treelike(&g, l, r).treelike).collect();
            assert!(reps.windows(2).all(|w| !w[0] || w[1]), "{reps:?}");
        }
        let reps: Vec<bool> = [1.5, 2.0, 3.0, 5.0, 9.0]
            .iter()
            .map(|&gm| has_volume_growth(&g, gm, 0.2).ok)
            .collect();
        assert!(reps.windows(2).all(|w| !w[0] || w[1]), "{reps:?}");
    }
}
