use rand::Rng;

use super::functions::g_excess;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rc::{BoundaryPartition, RcParams};

/// A finite rooted tree with a designated height `h`; the boundary is the set
/// of vertices at depth exactly `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSpec {
    parents: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    order: Vec<usize>,
    root: usize,
    height: usize,
    boundary: Vec<usize>,
}

impl TreeSpec {
    pub fn new(parents: Vec<Option<usize>>, height: usize) -> Result<Self> {
        let n = parents.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parents[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::invalid(format!(
                "a tree needs exactly one root, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::invalid(format!("parent {p} out of range")));
                }
                children[p].push(v);
            }
        }
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                order.push(c);
            }
            i += 1;
        }
        if order.len() != n {
            return Err(Error::invalid("parent array contains a cycle"));
        }
        if let Some(v) = (0..n).find(|&v| depth[v] > height) {
            return Err(Error::invalid(format!(
                "vertex {v} has depth {} beyond height {height}",
                depth[v]
            )));
        }
        let boundary = (0..n).filter(|&v| depth[v] == height).collect();
        Ok(Self {
            parents,
            children,
            depth,
            order,
            root,
            height,
            boundary,
        })
    }

    /// Complete `branching`-ary tree; labels in breadth-first order, root 0.
    pub fn regular(branching: usize, height: usize) -> Self {
        let g = MultiGraph::regular_tree(branching, height);
        let mut parents = vec![None; g.n()];
        for &(a, b) in g.edges() {
            parents[b] = Some(a);
        }
        Self::new(parents, height).expect("regular tree is well formed")
    }

    /// Random recursive tree with `edges` edges; the height is the largest depth.
    pub fn random<R: Rng + ?Sized>(edges: usize, rng: &mut R) -> Self {
        let mut parents = vec![None];
        let mut depth = vec![0usize];
        for v in 1..=edges {
            let p = rng.random_range(0..v);
            parents.push(Some(p));
            depth.push(depth[p] + 1);
        }
        let height = depth.iter().copied().max().unwrap_or(0);
        Self::new(parents, height).expect("recursive tree is well formed")
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.depth[v] == self.height
    }

    /// The tree as a multigraph, one edge `(parent, child)` per non-root vertex
    /// in increasing child order.
    pub fn to_graph(&self) -> MultiGraph {
        let edges = (0..self.len())
            .filter_map(|v| self.parents[v].map(|p| (p, v)))
            .collect();
        MultiGraph::new(self.len(), edges).expect("tree edges are in range")
    }

    /// All boundary vertices in one class.
    pub fn wired_boundary(&self) -> BoundaryPartition {
        BoundaryPartition::wired(self.len(), &self.boundary).expect("boundary is in range")
    }

    /// Leaves-first traversal.
    fn bottom_up(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().rev().copied()
    }
}

/// `π^1(ρ ↔ ∂T_h)` under the wired boundary through `f(v) = ∏ g(f(w))`.
///
/// Each `f` is stored as its excess `f − 1 ∈ [0, +∞]`, `+∞` marking boundary
/// vertices.
pub fn tree_phi(tree: &TreeSpec, params: &RcParams) -> f64 {
    let mut excess = vec![0.0f64; tree.len()];
    for v in tree.bottom_up() {
        excess[v] = if tree.is_boundary(v) {
            f64::INFINITY
        } else {
            let log_f: f64 = tree
                .children(v)
                .iter()
                .map(|&w| g_excess(excess[w], params).ln_1p())
                .sum();
            log_f.exp_m1()
        };
    }
    phi_from_excess(excess[tree.root()], params.q())
}

fn phi_from_excess(e: f64, q: f64) -> f64 {
    if e.is_infinite() {
        1.0
    } else {
        e / (e + q)
    }
}

/// Normalised `(Z_1, Z_0)` of a subtree and the mean number of boundary
/// vertices joined to its root, on the same scale.
#[derive(Debug, Clone, Copy)]
struct Partial {
    z1: f64,
    z0: f64,
    s: f64,
}

const BOUNDARY_LEAF: Partial = Partial {
    z1: 1.0,
    z0: 0.0,
    s: 1.0,
};
const INNER_LEAF: Partial = Partial {
    z1: 0.0,
    z0: 1.0,
    s: 0.0,
};

/// Combines children states through `Z_1 = ∏(Z_1 + tZ_0) − ∏((1−p)Z_1 + tZ_0)`,
/// `Z_0 = q ∏((1−p)Z_1 + tZ_0)` with `t = p/q + 1 − p`.
fn combine<'a>(kids: impl Iterator<Item = (&'a Partial, usize)>, params: &RcParams) -> Partial {
    let (p, q) = (params.p(), params.q());
    let t = p / q + 1.0 - p;
    let mut log_ratio = 0.0;
    let mut s_sum = 0.0;
    let mut any = false;
    for (k, mult) in kids {
        any = true;
        let a = k.z1 + t * k.z0;
        log_ratio += mult as f64 * (-p * k.z1 / a).ln_1p();
        s_sum += mult as f64 * k.s / a;
    }
    if !any {
        return INNER_LEAF;
    }
    let a = -log_ratio.exp_m1();
    let b = q * log_ratio.exp();
    Partial {
        z1: a / (a + b),
        z0: b / (a + b),
        s: p * s_sum / (a + b),
    }
}

/// Second evaluation of `π^1(ρ ↔ ∂T_h)` through the `Z_1/Z_0` recurrence.
pub fn tree_phi_logz(tree: &TreeSpec, params: &RcParams) -> f64 {
    tree_partials(tree, params).z1
}

/// Mean over `u ∈ ∂T_h` of `π^1(ρ ↔ u)`, the probability of an open path from
/// the root to one boundary vertex.
pub fn tree_point_to_point(tree: &TreeSpec, params: &RcParams) -> f64 {
    if tree.boundary().is_empty() {
        return 0.0;
    }
    tree_partials(tree, params).s / tree.boundary().len() as f64
}

fn tree_partials(tree: &TreeSpec, params: &RcParams) -> Partial {
    let mut state = vec![INNER_LEAF; tree.len()];
    for v in tree.bottom_up() {
        state[v] = if tree.is_boundary(v) {
            BOUNDARY_LEAF
        } else {
            combine(tree.children(v).iter().map(|&w| (&state[w], 1)), params)
        };
    }
    state[tree.root()]
}

/// [`tree_phi`] on the complete `branching`-ary tree, one value per level.
pub fn regular_tree_phi(branching: usize, height: usize, params: &RcParams) -> f64 {
    let mut e = f64::INFINITY;
    for _ in 0..height {
        if branching == 0 {
            e = 0.0;
            break;
        }
        e = (branching as f64 * g_excess(e, params).ln_1p()).exp_m1();
    }
    phi_from_excess(e, params.q())
}

/// [`tree_point_to_point`] on the complete `branching`-ary tree.
pub fn regular_tree_point_to_point(branching: usize, height: usize, params: &RcParams) -> f64 {
    let mut state = BOUNDARY_LEAF;
    for _ in 0..height {
        state = combine(std::iter::once((&state, branching)), params);
    }
    state.s / (branching as f64).powi(height as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rc::exact_rc_distribution;
    use crate::rng::from_seed;

    fn params(p: f64, q: f64) -> RcParams {
        RcParams::new(p, q).unwrap()
    }

    #[test]
    fn single_edge_is_phat() {
        let t = TreeSpec::new(vec![None, Some(0)], 1).unwrap();
        let r = params(0.4, 2.5);
        assert!((tree_phi(&t, &r) - r.phat()).abs() < 1e-14);
        assert!((tree_phi_logz(&t, &r) - r.phat()).abs() < 1e-14);
    }

    #[test]
    fn path_is_one_ninth() {
        let t = TreeSpec::new(vec![None, Some(0), Some(1)], 2).unwrap();
        assert!((tree_phi(&t, &params(0.5, 2.0)) - 1.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn empty_boundary_gives_zero() {
        let t = TreeSpec::new(vec![None, Some(0), Some(0)], 3).unwrap();
        assert!(t.boundary().is_empty());
        assert_eq!(tree_phi(&t, &params(0.5, 2.0)), 0.0);
        assert_eq!(tree_phi_logz(&t, &params(0.5, 2.0)), 0.0);
        assert_eq!(tree_point_to_point(&t, &params(0.5, 2.0)), 0.0);
    }

    #[test]
    fn rejects_bad_parent_arrays() {
        assert!(TreeSpec::new(vec![None, None], 1).is_err());
        assert!(TreeSpec::new(vec![Some(1), Some(0)], 1).is_err());
        assert!(TreeSpec::new(vec![None, Some(0), Some(1)], 1).is_err());
    }

    #[test]
    fn matches_enumeration() {
        let mut rng = from_seed(11);
        for _ in 0..30 {
            let edges = rng.random_range(1..=10);
            let t = TreeSpec::random(edges, &mut rng);
            let r = params(rng.random_range(0.05..0.95), rng.random_range(1.0..4.0));
            let g = t.to_graph();
            let d = exact_rc_distribution(&g, &t.wired_boundary(), &r).unwrap();
            let exact = d.set_connectivity(&g, t.root(), t.boundary());
            assert!((tree_phi(&t, &r) - exact).abs() < 1e-12);
            assert!((tree_phi_logz(&t, &r) - exact).abs() < 1e-12);
            let pp: f64 = t
                .boundary()
                .iter()
                .map(|&u| d.pair_connectivity(&g, t.root(), u))
                .sum::<f64>()
                / t.boundary().len() as f64;
            assert!((tree_point_to_point(&t, &r) - pp).abs() < 1e-12);
        }
    }

    #[test]
    fn regular_forms_agree() {
        let r = params(0.4, 2.0);
        for (b, h) in [(2, 5), (3, 4), (1, 6)] {
            let t = TreeSpec::regular(b, h);
            assert!((regular_tree_phi(b, h, &r) - tree_phi(&t, &r)).abs() < 1e-13);
            assert!(
                (regular_tree_point_to_point(b, h, &r) - tree_point_to_point(&t, &r)).abs() < 1e-13
            );
        }
        // on a path both quantities coincide and equal phat-like products
        assert!((regular_tree_phi(1, 3, &r) - regular_tree_point_to_point(1, 3, &r)).abs() < 1e-15);
    }
}
