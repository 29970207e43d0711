//! Dynamic connectivity over the open edges of a configuration plus permanent
//! boundary identifications, answering the cut-edge queries of FK updates.

mod ett;
mod hdt;
mod naive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rc::{BoundaryPartition, RcConfiguration};
use hdt::Hdt;
use naive::Naive;

/// Graphs with at least this many edges get the dynamic backend under [`Backend::Auto`].
pub const AUTO_DYNAMIC_FROM: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Auto,
    /// Breadth-first search per query.
    Naive,
    /// Levelled Euler-tour forests with amortized polylogarithmic updates.
    Dynamic,
}

#[derive(Debug, Clone)]
enum Inner {
    Naive(Naive),
    Dynamic(Hdt),
}

/// Connectivity of `(V, ω ∪ boundary merges)` under single-edge updates.
#[derive(Debug, Clone)]
pub struct ConnectivityOracle {
    ends: Vec<(usize, usize)>,
    open: Vec<bool>,
    n: usize,
    ops: u64,
    inner: Inner,
}

/// Oracle for `omega` on `g` with the classes of `bc` merged, backend chosen by size.
pub fn new_oracle(
    g: &MultiGraph,
    bc: &BoundaryPartition,
    omega: &RcConfiguration,
) -> Result<ConnectivityOracle> {
    ConnectivityOracle::with_backend(g, bc, omega, Backend::Auto)
}

impl ConnectivityOracle {
    pub fn with_backend(
        g: &MultiGraph,
        bc: &BoundaryPartition,
        omega: &RcConfiguration,
        backend: Backend,
    ) -> Result<Self> {
        omega.check_graph(g)?;
        if bc.universe() != g.n() {
            return Err(Error::invalid(format!(
                "boundary universe {} does not match vertex count {}",
                bc.universe(),
                g.n()
            )));
        }
        let m = g.edge_count();
        // boundary classes become permanent phantom edges after the real ones
        let mut all = g.edges().to_vec();
        for class in bc.classes() {
            all.extend(class.windows(2).map(|w| (w[0], w[1])));
        }
        let dynamic = match backend {
            Backend::Auto => m >= AUTO_DYNAMIC_FROM,
            Backend::Naive => false,
            Backend::Dynamic => true,
        };
        let mut inner = if dynamic {
            Inner::Dynamic(Hdt::new(g.n(), all.clone()))
        } else {
            Inner::Naive(Naive::new(g.n(), all.clone()))
        };
        for e in (m..all.len()).chain((0..m).filter(|&e| omega.is_open(e))) {
            match &mut inner {
                Inner::Naive(s) => s.set(e, true),
                Inner::Dynamic(s) => s.insert(e),
            }
        }
        all.truncate(m);
        Ok(Self {
            ends: all,
            open: omega.as_slice().to_vec(),
            n: g.n(),
            ops: 0,
            inner,
        })
    }

    pub fn backend(&self) -> Backend {
        match self.inner {
            Inner::Naive(_) => Backend::Naive,
            Inner::Dynamic(_) => Backend::Dynamic,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn is_open(&self, e: usize) -> bool {
        self.open[e]
    }

    pub fn configuration(&self) -> RcConfiguration {
        RcConfiguration::from_vec(self.open.clone())
    }

    /// Number of update and query calls served so far.
    pub fn operations(&self) -> u64 {
        self.ops
    }

    pub fn connected(&mut self, u: usize, v: usize) -> bool {
        self.ops += 1;
        match &mut self.inner {
            Inner::Naive(s) => s.reaches(u, v, None),
            Inner::Dynamic(s) => s.connected(u, v),
        }
    }

    /// Components of the open subgraph after boundary merges.
    pub fn component_count(&self) -> usize {
        match &self.inner {
            Inner::Naive(s) => s.components(),
            Inner::Dynamic(s) => s.components(),
        }
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e >= self.ends.len() {
            return Err(Error::invalid(format!(
                "edge {e} out of range for {} edges",
                self.ends.len()
            )));
        }
        Ok(())
    }

    /// Whether flipping `e` changes the component count: the endpoints are
    /// not joined by `(ω ∖ {e}) ∪ boundary merges`. Self-loops never are.
    pub fn is_cut_edge(&mut self, e: usize) -> Result<bool> {
        self.check_edge(e)?;
        let was_open = self.open[e];
        let mut cut = false;
        self.resample(e, |c| {
            cut = c;
            was_open
        });
        Ok(cut)
    }

    pub fn set_edge(&mut self, e: usize, open: bool) -> Result<()> {
        self.check_edge(e)?;
        self.ops += 1;
        if self.open[e] == open {
            return Ok(());
        }
        self.open[e] = open;
        match &mut self.inner {
            Inner::Naive(s) => s.set(e, open),
            Inner::Dynamic(s) if open => s.insert(e),
            Inner::Dynamic(s) => s.delete(e),
        }
        Ok(())
    }

    /// Computes the cut-edge status of `e`, lets `decide` choose the new state
    /// from it, applies that state and returns it.
    pub fn resample(&mut self, e: usize, decide: impl FnOnce(bool) -> bool) -> bool {
        self.ops += 1;
        let (u, v) = self.ends[e];
        let was_open = self.open[e];
        let now_open = if u == v {
            let now = decide(false);
            if now != was_open {
                match &mut self.inner {
                    Inner::Naive(s) => s.set(e, now),
                    Inner::Dynamic(s) if now => s.insert(e),
                    Inner::Dynamic(s) => s.delete(e),
                }
            }
            now
        } else {
            match &mut self.inner {
                Inner::Naive(s) => {
                    let cut = !s.reaches(u, v, Some(e));
                    let now = decide(cut);
                    s.set(e, now);
                    now
                }
                Inner::Dynamic(s) => {
                    if was_open && !s.is_tree(e) {
                        let now = decide(false);
                        if !now {
                            s.delete(e);
                        }
                        now
                    } else {
                        if was_open {
                            s.delete(e);
                        }
                        let cut = !s.connected(u, v);
                        let now = decide(cut);
                        if now {
                            s.insert(e);
                        }
                        now
                    }
                }
            }
        };
        if let Inner::Dynamic(s) = &self.inner {
            debug_assert_eq!(s.is_present(e), now_open);
        }
        self.open[e] = now_open;
        now_open
    }

    /// Vertices in the component of `v`.
    pub fn component_size(&mut self, v: usize) -> usize {
        match &mut self.inner {
            Inner::Dynamic(s) => s.component_size(v),
            Inner::Naive(s) => (0..self.n).filter(|&w| s.reaches(v, w, None)).count(),
        }
    }
}
