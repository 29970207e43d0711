use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;

/// Open/closed state per edge index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RcConfiguration {
    open: Vec<bool>,
}

impl RcConfiguration {
    pub fn closed(m: usize) -> Self {
        Self { open: vec![false; m] }
    }

    pub fn all_open(m: usize) -> Self {
        Self { open: vec![true; m] }
    }

    pub fn from_vec(open: Vec<bool>) -> Self {
        Self { open }
    }

    /// Edge `e` is open iff bit `e` of `mask` is set.
    pub fn from_mask(m: usize, mask: u64) -> Self {
        debug_assert!(m <= 64);
        Self {
            open: (0..m).map(|e| mask >> e & 1 == 1).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.open.len() <= 64);
        self.open
            .iter()
            .enumerate()
            .fold(0, |acc, (e, &o)| acc | (o as u64) << e)
    }

    pub fn len(&self) -> usize {
        self.open.len()
    }

    pub fn is_empty(&self) -> bool {
        self.open.is_empty()
    }

    pub fn is_open(&self, e: usize) -> bool {
        self.open[e]
    }

    pub fn set(&mut self, e: usize, open: bool) {
        self.open[e] = open;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.open
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().filter(|&&o| o).count()
    }

    /// Edgewise `self ≤ other`.
    pub fn is_below(&self, other: &Self) -> bool {
        self.open.len() == other.open.len()
            && self.open.iter().zip(&other.open).all(|(&a, &b)| !a || b)
    }

    pub(crate) fn check_graph(&self, g: &MultiGraph) -> Result<()> {
        if self.open.len() != g.edge_count() {
            return Err(Error::invalid(format!(
                "configuration has {} edges, graph has {}",
                self.open.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }
}

/// Spin per vertex, stored as `0..q` (spin `i+1` in the usual labelling).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PottsConfiguration {
    q: u16,
    spins: Vec<u16>,
}

impl PottsConfiguration {
    pub fn new(q: u16, spins: Vec<u16>) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("Potts q must be at least 2, got {q}")));
        }
        if let Some(&s) = spins.iter().find(|&&s| s >= q) {
            return Err(Error::invalid(format!("spin {s} out of range for q = {q}")));
        }
        Ok(Self { q, spins })
    }

    pub fn constant(q: u16, n: usize, spin: u16) -> Result<Self> {
        Self::new(q, vec![spin; n])
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn spin(&self, v: usize) -> u16 {
        self.spins[v]
    }

    pub fn spins(&self) -> &[u16] {
        &self.spins
    }

    pub fn set(&mut self, v: usize, spin: u16) {
        debug_assert!(spin < self.q);
        self.spins[v] = spin;
    }

    /// Index in base `q` with vertex 0 least significant.
    pub fn index(&self) -> usize {
        self.spins
            .iter()
            .rev()
            .fold(0, |acc, &s| acc * self.q as usize + s as usize)
    }

    pub fn from_index(q: u16, n: usize, mut index: usize) -> Self {
        let mut spins = Vec::with_capacity(n);
        for _ in 0..n {
            spins.push((index % q as usize) as u16);
            index /= q as usize;
        }
        Self { q, spins }
    }
}
