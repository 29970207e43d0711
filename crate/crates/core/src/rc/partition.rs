use serde::{Deserialize, Serialize};

use super::UnionFind;
use crate::error::{Error, Result};

/// A partition of `{0, .., universe-1}` used as a boundary condition.
///
/// Only classes with at least two vertices are stored; everything else is an
/// implicit singleton. Classes are kept sorted and ordered by their smallest
/// element so that equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryPartition {
    universe: usize,
    classes: Vec<Vec<usize>>,
}

impl BoundaryPartition {
    /// All singletons.
    pub fn free(universe: usize) -> Self {
        Self {
            universe,
            classes: Vec::new(),
        }
    }

    /// One class holding `vertices`.
    pub fn wired(universe: usize, vertices: &[usize]) -> Result<Self> {
        Self::from_classes(universe, vec![vertices.to_vec()])
    }

    pub fn from_classes(universe: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; universe];
        let mut kept = Vec::new();
        for mut class in classes {
            class.sort_unstable();
            class.dedup();
            for &v in &class {
                if v >= universe {
                    return Err(Error::invalid(format!(
                        "vertex {v} outside partition universe {universe}"
                    )));
                }
                if seen[v] {
                    return Err(Error::invalid(format!("vertex {v} appears in two classes")));
                }
                seen[v] = true;
            }
            if class.len() >= 2 {
                kept.push(class);
            }
        }
        kept.sort_unstable_by_key(|c| c[0]);
        Ok(Self {
            universe,
            classes: kept,
        })
    }

    /// Builds the partition whose classes are the level sets of `labels`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (v, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(v);
        }
        Self::from_classes(labels.len(), groups.into_values().collect())
            .expect("level sets are disjoint and in range")
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Non-singleton classes.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_free(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of classes including singletons.
    pub fn class_count(&self) -> usize {
        self.universe - self.classes.iter().map(|c| c.len() - 1).sum::<usize>()
    }

    /// `labels[v]` is the smallest element of the class of `v`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels: Vec<usize> = (0..self.universe).collect();
        for c in &self.classes {
            for &v in c {
                labels[v] = c[0];
            }
        }
        labels
    }

    /// Merges each class into `uf`.
    pub fn apply_to(&self, uf: &mut UnionFind) {
        for c in &self.classes {
            for w in c.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }

    /// `self ≤ other`: every class of `self` lies inside a class of `other`.
    pub fn is_refinement_of(&self, other: &Self) -> bool {
        if self.universe != other.universe {
            return false;
        }
        let labels = other.labels();
        self.classes
            .iter()
            .all(|c| c.iter().all(|&v| labels[v] == labels[c[0]]))
    }

    /// Smallest common coarsening.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let mut uf = UnionFind::new(self.universe);
        self.apply_to(&mut uf);
        other.apply_to(&mut uf);
        let labels: Vec<usize> = (0..self.universe).map(|v| uf.find(v)).collect();
        Ok(Self::from_labels(&labels))
    }

    /// Restricts to vertex ids `0..m` relabelled through `map`: vertex `v` of
    /// the result corresponds to `map[v]` here.
    pub fn pullback(&self, map: &[usize]) -> Self {
        let labels = self.labels();
        let pulled: Vec<usize> = map.iter().map(|&v| labels[v]).collect();
        Self::from_labels(&pulled)
    }

    fn check_universe(&self, other: &Self) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::invalid(format!(
                "partition universes differ: {} vs {}",
                self.universe, other.universe
            )));
        }
        Ok(())
    }
}

/// Vertices lying in non-singleton classes.
pub fn sparsity(bc: &BoundaryPartition) -> usize {
    bc.classes.iter().map(Vec::len).sum()
}

/// `c(φ) − c(φ″) + c(φ′) − c(φ″)` where `φ″` is the join.
pub fn partition_distance(a: &BoundaryPartition, b: &BoundaryPartition) -> Result<usize> {
    let j = a.join(b)?;
    let cj = j.class_count();
    Ok(a.class_count() - cj + b.class_count() - cj)
}
