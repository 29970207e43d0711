use std::collections::VecDeque;

use crate::rc::UnionFind;

/// Reference backend: every query is a fresh breadth-first search.
#[derive(Debug, Clone)]
pub(crate) struct Naive {
    adjacency: Vec<Vec<(usize, usize)>>,
    ends: Vec<(usize, usize)>,
    present: Vec<bool>,
    seen: Vec<u32>,
    stamp: u32,
    queue: VecDeque<usize>,
}

impl Naive {
    pub(crate) fn new(n: usize, ends: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (e, &(a, b)) in ends.iter().enumerate() {
            adjacency[a].push((b, e));
            if a != b {
                adjacency[b].push((a, e));
            }
        }
        Self {
            adjacency,
            present: vec![false; ends.len()],
            ends,
            seen: vec![0; n],
            stamp: 0,
            queue: VecDeque::new(),
        }
    }

    pub(crate) fn set(&mut self, e: usize, present: bool) {
        self.present[e] = present;
    }

    /// Whether `u` reaches `v` through present edges other than `skip`.
    pub(crate) fn reaches(&mut self, u: usize, v: usize, skip: Option<usize>) -> bool {
        if u == v {
            return true;
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        self.queue.clear();
        self.seen[u] = self.stamp;
        self.queue.push_back(u);
        while let Some(x) = self.queue.pop_front() {
            for &(y, e) in &self.adjacency[x] {
                if !self.present[e] || Some(e) == skip || self.seen[y] == self.stamp {
                    continue;
                }
                if y == v {
                    return true;
                }
                self.seen[y] = self.stamp;
                self.queue.push_back(y);
            }
        }
        false
    }

    pub(crate) fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.adjacency.len());
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if self.present[e] {
                uf.union(a, b);
            }
        }
        uf.count()
    }
}
