//! Fully dynamic connectivity with polylogarithmic amortized updates
//! (Holm, de Lichtenberg and Thorup), one Euler-tour forest per edge level.

use super::ett::{SplayForest, NIL};

const NONTREE: u8 = 1;
const TREE: u8 = 2;

#[derive(Debug, Clone)]
pub(crate) struct Hdt {
    n: usize,
    levels: usize,
    forest: SplayForest,
    ends: Vec<(u32, u32)>,
    present: Vec<bool>,
    tree: Vec<bool>,
    level: Vec<u8>,
    /// Arc nodes of a tree edge, indexed `level * edges + e`.
    arcs: Vec<[u32; 2]>,
    node_edge: Vec<u32>,
    /// Non-tree edges by `level * n + vertex`.
    nontree: Vec<Vec<u32>>,
    nt_pos: Vec<[u32; 2]>,
    components: usize,
}

impl Hdt {
    pub(crate) fn new(n: usize, ends: Vec<(usize, usize)>) -> Self {
        let levels = (usize::BITS - n.max(1).leading_zeros()) as usize;
        let m = ends.len();
        Self {
            n,
            levels,
            forest: SplayForest::with_vertices(levels * n),
            ends: ends.into_iter().map(|(a, b)| (a as u32, b as u32)).collect(),
            present: vec![false; m],
            tree: vec![false; m],
            level: vec![0; m],
            arcs: vec![[NIL; 2]; levels * m],
            node_edge: vec![NIL; levels * n],
            nontree: vec![Vec::new(); levels * n],
            nt_pos: vec![[NIL; 2]; m],
            components: n,
        }
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }

    pub(crate) fn is_present(&self, e: usize) -> bool {
        self.present[e]
    }

    pub(crate) fn is_tree(&self, e: usize) -> bool {
        self.tree[e]
    }

    #[inline]
    fn vnode(&self, level: usize, v: u32) -> u32 {
        (level * self.n) as u32 + v
    }

    pub(crate) fn connected(&mut self, u: usize, v: usize) -> bool {
        self.connected_at(0, u as u32, v as u32)
    }

    fn connected_at(&mut self, level: usize, u: u32, v: u32) -> bool {
        let (a, b) = (self.vnode(level, u), self.vnode(level, v));
        self.forest.same_tree(a, b)
    }

    /// Vertices in the component of `v`.
    pub(crate) fn component_size(&mut self, v: usize) -> usize {
        let x = self.vnode(0, v as u32);
        self.forest.vertex_count(x) as usize
    }

    pub(crate) fn insert(&mut self, e: usize) {
        debug_assert!(!self.present[e]);
        self.present[e] = true;
        let (u, v) = self.ends[e];
        if u == v {
            return;
        }
        self.level[e] = 0;
        if self.connected_at(0, u, v) {
            self.tree[e] = false;
            self.add_nontree(0, e);
        } else {
            self.tree[e] = true;
            self.link_at(0, e);
            self.components -= 1;
        }
    }

    pub(crate) fn delete(&mut self, e: usize) {
        debug_assert!(self.present[e]);
        self.present[e] = false;
        let (u, v) = self.ends[e];
        if u == v {
            return;
        }
        let l = self.level[e] as usize;
        if !self.tree[e] {
            self.remove_nontree(l, e);
            return;
        }
        for i in 0..=l {
            self.cut_at(i, e);
        }
        self.tree[e] = false;
        for i in (0..=l).rev() {
            if self.replace(i, u, v) {
                return;
            }
        }
        self.components += 1;
    }

    fn link_at(&mut self, i: usize, e: usize) {
        let (u, v) = self.ends[e];
        let ru = self.forest.reroot(self.vnode(i, u));
        let rv = self.forest.reroot(self.vnode(i, v));
        let a1 = self.forest.alloc();
        let a2 = self.forest.alloc();
        if self.node_edge.len() < self.forest.node_capacity() {
            self.node_edge.resize(self.forest.node_capacity(), NIL);
        }
        self.node_edge[a1 as usize] = e as u32;
        self.node_edge[a2 as usize] = e as u32;
        self.arcs[i * self.ends.len() + e] = [a1, a2];
        let s = self.forest.join(ru, a1);
        let s = self.forest.join(s, rv);
        self.forest.join(s, a2);
        if i == self.level[e] as usize {
            self.forest.set_own(a1, TREE);
        }
    }

    fn cut_at(&mut self, i: usize, e: usize) {
        let slot = i * self.ends.len() + e;
        let [mut a1, mut a2] = self.arcs[slot];
        self.arcs[slot] = [NIL; 2];
        if self.forest.index(a1) > self.forest.index(a2) {
            std::mem::swap(&mut a1, &mut a2);
        }
        // sequence is  A a1 B a2 C  ->  B  and  A C
        let (a, _) = self.forest.split_before(a1);
        self.forest.split_after(a1);
        self.forest.split_before(a2);
        let (_, c) = self.forest.split_after(a2);
        self.forest.join(a, c);
        self.forest.release(a1);
        self.forest.release(a2);
    }

    fn add_nontree(&mut self, i: usize, e: usize) {
        let (u, v) = self.ends[e];
        for (slot, x) in [u, v].into_iter().enumerate() {
            let list = &mut self.nontree[i * self.n + x as usize];
            list.push(e as u32);
            self.nt_pos[e][slot] = (list.len() - 1) as u32;
            if list.len() == 1 {
                let node = self.vnode(i, x);
                self.forest.set_own(node, NONTREE);
            }
        }
    }

    fn remove_nontree(&mut self, i: usize, e: usize) {
        let (u, v) = self.ends[e];
        for (slot, x) in [u, v].into_iter().enumerate() {
            let pos = self.nt_pos[e][slot] as usize;
            let list = &mut self.nontree[i * self.n + x as usize];
            list.swap_remove(pos);
            if pos < list.len() {
                let moved = list[pos] as usize;
                let moved_slot = if self.ends[moved].0 == x { 0 } else { 1 };
                self.nt_pos[moved][moved_slot] = pos as u32;
            }
            if list.is_empty() {
                let node = self.vnode(i, x);
                self.forest.set_own(node, 0);
            }
        }
        self.nt_pos[e] = [NIL; 2];
    }

    /// Looks for a level-`i` replacement edge reconnecting the trees of `u`
    /// and `v`, promoting the smaller tree's edges as the search goes.
    fn replace(&mut self, i: usize, u: u32, v: u32) -> bool {
        let su = self.forest.vertex_count(self.vnode(i, u));
        let sv = self.forest.vertex_count(self.vnode(i, v));
        let small = if su <= sv { u } else { v };
        let anchor = self.vnode(i, small);

        loop {
            self.forest.splay(anchor);
            let Some(arc) = self.forest.find_flag(anchor, TREE) else {
                break;
            };
            let e = self.node_edge[arc as usize] as usize;
            self.forest.set_own(arc, 0);
            debug_assert!(i + 1 < self.levels);
            self.level[e] = (i + 1) as u8;
            self.link_at(i + 1, e);
        }

        loop {
            self.forest.splay(anchor);
            let Some(node) = self.forest.find_flag(anchor, NONTREE) else {
                return false;
            };
            let x = node - (i * self.n) as u32;
            while let Some(&f) = self.nontree[i * self.n + x as usize].last() {
                let f = f as usize;
                let (a, b) = self.ends[f];
                let y = if a == x { b } else { a };
                self.remove_nontree(i, f);
                if self.connected_at(i, x, y) {
                    debug_assert!(i + 1 < self.levels);
                    self.level[f] = (i + 1) as u8;
                    self.add_nontree(i + 1, f);
                } else {
                    self.tree[f] = true;
                    self.level[f] = i as u8;
                    for j in 0..=i {
                        self.link_at(j, f);
                    }
                    return true;
                }
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn check_flags(&mut self) {
        for i in 0..self.levels {
            for x in 0..self.n as u32 {
                let node = self.vnode(i, x);
                let want = if self.nontree[i * self.n + x as usize].is_empty() { 0 } else { NONTREE };
                assert_eq!(self.forest.own(node), want);
            }
        }
    }
}
