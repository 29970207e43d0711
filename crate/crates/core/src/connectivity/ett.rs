//! Splay-tree sequences used as Euler tours. Every node carries two
//! aggregates: the number of vertex nodes below it and the OR of flag bits.

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    l: u32,
    r: u32,
    p: u32,
    cnt: u32,
    vcnt: u32,
    own: u8,
    agg: u8,
    vertex: bool,
}

impl Node {
    fn fresh(vertex: bool) -> Self {
        Self {
            l: NIL,
            r: NIL,
            p: NIL,
            cnt: 1,
            vcnt: vertex as u32,
            own: 0,
            agg: 0,
            vertex,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct SplayForest {
    nodes: Vec<Node>,
    free: Vec<u32>,
}

impl SplayForest {
    pub(crate) fn with_vertices(count: usize) -> Self {
        Self {
            nodes: vec![Node::fresh(true); count],
            free: Vec::new(),
        }
    }

    pub(crate) fn alloc(&mut self) -> u32 {
        match self.free.pop() {
            Some(x) => {
                self.nodes[x as usize] = Node::fresh(false);
                x
            }
            None => {
                self.nodes.push(Node::fresh(false));
                (self.nodes.len() - 1) as u32
            }
        }
    }

    pub(crate) fn release(&mut self, x: u32) {
        debug_assert!(!self.nodes[x as usize].vertex);
        self.free.push(x);
    }

    pub(crate) fn node_capacity(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    fn n(&self, x: u32) -> &Node {
        &self.nodes[x as usize]
    }

    #[inline]
    fn m(&mut self, x: u32) -> &mut Node {
        &mut self.nodes[x as usize]
    }

    fn update(&mut self, x: u32) {
        let (l, r) = (self.n(x).l, self.n(x).r);
        let mut cnt = 1;
        let mut vcnt = self.n(x).vertex as u32;
        let mut agg = self.n(x).own;
        if l != NIL {
            let c = self.n(l);
            cnt += c.cnt;
            vcnt += c.vcnt;
            agg |= c.agg;
        }
        if r != NIL {
            let c = self.n(r);
            cnt += c.cnt;
            vcnt += c.vcnt;
            agg |= c.agg;
        }
        let node = self.m(x);
        node.cnt = cnt;
        node.vcnt = vcnt;
        node.agg = agg;
    }

    fn rotate(&mut self, x: u32) {
        let p = self.n(x).p;
        let g = self.n(p).p;
        if self.n(p).l == x {
            let b = self.n(x).r;
            self.m(p).l = b;
            if b != NIL {
                self.m(b).p = p;
            }
            self.m(x).r = p;
        } else {
            let b = self.n(x).l;
            self.m(p).r = b;
            if b != NIL {
                self.m(b).p = p;
            }
            self.m(x).l = p;
        }
        self.m(p).p = x;
        self.m(x).p = g;
        if g != NIL {
            if self.n(g).l == p {
                self.m(g).l = x;
            } else {
                self.m(g).r = x;
            }
        }
        self.update(p);
        self.update(x);
    }

    /// Brings `x` to the root of its tree.
    pub(crate) fn splay(&mut self, x: u32) {
        loop {
            let p = self.n(x).p;
            if p == NIL {
                break;
            }
            let g = self.n(p).p;
            if g != NIL {
                let zigzig = (self.n(g).l == p) == (self.n(p).l == x);
                self.rotate(if zigzig { p } else { x });
            }
            self.rotate(x);
        }
    }

    fn rightmost(&mut self, mut x: u32) -> u32 {
        while self.n(x).r != NIL {
            x = self.n(x).r;
        }
        self.splay(x);
        x
    }

    /// Concatenates the sequences rooted at `a` and `b` (either may be `NIL`).
    pub(crate) fn join(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        let r = self.rightmost(a);
        self.m(r).r = b;
        self.m(b).p = r;
        self.update(r);
        r
    }

    /// Splits into `(.. before x, x ..)`.
    pub(crate) fn split_before(&mut self, x: u32) -> (u32, u32) {
        self.splay(x);
        let l = self.n(x).l;
        if l != NIL {
            self.m(l).p = NIL;
            self.m(x).l = NIL;
            self.update(x);
        }
        (l, x)
    }

    /// Splits into `(.. x, after x ..)`.
    pub(crate) fn split_after(&mut self, x: u32) -> (u32, u32) {
        self.splay(x);
        let r = self.n(x).r;
        if r != NIL {
            self.m(r).p = NIL;
            self.m(x).r = NIL;
            self.update(x);
        }
        (x, r)
    }

    /// Rotates the cyclic sequence containing `x` so that it starts at `x`.
    pub(crate) fn reroot(&mut self, x: u32) -> u32 {
        let (l, x) = self.split_before(x);
        self.join(x, l)
    }

    pub(crate) fn same_tree(&mut self, x: u32, y: u32) -> bool {
        if x == y {
            return true;
        }
        self.splay(x);
        self.splay(y);
        self.n(x).p != NIL
    }

    /// Position of `x` in its sequence.
    pub(crate) fn index(&mut self, x: u32) -> u32 {
        self.splay(x);
        let l = self.n(x).l;
        if l == NIL {
            0
        } else {
            self.n(l).cnt
        }
    }

    /// Vertex nodes in the sequence containing `x`.
    pub(crate) fn vertex_count(&mut self, x: u32) -> u32 {
        self.splay(x);
        self.n(x).vcnt
    }

    #[cfg(test)]
    pub(crate) fn own(&self, x: u32) -> u8 {
        self.n(x).own
    }

    pub(crate) fn set_own(&mut self, x: u32, flags: u8) {
        if self.n(x).own == flags {
            return;
        }
        self.splay(x);
        self.m(x).own = flags;
        self.update(x);
    }

    /// Some node carrying `bit` in the sequence rooted at `root`, splayed to the root.
    pub(crate) fn find_flag(&mut self, root: u32, bit: u8) -> Option<u32> {
        debug_assert_eq!(self.n(root).p, NIL);
        if self.n(root).agg & bit == 0 {
            return None;
        }
        let mut x = root;
        loop {
            if self.n(x).own & bit != 0 {
                break;
            }
            let l = self.n(x).l;
            x = if l != NIL && self.n(l).agg & bit != 0 {
                l
            } else {
                self.n(x).r
            };
        }
        self.splay(x);
        Some(x)
    }
}
