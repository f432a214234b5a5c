//! Left-right planarity test producing a combinatorial embedding.

use super::WeightedGraph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    adj: &'a [Vec<usize>],
    offsets: Vec<usize>,
    source: Vec<usize>,
    target: Vec<usize>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    oriented: Vec<bool>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    refs: Vec<Option<usize>>,
    side: Vec<i64>,
    old_ref: Vec<usize>,
    stack: Vec<ConflictPair>,
    next_id: usize,
    stack_bottom: Vec<Option<usize>>,
    lowpt_edge: Vec<usize>,
    roots: Vec<usize>,
    // embedding, indexed by arc
    cw: Vec<usize>,
    ccw: Vec<usize>,
    leftmost: Vec<usize>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
}

/// Cyclic neighbour order of every node in a planar embedding of `g`, or
/// `None` when `g` is not planar.
pub fn planar_embedding(g: &WeightedGraph) -> Option<Vec<Vec<usize>>> {
    let n = g.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let m = g.edge_count();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut offsets = vec![0; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + adj[v].len();
    }
    let arcs = offsets[n];
    let mut source = vec![0; arcs];
    let mut target = vec![0; arcs];
    for v in 0..n {
        for (i, &w) in adj[v].iter().enumerate() {
            source[offsets[v] + i] = v;
            target[offsets[v] + i] = w;
        }
    }
    let mut lr = Lr {
        adj: &adj,
        offsets,
        source,
        target,
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        oriented: vec![false; arcs],
        out: vec![Vec::new(); n],
        lowpt: vec![0; arcs],
        lowpt2: vec![0; arcs],
        nesting: vec![0; arcs],
        refs: vec![None; arcs],
        side: vec![1; arcs],
        old_ref: vec![NONE; arcs],
        stack: Vec::new(),
        next_id: 0,
        stack_bottom: vec![None; arcs],
        lowpt_edge: vec![NONE; arcs],
        roots: Vec::new(),
        cw: vec![NONE; arcs],
        ccw: vec![NONE; arcs],
        leftmost: vec![NONE; n],
        left_ref: vec![NONE; n],
        right_ref: vec![NONE; n],
    };
    lr.run()
}

impl Lr<'_> {
    fn arc(&self, v: usize, w: usize) -> usize {
        self.offsets[v] + self.adj[v].binary_search(&w).expect("arc exists")
    }

    fn run(&mut self) -> Option<Vec<Vec<usize>>> {
        let n = self.adj.len();
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..n {
            let mut list = std::mem::take(&mut self.out[v]);
            list.sort_by_key(|&a| self.nesting[a]);
            self.out[v] = list;
        }
        for i in 0..self.roots.len() {
            if !self.test(self.roots[i]) {
                return None;
            }
        }
        for v in 0..n {
            for i in 0..self.out[v].len() {
                let a = self.out[v][i];
                self.nesting[a] *= self.sign(a);
            }
        }
        for v in 0..n {
            let mut list = std::mem::take(&mut self.out[v]);
            list.sort_by_key(|&a| self.nesting[a]);
            let mut prev = NONE;
            for &a in &list {
                if prev == NONE {
                    self.add_half_edge(a, None, None);
                } else {
                    self.add_half_edge(a, None, Some(prev));
                }
                prev = a;
            }
            self.out[v] = list;
        }
        for i in 0..self.roots.len() {
            self.embed(self.roots[i]);
        }
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            let start = self.leftmost[v];
            if start == NONE {
                continue;
            }
            let mut a = start;
            loop {
                rot.push(self.target[a]);
                a = self.ccw[a];
                if a == start {
                    break;
                }
            }
        }
        Some(rotation)
    }

    fn orient(&mut self, root: usize) {
        let mut dfs = vec![root];
        let n = self.adj.len();
        let mut ind = vec![0usize; n];
        let mut skip_init = vec![false; self.target.len()];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adj[v].len() {
                let w = self.adj[v][ind[v]];
                let vw = self.offsets[v] + ind[v];
                if !skip_init[vw] {
                    let wv = self.arc(w, v);
                    if self.oriented[vw] || self.oriented[wv] {
                        ind[v] += 1;
                        continue;
                    }
                    self.oriented[vw] = true;
                    self.out[v].push(vw);
                    self.lowpt[vw] = self.height[v];
                    self.lowpt2[vw] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = vw;
                        self.height[w] = self.height[v] + 1;
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[vw] = true;
                        break;
                    }
                    self.lowpt[vw] = self.height[w];
                }
                self.nesting[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting[vw] += 1;
                }
                if e != NONE {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn new_pair(&mut self, left: Interval, right: Interval) -> ConflictPair {
        self.next_id += 1;
        ConflictPair { id: self.next_id, left, right }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) if !i.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, root: usize) -> bool {
        let n = self.adj.len();
        let mut dfs = vec![root];
        let mut ind = vec![0usize; n];
        let mut skip_init = vec![false; self.target.len()];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                let w = self.target[ei];
                if !skip_init[ei] {
                    self.stack_bottom[ei] = self.top_id();
                    if ei == self.parent_edge[w] {
                        dfs.push(v);
                        dfs.push(w);
                        skip_init[ei] = true;
                        skip_final = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    let p = self.new_pair(
                        Interval::default(),
                        Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    );
                    self.stack.push(p);
                }
                if self.lowpt[ei] < self.height[v] {
                    if ind[v] == 0 {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.new_pair(Interval::default(), Interval::default());
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.unwrap();
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.refs[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.refs[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.refs[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.source[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.target[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.target[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.refs[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge has a conflict pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut stack = vec![e];
        let mut touched = Vec::new();
        while let Some(x) = stack.pop() {
            if let Some(r) = self.refs[x] {
                stack.push(x);
                stack.push(r);
                self.old_ref[x] = r;
                touched.push(x);
                self.refs[x] = None;
            } else if self.old_ref[x] != NONE {
                self.side[x] *= self.side[self.old_ref[x]];
            }
        }
        for x in touched {
            self.old_ref[x] = NONE;
        }
        self.side[e]
    }

    /// Inserts half-edge `a` at its source next to a reference half-edge:
    /// counterclockwise of `cw_ref` or clockwise of `ccw_ref`.
    fn add_half_edge(&mut self, a: usize, cw_ref: Option<usize>, ccw_ref: Option<usize>) {
        let v = self.source[a];
        let lm = self.leftmost[v];
        if lm == NONE {
            self.cw[a] = a;
            self.ccw[a] = a;
            self.leftmost[v] = a;
            return;
        }
        if let Some(r) = cw_ref {
            let ref_ccw = self.ccw[r];
            self.cw[a] = r;
            self.ccw[a] = ref_ccw;
            self.cw[ref_ccw] = a;
            self.ccw[r] = a;
            if r == lm {
                self.leftmost[v] = a;
            }
        } else if let Some(r) = ccw_ref {
            let ref_cw = self.cw[r];
            self.cw[a] = ref_cw;
            self.ccw[a] = r;
            self.ccw[ref_cw] = a;
            self.cw[r] = a;
        } else {
            unreachable!("reference half-edge required");
        }
    }

    fn embed(&mut self, root: usize) {
        let n = self.adj.len();
        let mut dfs = vec![root];
        let mut ind = vec![0usize; n];
        while let Some(v) = dfs.pop() {
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                ind[v] += 1;
                let w = self.target[ei];
                let back = self.arc(w, v);
                if ei == self.parent_edge[w] {
                    let lm = self.leftmost[w];
                    self.add_half_edge(back, (lm != NONE).then_some(lm), None);
                    self.left_ref[v] = w;
                    self.right_ref[v] = w;
                    dfs.push(v);
                    dfs.push(w);
                    break;
                }
                if self.side[ei] == 1 {
                    let r = self.arc(w, self.right_ref[w]);
                    self.add_half_edge(back, None, Some(r));
                } else {
                    let r = self.arc(w, self.left_ref[w]);
                    self.add_half_edge(back, Some(r), None);
                    self.left_ref[w] = v;
                }
            }
        }
    }
}

/// Number of faces traced by a rotation system, for an Euler check.
pub(super) fn face_count(rotation: &[Vec<usize>]) -> usize {
    let n = rotation.len();
    let mut offsets = vec![0; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + rotation[v].len();
    }
    let pos = |v: usize, w: usize| rotation[v].iter().position(|&x| x == w).expect("symmetric rotation");
    let mut seen = vec![false; offsets[n]];
    let mut faces = 0;
    for v in 0..n {
        for i in 0..rotation[v].len() {
            if seen[offsets[v] + i] {
                continue;
            }
            faces += 1;
            let (mut a, mut ai) = (v, i);
            while !seen[offsets[a] + ai] {
                seen[offsets[a] + ai] = true;
                let b = rotation[a][ai];
                let back = pos(b, a);
                let next = (back + 1) % rotation[b].len();
                a = b;
                ai = next;
            }
        }
    }
    faces
}
