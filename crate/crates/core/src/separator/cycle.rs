//! Fundamental-cycle separators of a triangulated planar embedding.

use std::collections::HashMap;
use std::collections::VecDeque;

use super::planarity::{face_count, planar_embedding};
use super::{Side, WeightedGraph};
use crate::{Error, Result};

const NONE: usize = usize::MAX;

/// Half-edge mesh; half-edges come in twin pairs `2e`, `2e + 1`.
struct Mesh {
    origin: Vec<usize>,
    rot_next: Vec<usize>,
    rot_prev: Vec<usize>,
    first: Vec<usize>,
}

impl Mesh {
    fn from_rotation(rotation: &[Vec<usize>]) -> Self {
        let n = rotation.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut origin = Vec::new();
        for (v, rot) in rotation.iter().enumerate() {
            for &w in rot {
                if v < w {
                    index.insert((v, w), origin.len());
                    origin.push(v);
                    index.insert((w, v), origin.len());
                    origin.push(w);
                }
            }
        }
        let h = origin.len();
        let mut mesh = Mesh {
            origin,
            rot_next: vec![NONE; h],
            rot_prev: vec![NONE; h],
            first: vec![NONE; n],
        };
        for (v, rot) in rotation.iter().enumerate() {
            let arcs: Vec<usize> = rot.iter().map(|&w| index[&(v, w)]).collect();
            for (i, &a) in arcs.iter().enumerate() {
                let b = arcs[(i + 1) % arcs.len()];
                mesh.rot_next[a] = b;
                mesh.rot_prev[b] = a;
            }
            if let Some(&a) = arcs.first() {
                mesh.first[v] = a;
            }
        }
        mesh
    }

    #[inline]
    fn twin(h: usize) -> usize {
        h ^ 1
    }

    #[inline]
    fn target(&self, h: usize) -> usize {
        self.origin[Self::twin(h)]
    }

    #[inline]
    fn face_next(&self, h: usize) -> usize {
        self.rot_next[Self::twin(h)]
    }

    fn vertex_count(&self) -> usize {
        self.first.len()
    }

    fn out_arcs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.first[v];
        let mut cur = start;
        let mut done = start == NONE;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let h = cur;
            cur = self.rot_next[cur];
            done = cur == start;
            Some(h)
        })
    }

    /// Faces as lists of half-edges, and the face of every half-edge.
    fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut face_of = vec![NONE; self.origin.len()];
        let mut faces = Vec::new();
        for h0 in 0..self.origin.len() {
            if face_of[h0] != NONE {
                continue;
            }
            let id = faces.len();
            let mut face = Vec::new();
            let mut h = h0;
            while face_of[h] == NONE {
                face_of[h] = id;
                face.push(h);
                h = self.face_next(h);
            }
            faces.push(face);
        }
        (faces, face_of)
    }

    fn insert_after(&mut self, at: usize, h: usize) {
        let next = self.rot_next[at];
        self.rot_next[h] = next;
        self.rot_prev[next] = h;
        self.rot_next[at] = h;
        self.rot_prev[h] = at;
    }

    /// Stars every non-triangular face around a new vertex; returns the
    /// number of vertices added.
    fn triangulate(&mut self) -> usize {
        let (faces, _) = self.faces();
        let mut added = 0;
        for face in faces.iter().filter(|f| f.len() != 3) {
            let x = self.first.len();
            self.first.push(NONE);
            added += 1;
            let k = face.len();
            let mut spokes = Vec::with_capacity(k);
            for i in 0..k {
                let h = face[i];
                let prev = face[(i + k - 1) % k];
                let c = self.origin[h];
                let out = self.origin.len();
                self.origin.push(x);
                self.origin.push(c);
                self.rot_next.extend([NONE, NONE]);
                self.rot_prev.extend([NONE, NONE]);
                self.insert_after(Self::twin(prev), out + 1);
                spokes.push(out);
            }
            for i in 0..k {
                let a = spokes[(i + 1) % k];
                let b = spokes[i];
                self.rot_next[a] = b;
                self.rot_prev[b] = a;
            }
            self.first[x] = spokes[0];
        }
        added
    }

    fn bfs(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let nv = self.vertex_count();
        let mut dist = vec![NONE; nv];
        let mut parent = vec![NONE; nv];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for h in self.out_arcs(u) {
                let w = self.target(h);
                if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    parent[w] = h;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// Middle vertex of a long BFS path found by a double sweep.
    fn approximate_centre(&self) -> usize {
        let far = |d: &[usize]| (0..d.len()).max_by_key(|&v| (d[v], std::cmp::Reverse(v))).unwrap();
        let (d0, _) = self.bfs(0);
        let a = far(&d0);
        let (d1, parent) = self.bfs(a);
        let b = far(&d1);
        let mut v = b;
        for _ in 0..d1[b] / 2 {
            v = self.origin[parent[v]];
        }
        v
    }
}

/// Lightest valid fundamental cycle of a triangulation of `g`, or `None` if
/// no fundamental cycle balances. Fails with `NonPlanar` if `g` has no
/// planar embedding.
pub(super) fn separate(g: &WeightedGraph, cap: u64) -> Result<Option<Vec<Side>>> {
    let n = g.len();
    let comps = g.components_within(&vec![true; n]);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for pair in comps.windows(2) {
        edges.push((pair[0][0], pair[1][0]));
    }
    let linked = WeightedGraph::new(g.weights().to_vec(), &edges);
    let rotation = planar_embedding(&linked).ok_or(Error::NonPlanar)?;
    if n + face_count(&rotation) != linked.edge_count() + 2 {
        return Err(Error::Internal("embedding violates Euler's formula".into()));
    }

    let mut mesh = Mesh::from_rotation(&rotation);
    mesh.triangulate();
    let nv = mesh.vertex_count();
    let weight = |v: usize| if v < n { g.weight(v) } else { 0 };
    let total = g.total_weight();

    let root = mesh.approximate_centre();
    let (depth, parent) = mesh.bfs(root);
    let edge_count = mesh.origin.len() / 2;
    let mut tree_edge = vec![false; edge_count];
    for &h in &parent {
        if h != NONE {
            tree_edge[h / 2] = true;
        }
    }

    let (faces, face_of) = mesh.faces();
    debug_assert!(faces.iter().all(|f| f.len() == 3));
    let nf = faces.len();

    // dual spanning tree over the non-tree edges
    let mut dual: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for e in (0..edge_count).filter(|&e| !tree_edge[e]) {
        let (f, k) = (face_of[2 * e], face_of[2 * e + 1]);
        dual[f].push((k, e));
        dual[k].push((f, e));
    }
    let mut dparent_edge = vec![NONE; nf];
    let mut tin = vec![0usize; nf];
    let mut tout = vec![0usize; nf];
    let mut order = Vec::with_capacity(nf);
    let mut visited = vec![false; nf];
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    visited[0] = true;
    let mut clock = 0;
    tin[0] = clock;
    order.push(0);
    while let Some(top) = stack.last_mut() {
        let f = top.0;
        if top.1 < dual[f].len() {
            let (k, e) = dual[f][top.1];
            top.1 += 1;
            if !visited[k] {
                visited[k] = true;
                dparent_edge[k] = e;
                clock += 1;
                tin[k] = clock;
                order.push(k);
                stack.push((k, 0));
            }
        } else {
            tout[f] = clock;
            stack.pop();
        }
    }
    if order.len() != nf {
        return Err(Error::Internal("non-tree edges do not span the dual".into()));
    }

    // every vertex is charged to one incident face
    let home: Vec<usize> = (0..nv).map(|v| face_of[mesh.first[v]]).collect();
    let mut sub = vec![0u64; nf];
    for v in 0..n {
        sub[home[v]] += weight(v);
    }
    let mut dparent = vec![NONE; nf];
    for &f in &order[1..] {
        let e = dparent_edge[f];
        let (a, b) = (face_of[2 * e], face_of[2 * e + 1]);
        dparent[f] = if a == f { b } else { a };
    }
    for &f in order.iter().rev() {
        if dparent[f] != NONE {
            sub[dparent[f]] += sub[f];
        }
    }
    let within = |f: usize, inner: usize| tin[inner] <= tin[f] && tin[f] <= tout[inner];

    let mut cycle = Vec::new();
    let mut best: Option<((u64, u64, usize), usize)> = None;
    for e in (0..edge_count).filter(|&e| !tree_edge[e]) {
        let (fa, fb) = (face_of[2 * e], face_of[2 * e + 1]);
        let inner = if dparent_edge[fa] == e { fa } else { fb };
        fundamental_cycle(&mesh, &depth, &parent, e, &mut cycle);
        let mut on_cycle = 0u64;
        let mut counted = 0u64;
        for &v in &cycle {
            on_cycle += weight(v);
            if within(home[v], inner) {
                counted += weight(v);
            }
        }
        let inside = sub[inner] - counted;
        let outside = total - on_cycle - inside;
        if inside <= cap && outside <= cap {
            let key = (on_cycle, inside.max(outside), e);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, e));
            }
        }
    }
    let Some((_, e)) = best else {
        return Ok(None);
    };

    let (fa, fb) = (face_of[2 * e], face_of[2 * e + 1]);
    let inner = if dparent_edge[fa] == e { fa } else { fb };
    fundamental_cycle(&mesh, &depth, &parent, e, &mut cycle);
    let mut sides: Vec<Side> = (0..n).map(|v| if within(home[v], inner) { Side::A } else { Side::B }).collect();
    for &v in &cycle {
        if v < n {
            sides[v] = Side::S;
        }
    }
    Ok(Some(sides))
}

/// Vertices of the cycle closed by non-tree edge `e`, each once.
fn fundamental_cycle(mesh: &Mesh, depth: &[usize], parent: &[usize], e: usize, out: &mut Vec<usize>) {
    out.clear();
    let (mut a, mut b) = (mesh.origin[2 * e], mesh.origin[2 * e + 1]);
    while depth[a] > depth[b] {
        out.push(a);
        a = mesh.origin[parent[a]];
    }
    while depth[b] > depth[a] {
        out.push(b);
        b = mesh.origin[parent[b]];
    }
    while a != b {
        out.push(a);
        out.push(b);
        a = mesh.origin[parent[a]];
        b = mesh.origin[parent[b]];
    }
    out.push(a);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(w: usize, h: usize) -> WeightedGraph {
        let mut e = Vec::new();
        for r in 0..h {
            for c in 0..w {
                let v = r * w + c;
                if c + 1 < w {
                    e.push((v, v + 1));
                }
                if r + 1 < h {
                    e.push((v, v + w));
                }
            }
        }
        WeightedGraph::new(vec![1; w * h], &e)
    }

    fn check(g: &WeightedGraph, sides: &[Side], cap: u64) {
        for (a, b) in g.edges() {
            assert!(!matches!((sides[a], sides[b]), (Side::A, Side::B) | (Side::B, Side::A)));
        }
        let wa: u64 = (0..g.len()).filter(|&v| sides[v] == Side::A).map(|v| g.weight(v)).sum();
        let wb: u64 = (0..g.len()).filter(|&v| sides[v] == Side::B).map(|v| g.weight(v)).sum();
        assert!(wa <= cap && wb <= cap, "{wa} {wb} > {cap}");
    }

    #[test]
    fn triangulation_leaves_only_triangles() {
        let g = grid(5, 4);
        let rot = planar_embedding(&g).unwrap();
        let mut mesh = Mesh::from_rotation(&rot);
        let added = mesh.triangulate();
        assert_eq!(added, 13);
        let (faces, _) = mesh.faces();
        assert!(faces.iter().all(|f| f.len() == 3));
        let v = mesh.vertex_count();
        assert_eq!(faces.len(), 2 * v - 4);
    }

    #[test]
    fn grid_cycle_is_short_and_balanced() {
        let g = grid(20, 20);
        let sides = separate(&g, 266).unwrap().unwrap();
        check(&g, &sides, 266);
        let s = sides.iter().filter(|s| **s == Side::S).count();
        assert!(s <= 45, "|S| = {s}");
    }

    #[test]
    fn disconnected_and_tree_inputs() {
        let mut e: Vec<(usize, usize)> = (1..10).map(|i| (0, i)).collect();
        e.extend((11..20).map(|i| (10, i)));
        e.extend([(20, 21), (21, 22)]);
        let g = WeightedGraph::new(vec![1; 23], &e);
        if let Some(sides) = separate(&g, 15).unwrap() {
            check(&g, &sides, 15);
        }
        let path: Vec<(usize, usize)> = (1..30).map(|i| (i - 1, i)).collect();
        let p = WeightedGraph::new(vec![1; 30], &path);
        let sides = separate(&p, 20).unwrap().unwrap();
        check(&p, &sides, 20);
    }
}
