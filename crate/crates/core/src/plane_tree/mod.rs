//! Bicolored plane trees stored as rotation systems.
//!
//! Every vertex keeps the list of its incident edges in counterclockwise order;
//! clockwise is the reverse. Ids are stable: removed vertices and edges leave a
//! dead slot behind so that ids never shift.

mod clusters;
mod dot;
mod text;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub use clusters::{build_t0, compute_cluster_table, leftist_vertices, linear_extension, relabel_to_t1, ClusterTable, Orientation};
pub use dot::to_dot;
pub use text::TreeParseError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Origin {
    Organic,
    Artificial,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EdgeState {
    Solid,
    Dashed,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub color: Color,
    pub label: Option<usize>,
    pub rotation: Vec<EdgeId>,
    pub origin: Origin,
    pub touched: bool,
    alive: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub label: usize,
    pub black: VertexId,
    pub white: VertexId,
    pub state: EdgeState,
    alive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeDefect {
    #[error("edge {0} joins two vertices of the same color")]
    NotBipartite(EdgeId),
    #[error("rotations disagree with edge endpoints at {0}")]
    Rotation(VertexId),
    #[error("graph is not a tree")]
    NotATree,
    #[error("black labels are not 1..n")]
    BlackLabels,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PlaneTree {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    black_by_label: Vec<Option<VertexId>>,
}

impl PlaneTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, color: Color, label: Option<usize>) -> VertexId {
        let id = VertexId(self.vertices.len());
        self.vertices.push(Vertex {
            color,
            label,
            rotation: Vec::new(),
            origin: Origin::Organic,
            touched: false,
            alive: true,
        });
        if color == Color::Black {
            if let Some(l) = label {
                if self.black_by_label.len() <= l {
                    self.black_by_label.resize(l + 1, None);
                }
                self.black_by_label[l] = Some(id);
            }
        }
        id
    }

    /// Creates an edge without placing it in either rotation.
    pub fn add_edge(&mut self, label: usize, black: VertexId, white: VertexId) -> EdgeId {
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { label, black, white, state: EdgeState::Solid, alive: true });
        id
    }

    /// Creates an edge and appends it to both rotations.
    pub fn connect(&mut self, label: usize, black: VertexId, white: VertexId) -> EdgeId {
        let e = self.add_edge(label, black, white);
        self.vertices[black.0].rotation.push(e);
        self.vertices[white.0].rotation.push(e);
        e
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn vertex_mut(&mut self, v: VertexId) -> &mut Vertex {
        &mut self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_mut(&mut self, e: EdgeId) -> &mut Edge {
        &mut self.edges[e.0]
    }

    pub fn is_vertex_alive(&self, v: VertexId) -> bool {
        self.vertices.get(v.0).map_or(false, |x| x.alive)
    }

    pub fn is_edge_alive(&self, e: EdgeId) -> bool {
        self.edges.get(e.0).map_or(false, |x| x.alive)
    }

    /// Number of slots, live or dead.
    pub fn vertex_slots(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_slots(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].alive).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&i| self.edges[i].alive).map(EdgeId)
    }

    pub fn whites(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_ids().filter(|&v| self.vertices[v.0].color == Color::White)
    }

    pub fn blacks(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_ids().filter(|&v| self.vertices[v.0].color == Color::Black)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids().count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ids().count()
    }

    pub fn white_count(&self) -> usize {
        self.whites().count()
    }

    pub fn black_count(&self) -> usize {
        self.blacks().count()
    }

    pub fn black(&self, label: usize) -> VertexId {
        self.black_by_label[label].expect("black label present")
    }

    pub fn try_black(&self, label: usize) -> Option<VertexId> {
        self.black_by_label.get(label).copied().flatten()
    }

    /// Label of a black vertex; panics on white vertices.
    #[inline]
    pub fn black_label(&self, v: VertexId) -> usize {
        self.vertices[v.0].label.expect("black vertices are labeled")
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.vertices[v.0].rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertices[v.0].rotation.len()
    }

    #[inline]
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let ed = &self.edges[e.0];
        if ed.black == v {
            ed.white
        } else {
            ed.black
        }
    }

    pub fn position(&self, v: VertexId, e: EdgeId) -> usize {
        self.vertices[v.0]
            .rotation
            .iter()
            .position(|&x| x == e)
            .expect("edge incident to vertex")
    }

    /// The edge following `e` counterclockwise around `v`.
    pub fn ccw_next(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let r = &self.vertices[v.0].rotation;
        r[(self.position(v, e) + 1) % r.len()]
    }

    /// The edge preceding `e` counterclockwise around `v`, i.e. the next one clockwise.
    pub fn ccw_prev(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let r = &self.vertices[v.0].rotation;
        r[(self.position(v, e) + r.len() - 1) % r.len()]
    }

    /// Rotation at `v` read counterclockwise starting right after `e` (excluding `e`).
    pub fn ccw_after(&self, v: VertexId, e: EdgeId) -> Vec<EdgeId> {
        let r = &self.vertices[v.0].rotation;
        let p = self.position(v, e);
        (1..r.len()).map(|i| r[(p + i) % r.len()]).collect()
    }

    /// Rotation at `v` read clockwise starting right after `e` (excluding `e`).
    pub fn cw_after(&self, v: VertexId, e: EdgeId) -> Vec<EdgeId> {
        let r = &self.vertices[v.0].rotation;
        let p = self.position(v, e);
        (1..r.len()).map(|i| r[(p + r.len() - i) % r.len()]).collect()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices[v.0].rotation.iter().map(move |&e| self.other_end(e, v))
    }

    /// The edge between `a` and `b`, if any.
    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.vertices[a.0].rotation.iter().copied().find(|&e| self.other_end(e, a) == b)
    }

    /// Removes the edge from both rotations and kills it.
    pub fn remove_edge(&mut self, e: EdgeId) {
        let (b, w) = (self.edges[e.0].black, self.edges[e.0].white);
        self.vertices[b.0].rotation.retain(|&x| x != e);
        self.vertices[w.0].rotation.retain(|&x| x != e);
        self.edges[e.0].alive = false;
    }

    /// Kills a vertex; its rotation must already be empty or be moved elsewhere.
    pub fn retire_vertex(&mut self, v: VertexId) {
        let vx = &mut self.vertices[v.0];
        vx.alive = false;
        vx.rotation.clear();
        if vx.color == Color::Black {
            if let Some(l) = vx.label {
                if self.black_by_label.get(l) == Some(&Some(v)) {
                    self.black_by_label[l] = None;
                }
            }
        }
    }

    /// Repoints the white end of `e` to `w` (rotations are not touched).
    pub fn set_white_end(&mut self, e: EdgeId, w: VertexId) {
        self.edges[e.0].white = w;
    }

    /// Repoints the black end of `e` to `b` (rotations are not touched).
    pub fn set_black_end(&mut self, e: EdgeId, b: VertexId) {
        self.edges[e.0].black = b;
    }

    /// Unique path between two vertices, as a vertex sequence.
    pub fn path(&self, from: VertexId, to: VertexId) -> Vec<VertexId> {
        let mut prev = vec![usize::MAX; self.vertices.len()];
        let mut queue = VecDeque::new();
        prev[from.0] = from.0;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for u in self.neighbors(v) {
                if prev[u.0] == usize::MAX {
                    prev[u.0] = v.0;
                    queue.push_back(u);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = VertexId(prev[cur.0]);
            out.push(cur);
        }
        out.reverse();
        out
    }

    /// Path from black 1 to black n, where n is the number of black vertices.
    pub fn spine_path(&self) -> Vec<VertexId> {
        let n = self.black_count();
        self.path(self.black(1), self.black(n))
    }

    /// Checks bipartiteness, rotation consistency, the tree property and black labels.
    pub fn check(&self) -> Result<(), TreeDefect> {
        let mut seen_in_rotation = vec![0u8; self.edges.len()];
        for v in self.vertex_ids() {
            for &e in self.rotation(v) {
                if !self.is_edge_alive(e) {
                    return Err(TreeDefect::Rotation(v));
                }
                let ed = self.edge(e);
                if ed.black != v && ed.white != v {
                    return Err(TreeDefect::Rotation(v));
                }
                seen_in_rotation[e.0] += 1;
            }
        }
        for e in self.edge_ids() {
            let ed = self.edge(e);
            if seen_in_rotation[e.0] != 2 {
                return Err(TreeDefect::Rotation(ed.black));
            }
            if self.vertex(ed.black).color != Color::Black || self.vertex(ed.white).color != Color::White {
                return Err(TreeDefect::NotBipartite(e));
            }
        }
        let nv = self.vertex_count();
        if nv == 0 || self.edge_count() + 1 != nv {
            return Err(TreeDefect::NotATree);
        }
        let start = self.vertex_ids().next().expect("nonempty");
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![start];
        seen[start.0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u.0] {
                    seen[u.0] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        if count != nv {
            return Err(TreeDefect::NotATree);
        }
        let n = self.black_count();
        let mut labels: Vec<usize> = self.blacks().filter_map(|b| self.vertex(b).label).collect();
        labels.sort_unstable();
        if labels != (1..=n).collect::<Vec<_>>() {
            return Err(TreeDefect::BlackLabels);
        }
        Ok(())
    }

    /// Structural equality up to dead slots and ids: compares the rotation system
    /// with vertices matched through black labels and edges through edge labels.
    /// Only meaningful for trees whose edge labels are all distinct.
    pub fn same_labeled_structure(&self, other: &PlaneTree) -> bool {
        self.labeled_signature() == other.labeled_signature()
    }

    /// Canonical signature: for each black label the ccw edge-label cycle, and for
    /// each white vertex its ccw edge-label cycle, sorted.
    pub fn labeled_signature(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let canon = |mut v: Vec<usize>| {
            if let Some(p) = (0..v.len()).min_by_key(|&i| v[i]) {
                v.rotate_left(p);
            }
            v
        };
        let n = self.black_count();
        let blacks = (1..=n)
            .map(|l| match self.try_black(l) {
                Some(b) => canon(self.rotation(b).iter().map(|&e| self.edge(e).label).collect()),
                None => Vec::new(),
            })
            .collect();
        let mut whites: Vec<Vec<usize>> = self
            .whites()
            .map(|w| canon(self.rotation(w).iter().map(|&e| self.edge(e).label).collect()))
            .collect();
        whites.sort();
        (blacks, whites)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> PlaneTree {
        let mut t = PlaneTree::new();
        let b1 = t.add_vertex(Color::Black, Some(1));
        let b2 = t.add_vertex(Color::Black, Some(2));
        let w = t.add_vertex(Color::White, None);
        let l1 = t.add_vertex(Color::White, None);
        t.connect(1, b1, w);
        t.connect(2, b2, w);
        t.connect(3, b1, l1);
        t
    }

    #[test]
    fn rotation_navigation() {
        let t = toy();
        let b1 = t.black(1);
        let r = t.rotation(b1).to_vec();
        assert_eq!(t.ccw_next(b1, r[0]), r[1]);
        assert_eq!(t.ccw_prev(b1, r[0]), r[1]);
        assert_eq!(t.ccw_after(b1, r[0]), vec![r[1]]);
        assert!(t.check().is_ok());
        assert_eq!(t.spine_path().len(), 3);
    }

    #[test]
    fn detects_non_tree() {
        let mut t = toy();
        let b2 = t.black(2);
        let extra = t.add_vertex(Color::White, None);
        let _ = extra;
        assert_eq!(t.check(), Err(TreeDefect::NotATree));
        let mut u = toy();
        let w = u.whites().next().unwrap();
        u.connect(9, w, b2);
        assert!(u.check().is_err());
    }
}
