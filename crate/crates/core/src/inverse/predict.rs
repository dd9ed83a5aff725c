//! The shape of `T₂` read directly off `T₁`, without running any rewrite.
//!
//! Every white vertex of `T₂` is either a white of `T₁` that survives, the
//! white created by the jump of some black, or the merge of a backbone segment.
//! Its neighbors come from folding pruned subtrees (left-hand depth-first
//! order); the artificial children of a black come from a right-hand search.

use std::collections::BTreeMap;

use super::{Backbone, BackboneEdge, InverseError, SegmentLabels};
use crate::plane_tree::{compute_cluster_table, ClusterTable, Color, EdgeId, Orientation, Origin, PlaneTree, VertexId};
use crate::stanley::StanleyTree;

/// A vertex of `T₂`, named by where it comes from in `T₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Black(usize),
    /// A non-spine white of `T₁` that survives, by its cluster label.
    Organic(usize),
    /// The white created by the jump of this black.
    Artificial(usize),
    /// The white spine vertex of the i-th backbone segment, counted from black 1.
    Spine(usize),
}

/// Counterclockwise neighbors of every vertex of `T₂` together with the edge
/// labels, each rotation started at its smallest label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhoods {
    pub k: usize,
    pub n: usize,
    pub rotations: BTreeMap<Node, Vec<(Node, usize)>>,
}

impl Neighborhoods {
    fn insert(&mut self, v: Node, mut rot: Vec<(Node, usize)>) {
        if let Some(p) = (0..rot.len()).min_by_key(|&i| rot[i].1) {
            rot.rotate_left(p);
        }
        self.rotations.insert(v, rot);
    }

    /// Assembles the table into a plane tree; fails if the rotations disagree.
    pub fn to_plane_tree(&self) -> Result<PlaneTree, InverseError> {
        let bad = |m: &str| InverseError::Prediction(m.to_string());
        let mut t = PlaneTree::new();
        let mut id = BTreeMap::new();
        for i in 1..=self.n {
            id.insert(Node::Black(i), t.add_vertex(Color::Black, Some(i)));
        }
        for &v in self.rotations.keys() {
            if !matches!(v, Node::Black(_)) {
                id.insert(v, t.add_vertex(Color::White, None));
            }
        }
        let mut black_end = vec![None; self.k + 1];
        let mut white_end = vec![None; self.k + 1];
        for (&v, rot) in &self.rotations {
            let ends = if matches!(v, Node::Black(_)) { &mut black_end } else { &mut white_end };
            for &(u, l) in rot {
                if l == 0 || l > self.k || ends[l].is_some() {
                    return Err(bad("edge label repeated or out of range"));
                }
                ends[l] = Some((v, u));
            }
        }
        for l in 1..=self.k {
            match (black_end[l], white_end[l]) {
                (Some((b, w1)), Some((w, b1))) if w1 == w && b1 == b => {
                    t.add_edge(l, id[&b], id[&w]);
                }
                _ => return Err(bad("edge ends disagree")),
            }
        }
        for (v, rot) in &self.rotations {
            t.vertex_mut(id[v]).rotation = rot.iter().map(|&(_, l)| EdgeId(l - 1)).collect();
        }
        t.check().map_err(|e| bad(&e.to_string()))?;
        Ok(t)
    }

    pub fn to_stanley(&self) -> Result<StanleyTree, InverseError> {
        StanleyTree::from_plane_tree(&self.to_plane_tree()?).map_err(|e| InverseError::Prediction(e.to_string()))
    }
}

/// A maximal backbone segment of `T₁` with the whites along it.
#[derive(Clone, Debug)]
struct TreeSegment {
    /// `A_1, …, A_r`.
    a: Vec<VertexId>,
    /// `B_1, …, B_s`.
    b: Vec<VertexId>,
    /// `E_0, …, E_{r−1}`; `E_i` sits between `A_i` and `A_{i+1}`, `E_0` between `A_1` and `B_1`.
    e: Vec<VertexId>,
    /// `F_0 = E_0, F_1, …, F_{s−1}`.
    f: Vec<VertexId>,
    /// The non-spine white next to `B_1` that the hairy bend plants into the segment.
    gamma: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    NeverSpine,
    /// Leaves the spine; the index is the segment.
    Leaving(usize),
    /// Stays on the spine of `T₂`.
    Spine,
}

struct Predictor<'a> {
    t: &'a PlaneTree,
    o: Orientation,
    table: ClusterTable,
    segs: Vec<TreeSegment>,
    seg_of: Vec<Option<usize>>,
    role: Vec<Role>,
    consumed: Vec<bool>,
    jumped: Vec<bool>,
    art_parent: Vec<usize>,
}

/// Bald flags of the `T₁` spine: `flags[h]` is about the edge between spine
/// blacks `h` and `h+1`.
fn bald_flags(t: &PlaneTree, o: &Orientation) -> Vec<bool> {
    let sp = &o.spine;
    let m = sp.len() / 2;
    let n = t.black_count();
    (0..m)
        .map(|h| {
            let (p, q) = (sp[2 * h], sp[2 * h + 2]);
            let w1 = sp[2 * h + 1];
            // v2 is the larger end; w2 is its other spine white
            let (v2, w2) = if t.black_label(p) > t.black_label(q) {
                (p, (h > 0).then(|| sp[2 * h - 1]))
            } else {
                (q, sp.get(2 * h + 3).copied())
            };
            match w2 {
                Some(w2) if t.black_label(v2) != n => {
                    let e1 = t.edge_between(v2, w1).expect("spine edge");
                    let e2 = t.edge_between(v2, w2).expect("spine edge");
                    // going clockwise around v2, the edge to w2 follows the edge to w1
                    t.ccw_prev(v2, e1) == e2
                }
                _ => false,
            }
        })
        .collect()
}

/// Spine-index ranges `(A side, B side)` of each maximal segment.
fn segment_indices(t: &PlaneTree, o: &Orientation, bald: &[bool]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let lab = |i: usize| t.black_label(o.spine[2 * i]);
    let m = bald.len();
    let mut covered = vec![false; m];
    let mut out = Vec::new();
    for h in 0..m {
        if bald[h] {
            continue;
        }
        covered[h] = true;
        let (ia, ib) = if lab(h) < lab(h + 1) { (h, h + 1) } else { (h + 1, h) };
        let mut grow = |start: usize, away: isize| {
            let mut chain = vec![start];
            let mut cur = start as isize;
            loop {
                let next = cur + away;
                if next < 0 || next as usize > m {
                    break;
                }
                let e = cur.min(next) as usize;
                if !bald[e] || lab(next as usize) > lab(cur as usize) {
                    break;
                }
                covered[e] = true;
                chain.push(next as usize);
                cur = next;
            }
            chain
        };
        let away_a = ia as isize - ib as isize;
        let a = grow(ia, away_a);
        let b = grow(ib, -away_a);
        out.push((a, b));
    }
    assert!(covered.iter().all(|&c| c), "maximal segments must cover the backbone");
    out.sort_by_key(|(a, b)| *a.last().unwrap().min(b.last().unwrap()));
    out
}

/// The oriented backbone of `T₁` with its bald/hairy flags and maximal segments.
pub fn t1_backbone(t1: &PlaneTree) -> Backbone {
    let o = Orientation::of(t1);
    let bald = bald_flags(t1, &o);
    let lab = |i: usize| t1.black_label(o.spine[2 * i]);
    let vertices: Vec<usize> = (0..=bald.len()).map(lab).collect();
    let edges = bald
        .iter()
        .enumerate()
        .map(|(h, &b)| BackboneEdge { from: lab(h).min(lab(h + 1)), to: lab(h).max(lab(h + 1)), bald: b })
        .collect();
    let segments = segment_indices(t1, &o, &bald)
        .into_iter()
        .map(|(a, b)| SegmentLabels { a: a.into_iter().map(lab).collect(), b: b.into_iter().map(lab).collect() })
        .collect();
    Backbone { vertices, edges, segments }
}

impl<'a> Predictor<'a> {
    fn new(t: &'a PlaneTree) -> Predictor<'a> {
        let o = Orientation::of(t);
        let table = compute_cluster_table(t);
        let n = table.n;
        let slots = t.vertex_slots();
        let bald = bald_flags(t, &o);
        let sp = o.spine.clone();
        let between = |i: usize, j: usize| sp[i.min(j) * 2 + 1];
        let mut segs = Vec::new();
        let mut seg_of = vec![None; slots];
        let mut role = vec![Role::NeverSpine; n + 1];
        for (si, (a, b)) in segment_indices(t, &o, &bald).into_iter().enumerate() {
            let mut e = vec![between(a[0], b[0])];
            e.extend((1..a.len()).map(|i| between(a[i - 1], a[i])));
            let mut f = vec![e[0]];
            f.extend((1..b.len()).map(|i| between(b[i - 1], b[i])));
            let b1 = sp[2 * b[0]];
            let e0_edge = t.edge_between(b1, e[0]).expect("spine edge");
            let gamma = t.edge(t.ccw_prev(b1, e0_edge)).white;
            assert!(!o.on_spine[gamma.0], "the hairy edge plants a non-spine white");
            for &w in e.iter().chain(f.iter()) {
                seg_of[w.0] = Some(si);
            }
            seg_of[gamma.0] = Some(si);
            let a: Vec<VertexId> = a.iter().map(|&i| sp[2 * i]).collect();
            let b: Vec<VertexId> = b.iter().map(|&i| sp[2 * i]).collect();
            for (i, &v) in a.iter().enumerate() {
                role[t.black_label(v)] = if i + 1 == a.len() { Role::Spine } else { Role::Leaving(si) };
            }
            for (i, &v) in b.iter().enumerate() {
                role[t.black_label(v)] = if i + 1 == b.len() { Role::Spine } else { Role::Leaving(si) };
            }
            segs.push(TreeSegment { a, b, e, f, gamma });
        }
        let mut p = Predictor {
            t,
            o,
            table,
            segs,
            seg_of,
            role,
            consumed: vec![false; slots],
            jumped: vec![false; n + 1],
            art_parent: vec![0; n + 1],
        };
        for s in &p.segs {
            p.consumed[s.gamma.0] = true;
        }
        for b in t.blacks() {
            if p.o.on_spine[b.0] {
                continue;
            }
            let kids = p.kids_of_black(b);
            let m = kids.len();
            if p.anchor(p.parent_white(b)) > t.black_label(b) {
                p.consumed[kids[m - 1].0] = true;
            } else {
                p.jumped[t.black_label(b)] = true;
                p.consumed[kids[m - 1].0] = true;
                p.consumed[kids[m - 2].0] = true;
            }
        }
        p
    }

    fn cl(&self, w: VertexId) -> usize {
        self.t.edge(self.t.rotation(w)[0]).label
    }

    fn lab(&self, b: VertexId) -> usize {
        self.t.black_label(b)
    }

    fn parent_white(&self, b: VertexId) -> VertexId {
        self.o.parent(self.t, b).expect("non-spine black")
    }

    /// The edge of a white towards its parent; for spine whites, towards the anchor.
    fn anchor_edge(&self, w: VertexId) -> EdgeId {
        match self.o.parent_edge[w.0] {
            Some(e) => e,
            None => {
                let a = self.t.black(self.table.alpha[self.cl(w)]);
                self.t.edge_between(w, a).expect("anchor is adjacent")
            }
        }
    }

    fn anchor(&self, w: VertexId) -> usize {
        self.lab(self.t.edge(self.anchor_edge(w)).black)
    }

    /// Non-spine black children of a white, counterclockwise after the anchor edge.
    fn kids_of_white(&self, w: VertexId) -> Vec<VertexId> {
        self.t
            .ccw_after(w, self.anchor_edge(w))
            .into_iter()
            .map(|e| self.t.edge(e).black)
            .filter(|b| !self.o.on_spine[b.0])
            .collect()
    }

    /// Children of a non-spine black, counterclockwise after its parent edge;
    /// the last one is the leftmost.
    fn kids_of_black(&self, b: VertexId) -> Vec<VertexId> {
        let pe = self.o.parent_edge[b.0].expect("non-spine black");
        self.t.ccw_after(b, pe).into_iter().map(|e| self.t.edge(e).white).collect()
    }

    fn leftmost(&self, b: VertexId) -> VertexId {
        *self.kids_of_black(b).last().expect("black of degree at least two")
    }

    /// The white of `T₂` that a white of `T₁` ends up in.
    fn container(&self, w: VertexId) -> Node {
        if let Some(s) = self.seg_of[w.0] {
            return Node::Spine(s);
        }
        if !self.consumed[w.0] {
            return Node::Organic(self.cl(w));
        }
        let z = self.o.parent(self.t, w).expect("non-spine white");
        if self.jumped[self.lab(z)] {
            Node::Artificial(self.lab(z))
        } else {
            self.container(self.parent_white(z))
        }
    }

    /// Blacks folded into `w`, counterclockwise, with the labels they keep.
    fn fold(&self, w: VertexId, out: &mut Vec<(Node, usize)>) {
        let a = self.anchor(w);
        for b in self.kids_of_white(w) {
            if self.lab(b) < a {
                let l = self.leftmost(b);
                out.push((Node::Black(self.lab(b)), self.cl(l)));
                self.fold(l, out);
            }
        }
    }

    /// Whites created by the jumps out of cluster `w`, in clockwise order; they
    /// all hang at black `j`.
    fn chain(&mut self, w: VertexId, j: usize, out: &mut Vec<(Node, usize)>) {
        let a = self.anchor(w);
        for b in self.kids_of_white(w).into_iter().rev() {
            let y = self.lab(b);
            if y > a {
                let l = self.leftmost(b);
                out.push((Node::Artificial(y), self.cl(l)));
                self.art_parent[y] = j;
                self.chain(l, j, out);
            }
        }
    }

    /// The edges a black keeps or gains, counterclockwise, each with the
    /// cluster whose jumps hang clockwise next to it.
    fn slots(&self, v: VertexId) -> Vec<(Node, usize, VertexId)> {
        let t = self.t;
        let organic = |k: VertexId| (Node::Organic(self.cl(k)), self.cl(k), k);
        match self.role[self.lab(v)] {
            Role::NeverSpine => {
                let pe = self.o.parent_edge[v.0].expect("non-spine black");
                let p = t.edge(pe).white;
                let kids = self.kids_of_black(v);
                let m = kids.len();
                let mut out = Vec::with_capacity(m);
                if self.jumped[self.lab(v)] {
                    let v3 = kids[m - 2];
                    out.push((Node::Artificial(self.lab(v)), self.cl(v3), v3));
                    out.extend(kids[..m - 2].iter().map(|&k| organic(k)));
                } else {
                    let l = kids[m - 1];
                    out.push((self.container(p), self.cl(l), l));
                    out.extend(kids[..m - 1].iter().map(|&k| organic(k)));
                }
                out
            }
            Role::Leaving(si) => {
                let s = &self.segs[si];
                let (outer, inner) = if let Some(i) = s.a.iter().position(|&x| x == v) {
                    (s.e[i + 1], s.e[i])
                } else {
                    let i = s.b.iter().position(|&x| x == v).expect("segment member");
                    (s.f[i + 1], if i == 0 { s.gamma } else { s.f[i] })
                };
                let e_out = t.edge_between(v, outer).expect("spine edge");
                let mut out = vec![(Node::Spine(si), self.cl(inner), inner)];
                for e in t.ccw_after(v, e_out) {
                    let k = t.edge(e).white;
                    if !self.o.on_spine[k.0] && !self.consumed[k.0] {
                        out.push(organic(k));
                    }
                }
                out
            }
            Role::Spine => {
                let mut out = Vec::new();
                for &e in t.rotation(v) {
                    let w = t.edge(e).white;
                    if let (true, Some(si)) = (self.o.on_spine[w.0], self.seg_of[w.0]) {
                        if self.table.alpha[self.cl(w)] == self.lab(v) {
                            out.push((Node::Spine(si), self.cl(w), w));
                        } else {
                            let g = self.segs[si].gamma;
                            debug_assert_eq!(t.edge(t.ccw_prev(v, e)).white, g);
                            out.push((Node::Spine(si), self.cl(g), g));
                        }
                    } else if !self.consumed[w.0] {
                        out.push(organic(w));
                    }
                }
                out
            }
        }
    }

    fn run(mut self) -> Neighborhoods {
        let t = self.t;
        let mut nb = Neighborhoods { k: self.table.k, n: self.table.n, rotations: BTreeMap::new() };
        for i in 1..=self.table.n {
            let v = t.black(i);
            let mut rot = Vec::new();
            for (node, label, cluster) in self.slots(v) {
                let mut ch = Vec::new();
                self.chain(cluster, i, &mut ch);
                rot.extend(ch.into_iter().rev());
                rot.push((node, label));
            }
            nb.insert(Node::Black(i), rot);
        }
        for w in t.whites() {
            if self.o.on_spine[w.0] || self.consumed[w.0] {
                continue;
            }
            let z = self.lab(self.o.parent(t, w).expect("non-spine white"));
            let mut rot = vec![(Node::Black(z), self.cl(w))];
            self.fold(w, &mut rot);
            nb.insert(Node::Organic(self.cl(w)), rot);
        }
        for y in 1..=self.table.n {
            if !self.jumped[y] {
                continue;
            }
            let kids = self.kids_of_black(t.black(y));
            let (v2, v3) = (kids[kids.len() - 1], kids[kids.len() - 2]);
            let mut rot = vec![(Node::Black(self.art_parent[y]), self.cl(v2))];
            self.fold(v2, &mut rot);
            rot.push((Node::Black(y), self.cl(v3)));
            self.fold(v3, &mut rot);
            nb.insert(Node::Artificial(y), rot);
        }
        for (si, s) in self.segs.iter().enumerate() {
            let mut rot = Vec::new();
            for i in (0..s.a.len()).rev() {
                rot.push((Node::Black(self.lab(s.a[i])), self.cl(s.e[i])));
                self.fold(s.e[i], &mut rot);
            }
            for i in (1..s.b.len()).rev() {
                rot.push((Node::Black(self.lab(s.b[i])), self.cl(s.f[i])));
                self.fold(s.f[i], &mut rot);
            }
            rot.push((Node::Black(self.lab(s.b[0])), self.cl(s.gamma)));
            self.fold(s.gamma, &mut rot);
            nb.insert(Node::Spine(si), rot);
        }
        nb
    }
}

/// Predicts every neighborhood of `T₂ = 𝒜(f)` from `T₁` alone.
pub fn predict_direct_neighborhoods(t1: &PlaneTree) -> Neighborhoods {
    Predictor::new(t1).run()
}

/// The same table read off an actual output tree whose vertex ids descend from
/// `T₁` (white of cluster `c` at id `n+c−1`), as the forward run keeps them.
pub fn observed_neighborhoods(t2: &PlaneTree) -> Neighborhoods {
    let n = t2.black_count();
    let o = Orientation::of(t2);
    let mut spine_index = vec![None; t2.vertex_slots()];
    for (i, w) in o.spine.iter().skip(1).step_by(2).enumerate() {
        spine_index[w.0] = Some(i);
    }
    let name = |v: VertexId| -> Node {
        let x = t2.vertex(v);
        if x.color == Color::Black {
            return Node::Black(t2.black_label(v));
        }
        if let Some(i) = spine_index[v.0] {
            Node::Spine(i)
        } else if x.origin == Origin::Artificial {
            Node::Artificial(t2.neighbors(v).map(|b| t2.black_label(b)).max().expect("white has neighbors"))
        } else {
            Node::Organic(v.0 + 1 - n)
        }
    };
    let mut nb = Neighborhoods { k: t2.edge_count(), n, rotations: BTreeMap::new() };
    for v in t2.vertex_ids() {
        let rot = t2.rotation(v).iter().map(|&e| (name(t2.other_end(e, v)), t2.edge(e).label)).collect();
        nb.insert(name(v), rot);
    }
    nb
}
