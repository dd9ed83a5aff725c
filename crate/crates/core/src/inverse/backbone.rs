//! Spine whites of `T₂` opened back into backbone segments.

use super::{greedy_subsequence, Analysis, Direction, InverseError};
use crate::plane_tree::{EdgeId, VertexId};

/// The neighborhood of one white spine vertex of `T₂`, split into its two halves.
///
/// Each half runs counterclockwise from a spine neighbor up to (not including)
/// the other one. The half with the smaller maximum holds `A_r,…,A_1`, the other
/// holds `B_s,…,B_1`; both chains increase along the half.
#[derive(Clone, Debug)]
pub struct Segment {
    pub white: VertexId,
    pub a_edges: Vec<EdgeId>,
    /// Positions in `a_edges` of `A_r, …, A_1`.
    pub a_chain: Vec<usize>,
    pub b_edges: Vec<EdgeId>,
    /// Positions in `b_edges` of `B_s, …, B_1`.
    pub b_chain: Vec<usize>,
}

/// Black labels of a segment, as they sat on the spine of `T₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentLabels {
    /// `A_1, …, A_r`.
    pub a: Vec<usize>,
    /// `B_1, …, B_s`.
    pub b: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BackboneEdge {
    /// Smaller label first.
    pub from: usize,
    pub to: usize,
    pub bald: bool,
}

/// The oriented spine skeleton of `T₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Backbone {
    /// Black spine labels of `T₁` in order from 1 to n.
    pub vertices: Vec<usize>,
    /// Edges between consecutive vertices, in the same order.
    pub edges: Vec<BackboneEdge>,
    pub segments: Vec<SegmentLabels>,
}

impl Backbone {
    /// Segments recomputed from the bald/hairy flags alone.
    pub fn segments_from_flags(&self) -> Vec<SegmentLabels> {
        let m = self.edges.len();
        // follow bald edges whose arrow points at the current chain end
        let grow = |start: usize, idx: &mut dyn Iterator<Item = usize>| {
            let mut chain = vec![start];
            for i in idx {
                let f = self.edges[i];
                if !f.bald || f.to != *chain.last().expect("nonempty") {
                    break;
                }
                chain.push(f.from);
            }
            chain
        };
        let mut out = Vec::new();
        for (h, e) in self.edges.iter().enumerate() {
            if e.bald {
                continue;
            }
            let left = &mut (0..h).rev();
            let right = &mut (h + 1..m);
            let (a, b) = if self.vertices[h] == e.from {
                (grow(e.from, left), grow(e.to, right))
            } else {
                (grow(e.from, right), grow(e.to, left))
            };
            out.push(SegmentLabels { a, b });
        }
        out
    }
}

impl Segment {
    pub fn r(&self) -> usize {
        self.a_chain.len()
    }

    pub fn s(&self) -> usize {
        self.b_chain.len()
    }
}

impl Analysis {
    /// Splits the neighbors of a white spine vertex into halves and finds both chains.
    pub fn segment_at(&self, w: VertexId) -> Result<Segment, InverseError> {
        let t = &self.tree;
        let rot = t.rotation(w);
        let spine_pos: Vec<usize> = (0..rot.len()).filter(|&i| self.orient.on_spine[t.edge(rot[i]).black.0]).collect();
        if spine_pos.len() != 2 {
            return Err(InverseError::OutOfImage("white spine vertex without two spine neighbors".into()));
        }
        let m = rot.len();
        let half = |from: usize, to: usize| -> Vec<EdgeId> {
            let mut v = Vec::new();
            let mut i = from;
            while i != to {
                v.push(rot[i]);
                i = (i + 1) % m;
            }
            v
        };
        let h1 = half(spine_pos[0], spine_pos[1]);
        let h2 = half(spine_pos[1], spine_pos[0]);
        let max_of = |h: &[EdgeId]| h.iter().map(|&e| self.name(t.edge(e).black)).max().expect("nonempty half");
        let (a_edges, b_edges) = if max_of(&h1) < max_of(&h2) { (h1, h2) } else { (h2, h1) };
        let chain = |h: &[EdgeId]| {
            let names: Vec<usize> = h.iter().map(|&e| self.name(t.edge(e).black)).collect();
            greedy_subsequence(&names, Direction::Increasing)
        };
        let a_chain = chain(&a_edges);
        let b_chain = chain(&b_edges);
        Ok(Segment { white: w, a_edges, a_chain, b_edges, b_chain })
    }

    fn black_name_of(&self, e: EdgeId) -> usize {
        self.name(self.tree.edge(e).black)
    }

    /// The backbone of `T₁`, read off the segments of `T₂`.
    pub fn build_backbone(&self) -> Result<Backbone, InverseError> {
        let t = &self.tree;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut segments = Vec::new();
        let spine = &self.orient.spine;
        vertices.push(self.name(spine[0]));
        for pair in spine.windows(3).step_by(2) {
            let (prev, w) = (pair[0], pair[1]);
            let seg = self.segment_at(w)?;
            let a: Vec<usize> = seg.a_chain.iter().rev().map(|&p| self.black_name_of(seg.a_edges[p])).collect();
            let b: Vec<usize> = seg.b_chain.iter().rev().map(|&p| self.black_name_of(seg.b_edges[p])).collect();
            // path through the segment as it was in T₁, starting next to `prev`
            let mut path: Vec<(usize, usize, bool)> = Vec::new();
            for i in (1..a.len()).rev() {
                path.push((a[i], a[i - 1], true));
            }
            path.push((a[0], b[0], false));
            for i in 1..b.len() {
                path.push((b[i - 1], b[i], true));
            }
            let a_first = *a.last().expect("nonempty") == self.name(prev);
            let mut seq: Vec<usize> = a.iter().rev().copied().chain(b.iter().copied()).collect();
            if !a_first {
                seq.reverse();
                path.reverse();
            }
            if seq[0] != self.name(prev) || t.vertex(prev).label.is_none() {
                return Err(InverseError::OutOfImage("segment does not attach to the spine".into()));
            }
            vertices.extend_from_slice(&seq[1..]);
            for (u, v, bald) in path {
                edges.push(BackboneEdge { from: u.min(v), to: u.max(v), bald });
            }
            segments.push(SegmentLabels { a, b });
        }
        Ok(Backbone { vertices, edges, segments })
    }

    /// Cases (i)–(iii): spine blacks and blacks hanging off a white spine vertex.
    pub fn recover_cycle_near_spine(&self, b: usize) -> Result<(Vec<usize>, super::RecoveryCase), InverseError> {
        use super::RecoveryCase;
        let t = &self.tree;
        let bv = t.black(b);
        if self.orient.on_spine[bv.0] {
            let mut out = Vec::new();
            for &e in t.rotation(bv) {
                if self.is_artificial_child_edge(e) {
                    continue;
                }
                out.push(self.label(e));
                let w = t.edge(e).white;
                if self.orient.on_spine[w.0] {
                    let seg = self.segment_at(w)?;
                    // the top of a one-edge B side gave its spine label to A₁
                    if seg.s() == 1 && seg.b_edges[0] == e {
                        let a1 = seg.a_edges[*seg.a_chain.last().expect("nonempty")];
                        out.push(self.label(a1));
                    }
                }
            }
            return Ok((out, RecoveryCase::III));
        }
        let be = self.orient.parent_edge[bv.0].expect("non-spine black has a parent");
        let w = t.edge(be).white;
        let seg = self.segment_at(w)?;
        let (edges, chain, on_a, p) = match seg.a_edges.iter().position(|&e| e == be) {
            Some(p) => (&seg.a_edges, &seg.a_chain, true, p),
            None => {
                let p = seg.b_edges.iter().position(|&e| e == be).expect("edge around w");
                (&seg.b_edges, &seg.b_chain, false, p)
            }
        };
        if let Some(ci) = chain.iter().position(|&q| q == p) {
            if ci == 0 {
                return Err(InverseError::OutOfImage("segment end off the spine".into()));
            }
            let outward = self.label(edges[chain[ci - 1]]);
            let lost = if !on_a && ci + 1 == chain.len() && chain.len() >= 2 {
                let a1 = self.label(seg.a_edges[*seg.a_chain.last().expect("nonempty")]);
                vec![a1, outward]
            } else {
                vec![outward]
            };
            return Ok((self.assemble(bv, be, &lost), RecoveryCase::II));
        }
        let ci = chain.iter().rposition(|&q| q < p).expect("half starts with a chain element");
        let start = chain[ci];
        let end = chain.get(ci + 1).copied().unwrap_or(edges.len());
        let region = &edges[start + 1..end];
        let e1 = self.folded_parent_label(region, be, self.label(edges[start]))?;
        Ok((self.assemble(bv, be, &[e1]), RecoveryCase::I))
    }
}
