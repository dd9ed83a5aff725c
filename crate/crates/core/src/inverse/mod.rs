//! The inverse map: from a Stanley tree back to the minimal factorization.
//!
//! Each cycle `σ_B` is read off the edges of `B` that still carry its labels,
//! plus the one or two labels `B` gave away during the forward run. Finding
//! those is where the unfolding and the backbone analysis come in.

mod backbone;
mod predict;
mod unfold;

use std::fmt;

use thiserror::Error;

use crate::factorization::MinimalFactorization;
use crate::perm::Cycle;
use crate::plane_tree::{EdgeId, Orientation, PlaneTree, VertexId};
use crate::stanley::StanleyTree;

pub use backbone::{Backbone, BackboneEdge, Segment, SegmentLabels};
pub use predict::{observed_neighborhoods, predict_direct_neighborhoods, t1_backbone, Neighborhoods, Node};
pub use unfold::{greedy_subsequence, unfold, Direction, UnfoldedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverseError {
    #[error("type {0} is not admissible: need n >= 2 and every part positive")]
    Type(String),
    #[error("tree is outside the image: {0}")]
    OutOfImage(String),
    #[error("vertex {0} lies on the spine")]
    OnSpine(VertexId),
    #[error("predicted neighborhoods do not form a tree: {0}")]
    Prediction(String),
}

/// Which rule recovered a cycle.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum RecoveryCase {
    A,
    B,
    C,
    D,
    I,
    II,
    III,
}

impl fmt::Display for RecoveryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecoveryCase::A => "a",
            RecoveryCase::B => "b",
            RecoveryCase::C => "c",
            RecoveryCase::D => "d",
            RecoveryCase::I => "i",
            RecoveryCase::II => "ii",
            RecoveryCase::III => "iii",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WhiteOrigin {
    Organic,
    Artificial,
}

/// Read-only view of `T₂` with the data every recovery needs.
pub struct Analysis {
    pub tree: PlaneTree,
    pub orient: Orientation,
    n: usize,
    /// Largest black label around each white vertex (0 for blacks).
    max_nb: Vec<usize>,
}

impl Analysis {
    pub fn new(t: &StanleyTree) -> Result<Analysis, InverseError> {
        let ty = t.type_of();
        if ty.n() < 2 || !ty.all_positive() {
            return Err(InverseError::Type(ty.to_string()));
        }
        let tree = t.to_plane_tree();
        let orient = Orientation::of(&tree);
        let mut max_nb = vec![0; tree.vertex_slots()];
        for w in tree.whites() {
            max_nb[w.0] = tree.neighbors(w).map(|b| tree.black_label(b)).max().unwrap_or(0);
        }
        Ok(Analysis { n: ty.n(), tree, orient, max_nb })
    }

    fn label(&self, e: EdgeId) -> usize {
        self.tree.edge(e).label
    }

    fn name(&self, b: VertexId) -> usize {
        self.tree.black_label(b)
    }

    /// The white end of `e` is attracted to its black end.
    fn attracted(&self, e: EdgeId) -> bool {
        let ed = self.tree.edge(e);
        self.max_nb[ed.white.0] == self.name(ed.black)
    }

    fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.orient.parent(&self.tree, v)
    }

    /// Organic iff the largest neighbor is the parent.
    pub fn classify_white(&self, v: VertexId) -> Result<WhiteOrigin, InverseError> {
        if self.orient.on_spine[v.0] {
            return Err(InverseError::OnSpine(v));
        }
        let p = self.parent(v).expect("non-spine vertices have parents");
        Ok(if self.max_nb[v.0] == self.name(p) { WhiteOrigin::Organic } else { WhiteOrigin::Artificial })
    }

    /// Edge from a child white to its parent black that did not come from that black's cycle.
    fn is_artificial_child_edge(&self, e: EdgeId) -> bool {
        let w = self.tree.edge(e).white;
        !self.orient.on_spine[w.0] && self.orient.parent_edge[w.0] == Some(e) && !self.attracted(e)
    }

    /// `σ_B` read from `first`, the given lost labels, then the labels `B` kept.
    fn assemble(&self, b: VertexId, first: EdgeId, lost: &[usize]) -> Vec<usize> {
        let mut out = vec![self.label(first)];
        out.extend_from_slice(lost);
        for e in self.tree.ccw_after(b, first) {
            if self.attracted(e) {
                out.push(self.label(e));
            }
        }
        out
    }

    /// Recovers `σ_B` for a black vertex at distance at least two from the spine.
    pub fn recover_cycle_away(&self, b: usize) -> Result<(Vec<usize>, RecoveryCase), InverseError> {
        let t = &self.tree;
        let bv = t.black(b);
        let be = self.orient.parent_edge[bv.0].ok_or(InverseError::OnSpine(bv))?;
        let w = t.edge(be).white;
        let we = self.orient.parent_edge[w.0].ok_or(InverseError::OnSpine(w))?;
        let j = t.edge(we).black;
        let y = self.max_nb[w.0];
        if y == self.name(j) {
            // the parent white is organic: unfold all of its children
            let list = t.ccw_after(w, we);
            let e1 = self.folded_parent_label(&list, be, self.label(we))?;
            return Ok((self.assemble(bv, be, &[e1]), RecoveryCase::A));
        }
        let gy = t.edge_between(w, t.black(y)).expect("max neighbor is adjacent");
        if y == b {
            let e2 = self.label(we);
            let e1 = self.jumped_parent_label(j, we, y)?;
            return Ok((self.assemble(bv, be, &[e2, e1]), RecoveryCase::D));
        }
        let after_j = t.ccw_after(w, we);
        let py = after_j.iter().position(|&e| e == gy).expect("edge around w");
        let blue = &after_j[..py];
        let red = &after_j[py + 1..];
        if blue.contains(&be) {
            let e1 = self.folded_parent_label(blue, be, self.label(we))?;
            Ok((self.assemble(bv, be, &[e1]), RecoveryCase::B))
        } else {
            let e1 = self.folded_parent_label(red, be, self.label(gy))?;
            Ok((self.assemble(bv, be, &[e1]), RecoveryCase::C))
        }
    }

    /// Unfolds the blacks on `edges` (counterclockwise around one white) and
    /// returns the label that `target` carried towards its parent before folding.
    fn folded_parent_label(&self, edges: &[EdgeId], target: EdgeId, parental: usize) -> Result<usize, InverseError> {
        let order: Vec<usize> = edges.iter().map(|&e| self.name(self.tree.edge(e).black)).collect();
        let labels: Vec<usize> = edges.iter().map(|&e| self.label(e)).collect();
        let u = unfold(&order, &labels, parental, Direction::Increasing)?;
        let i = edges.iter().position(|&e| e == target).ok_or_else(|| InverseError::OutOfImage("black outside its folded list".into()))?;
        Ok(u.parent_edge_label(i))
    }

    /// The label `y` lost towards its old grandparent, read from the artificial
    /// children of `j`. `to_y` is the edge from `j` to the white created for `y`.
    fn jumped_parent_label(&self, j: VertexId, to_y: EdgeId, y: usize) -> Result<usize, InverseError> {
        let t = &self.tree;
        let rot = t.rotation(j);
        let m = rot.len();
        let p = t.position(j, to_y);
        // clockwise is backwards in the stored rotation; walk back to the separator
        let mut s = p;
        loop {
            s = (s + 1) % m;
            if !self.is_artificial_child_edge(rot[s]) {
                break;
            }
            if s == p {
                return Err(InverseError::OutOfImage("no separator around a jump parent".into()));
            }
        }
        let sep = rot[s];
        let mut block = Vec::new();
        let mut i = s;
        loop {
            i = (i + m - 1) % m;
            if !self.is_artificial_child_edge(rot[i]) {
                break;
            }
            block.push(rot[i]);
        }
        let order: Vec<usize> = block.iter().map(|&e| self.max_nb[t.edge(e).white.0]).collect();
        let labels: Vec<usize> = block.iter().map(|&e| self.label(e)).collect();
        let u = unfold(&order, &labels, self.label(sep), Direction::Decreasing)?;
        let i = u.position(y).ok_or_else(|| InverseError::OutOfImage("jumped black missing from its block".into()))?;
        Ok(u.parent_edge_label(i))
    }

    /// Distance of a black vertex from the spine: 0, 1, or at least 3.
    fn spine_distance(&self, b: VertexId) -> usize {
        self.orient.depth[b.0]
    }

    pub fn recover_cycle(&self, b: usize) -> Result<(Vec<usize>, RecoveryCase), InverseError> {
        let bv = self.tree.black(b);
        match self.spine_distance(bv) {
            0 | 1 => self.recover_cycle_near_spine(b),
            _ => self.recover_cycle_away(b),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// The inverse map together with the rule used for each cycle.
pub fn run_a_inverse_explained(t: &StanleyTree) -> Result<(MinimalFactorization, Vec<RecoveryCase>), InverseError> {
    let a = Analysis::new(t)?;
    let mut factors = Vec::with_capacity(a.n);
    let mut cases = Vec::with_capacity(a.n);
    for b in 1..=a.n {
        let (labels, case) = a.recover_cycle(b)?;
        let c = Cycle::new(labels).map_err(|e| InverseError::OutOfImage(e.to_string()))?;
        factors.push(c);
        cases.push(case);
    }
    let f = MinimalFactorization::from_parts(t.k(), factors);
    if !f.validate() {
        return Err(InverseError::OutOfImage("recovered cycles are not a minimal factorization".into()));
    }
    Ok((f, cases))
}

pub fn run_a_inverse(t: &StanleyTree) -> Result<MinimalFactorization, InverseError> {
    run_a_inverse_explained(t).map(|(f, _)| f)
}
