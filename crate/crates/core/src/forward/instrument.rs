//! Runtime checks of the invariants the correctness argument relies on.

use std::collections::BTreeSet;
use std::fmt;

use super::{AlgorithmState, ForwardError, OpKind, OpRecord};
use crate::plane_tree::{EdgeId, EdgeState, Orientation, PlaneTree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantViolation {
    /// (I1) edges of the cluster do not share the recorded center.
    CommonCenter(usize),
    /// (I2) anchor not adjacent to the center.
    AnchorAdjacent(usize),
    /// (I3) root is not an edge of the cluster.
    RootInCluster(usize),
    /// (I4) root's black end differs from the anchor and is untouched.
    RootTouched(usize),
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantViolation::CommonCenter(c) => write!(f, "I1 fails for cluster {c}"),
            InvariantViolation::AnchorAdjacent(c) => write!(f, "I2 fails for cluster {c}"),
            InvariantViolation::RootInCluster(c) => write!(f, "I3 fails for cluster {c}"),
            InvariantViolation::RootTouched(c) => write!(f, "I4 fails for cluster {c}"),
        }
    }
}

/// First violated clause of the cluster invariant, if any.
pub fn invariant1_violation(s: &AlgorithmState) -> Option<InvariantViolation> {
    let t = &s.tree;
    let k = s.table.k;
    let mut has_edge = vec![false; k + 1];
    for e in t.edge_ids() {
        let ed = t.edge(e);
        if ed.white != s.center[ed.label] {
            return Some(InvariantViolation::CommonCenter(ed.label));
        }
        has_edge[ed.label] = true;
    }
    for c in 1..=k {
        if !has_edge[c] || !t.is_vertex_alive(s.center[c]) {
            return Some(InvariantViolation::CommonCenter(c));
        }
        let anchor = t.black(s.table.alpha[c]);
        if t.edge_between(s.center[c], anchor).is_none() {
            return Some(InvariantViolation::AnchorAdjacent(c));
        }
        let r = s.root[c];
        if !t.is_edge_alive(r) || t.edge(r).label != c {
            return Some(InvariantViolation::RootInCluster(c));
        }
        let rb = t.edge(r).black;
        if rb != anchor && !t.vertex(rb).touched {
            return Some(InvariantViolation::RootTouched(c));
        }
    }
    None
}

/// (I1)–(I4) for every cluster.
pub fn check_invariant1(s: &AlgorithmState) -> bool {
    invariant1_violation(s).is_none()
}

/// Number of white vertices attracted to each black label (index 0 unused).
///
/// A white vertex is attracted along its solid edges and along the dashed edge
/// to its largest dashed neighbor.
pub fn attraction_counts(t: &PlaneTree) -> Vec<usize> {
    let n = t.black_count();
    let mut counts = vec![0; n + 1];
    for w in t.whites() {
        for b in attracted_blacks(t, w) {
            counts[b] += 1;
        }
    }
    counts
}

fn attracted_blacks(t: &PlaneTree, w: VertexId) -> Vec<usize> {
    let mut out = Vec::new();
    let mut max_dashed = None;
    for &e in t.rotation(w) {
        let ed = t.edge(e);
        let l = t.black_label(ed.black);
        match ed.state {
            EdgeState::Solid => out.push(l),
            EdgeState::Dashed => max_dashed = max_dashed.max(Some(l)),
        }
    }
    out.extend(max_dashed);
    out.sort_unstable();
    out.dedup();
    out
}

/// Canonical description of the branch hanging below a black vertex: the edge
/// towards the spine plus everything on the far side of it.
fn branch_signature(t: &PlaneTree, z: VertexId, up: EdgeId) -> Option<Vec<(usize, usize, Vec<(usize, usize)>)>> {
    if !t.is_edge_alive(up) || t.edge(up).black != z {
        return None;
    }
    let mut out = Vec::new();
    let mut stack = vec![(z, up)];
    while let Some((v, from)) = stack.pop() {
        let rot: Vec<(usize, usize)> = t.rotation(v).iter().map(|&e| (e.0, t.edge(e).label)).collect();
        out.push((v.0, from.0, rot));
        for e in t.ccw_after(v, from) {
            stack.push((t.other_end(e, v), e));
        }
    }
    Some(out)
}

type Branch = Vec<(usize, usize, Vec<(usize, usize)>)>;

/// Stateful checker driven by the run loop when instrumentation is on.
pub(super) struct Checker {
    branches: Vec<Option<(VertexId, EdgeId, Branch)>>,
    anchored_before: Vec<bool>,
    spine_cycle_t1: Vec<Vec<usize>>,
}

impl Checker {
    pub(super) fn new(s: &AlgorithmState) -> Checker {
        let t = &s.tree;
        let orient = Orientation::of(t);
        let n = s.table.n;
        let mut branches = vec![None; n + 1];
        for label in 1..=n {
            let z = t.black(label);
            if let Some(up) = orient.parent_edge[z.0] {
                branches[label] = branch_signature(t, z, up).map(|b| (z, up, b));
            }
        }
        let mut spine_cycle_t1 = vec![Vec::new(); s.table.k + 1];
        for &c in &s.table.spine_clusters {
            spine_cycle_t1[c] = cluster_cycle(s, c);
        }
        Checker { branches, anchored_before: Vec::new(), spine_cycle_t1 }
    }

    pub(super) fn before_run(&mut self, s: &AlgorithmState) -> Result<(), ForwardError> {
        if let Some(v) = invariant1_violation(s) {
            return Err(ForwardError::Instrumentation(format!("initial tree: {v}")));
        }
        Ok(())
    }

    pub(super) fn before_step(&mut self, s: &AlgorithmState) {
        self.anchored_before = anchored(s);
    }

    pub(super) fn after_step(&mut self, s: &mut AlgorithmState, op: &OpRecord, spine_phase: bool) -> Result<(), ForwardError> {
        let err = |m: String| ForwardError::Instrumentation(format!("after {op}: {m}"));
        if let Some(v) = invariant1_violation(s) {
            return Err(err(v.to_string()));
        }
        // separation of root and anchor
        let now = anchored(s);
        let separated: Vec<usize> = (1..now.len()).filter(|&c| self.anchored_before[c] && !now[c]).collect();
        match op.kind {
            OpKind::Bend => {
                if !separated.is_empty() {
                    return Err(err(format!("bend separated root and anchor in {separated:?}")));
                }
            }
            OpKind::Jump => {
                if separated.len() > 1 {
                    return Err(err(format!("jump separated root and anchor in {separated:?}")));
                }
                if let Some(&c) = separated.first() {
                    if s.table.alpha[c] != op.y {
                        return Err(err(format!("separated cluster {c} was not anchored at y")));
                    }
                }
                let j = op.j.expect("jumps record j");
                if j >= op.y {
                    return Err(err(format!("j={j} is not below y")));
                }
            }
        }
        // attraction counters only go down
        let counts = attraction_counts(&s.tree);
        for (i, (&a, &b)) in counts.iter().zip(s.attraction.iter()).enumerate().skip(1) {
            if a > b {
                return Err(err(format!("attraction of {i} grew from {b} to {a}")));
            }
        }
        s.attraction = counts;
        // untouched branches are frozen
        for entry in self.branches.iter().flatten() {
            let (z, up, sig) = entry;
            if s.tree.vertex(*z).touched {
                continue;
            }
            if branch_signature(&s.tree, *z, *up).as_ref() != Some(sig) {
                return Err(err(format!("branch of black {} changed while untouched", s.tree.black_label(*z))));
            }
        }
        if spine_phase {
            let visited: BTreeSet<usize> = s.op_log.iter().map(|o| o.cluster).collect();
            let touched: BTreeSet<usize> = (1..=s.table.k).filter(|&c| s.touched_clusters[c]).collect();
            if visited != touched {
                return Err(err("touched clusters differ from visited ones".into()));
            }
            for &c in &s.table.spine_clusters {
                if s.touched_clusters[c] {
                    continue;
                }
                let anchor = s.tree.black(s.table.alpha[c]);
                if s.tree.edge(s.root[c]).black != anchor {
                    return Err(err(format!("untouched spine cluster {c} lost its anchored root")));
                }
                if cluster_cycle(s, c) != self.spine_cycle_t1[c] {
                    return Err(err(format!("untouched spine cluster {c} changed its cyclic order")));
                }
            }
        }
        Ok(())
    }

    pub(super) fn after_run(&mut self, s: &AlgorithmState) -> Result<(), ForwardError> {
        let n = s.table.n;
        let err = |m: String| ForwardError::Instrumentation(m);
        if s.op_log.len() != n - 1 {
            return Err(err(format!("{} operations, expected {}", s.op_log.len(), n - 1)));
        }
        let t = &s.tree;
        t.check().map_err(|d| err(d.to_string()))?;
        let mut labels: Vec<usize> = t.edge_ids().map(|e| t.edge(e).label).collect();
        labels.sort_unstable();
        if labels != (1..=s.table.k).collect::<Vec<_>>() {
            return Err(err("final edge labels are not 1..k".into()));
        }
        for w in t.whites() {
            if attracted_blacks(t, w).len() != 1 {
                return Err(err("a white vertex is attracted to several blacks".into()));
            }
        }
        let st = crate::stanley::StanleyTree::from_plane_tree(t).map_err(|e| err(e.to_string()))?;
        let b = st.type_of().b;
        if s.attraction[1..] != b[..] {
            return Err(err(format!("attraction {:?} differs from type {:?}", &s.attraction[1..], b)));
        }
        Ok(())
    }
}

/// Black labels around the center of cluster `c`, restricted to the cluster,
/// rotated to start at the smallest.
fn cluster_cycle(s: &AlgorithmState, c: usize) -> Vec<usize> {
    let t = &s.tree;
    let mut v: Vec<usize> = t
        .rotation(s.center[c])
        .iter()
        .filter(|&&e| t.edge(e).label == c)
        .map(|&e| t.black_label(t.edge(e).black))
        .collect();
    if let Some(p) = (0..v.len()).min_by_key(|&i| v[i]) {
        v.rotate_left(p);
    }
    v
}

fn anchored(s: &AlgorithmState) -> Vec<bool> {
    let t = &s.tree;
    (0..=s.table.k)
        .map(|c| c > 0 && t.edge(s.root[c]).black == t.black(s.table.alpha[c]))
        .collect()
}
