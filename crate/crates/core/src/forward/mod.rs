//! The map from minimal factorizations to Stanley trees.
//!
//! Starting from `T₁` every repeated edge label is removed by a sequence of bend
//! and jump rewrites: first around the spine clusters, then along the ribs.

mod instrument;

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::factorization::{Defect, MinimalFactorization};
use crate::plane_tree::{
    build_t0, compute_cluster_table, linear_extension, relabel_to_t1, ClusterTable, Color, EdgeId, EdgeState, Origin, PlaneTree,
    VertexId,
};
use crate::stanley::StanleyTree;

pub use instrument::{attraction_counts, check_invariant1, invariant1_violation, InvariantViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForwardError {
    #[error("input is not a minimal factorization: {0}")]
    Invalid(Defect),
    #[error("need at least two factors")]
    TooFewFactors,
    #[error("{op} x={x} y={y}: assumption {assumption} fails")]
    Precondition { op: OpKind, x: usize, y: usize, assumption: &'static str },
    #[error("instrumentation: {0}")]
    Instrumentation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Bend,
    Jump,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKind::Bend => write!(f, "B"),
            OpKind::Jump => write!(f, "J"),
        }
    }
}

/// One executed rewrite. `cluster` is the cluster `E₁` whose anchor is `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpRecord {
    pub kind: OpKind,
    pub x: usize,
    pub y: usize,
    pub j: Option<usize>,
    pub cluster: usize,
}

impl fmt::Display for OpRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{},{}", self.kind, self.x, self.y)?;
        if let Some(j) = self.j {
            write!(f, " j={j}")?;
        }
        Ok(())
    }
}

/// Order in which the outer loops visit their clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusterOrder {
    /// Spine clusters ascending; rib clusters parents first, smallest label first.
    #[default]
    Standard,
    /// Spine clusters descending; rib clusters parents first, largest label first.
    Reversed,
    /// A seeded random order (a random linear extension for the ribs).
    Shuffled(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub instrument: bool,
    pub spine_order: ClusterOrder,
    pub rib_order: ClusterOrder,
}

impl RunOptions {
    pub fn instrumented() -> Self {
        RunOptions { instrument: true, ..Default::default() }
    }
}

/// The mutable state of a run.
#[derive(Debug, Clone)]
pub struct AlgorithmState {
    pub tree: PlaneTree,
    pub table: ClusterTable,
    /// Current center of each cluster (index 0 unused).
    pub center: Vec<VertexId>,
    /// Current root edge of each cluster.
    pub root: Vec<EdgeId>,
    pub touched_clusters: Vec<bool>,
    /// Attraction counts per black label, refreshed after each step when instrumented.
    pub attraction: Vec<usize>,
    pub op_log: Vec<OpRecord>,
    /// Parent cluster label of each black non-spine vertex in `T₁` (0 for spine vertices).
    pub t1_parent_cluster: Vec<usize>,
}

impl AlgorithmState {
    /// Fresh state on `T₁`: black spine vertices touched, everything else untouched.
    pub fn from_t1(t1: PlaneTree) -> AlgorithmState {
        let table = compute_cluster_table(&t1);
        let mut tree = t1;
        let n = table.n;
        let mut t1_parent_cluster = vec![0; n + 1];
        let orient = crate::plane_tree::Orientation::of(&tree);
        for label in 1..=n {
            let b = tree.black(label);
            tree.vertex_mut(b).touched = table.is_spine_black[label];
            if let Some(pe) = orient.parent_edge[b.0] {
                t1_parent_cluster[label] = tree.edge(pe).label;
            }
        }
        let center = table.center.clone();
        let root = table.root_edge.clone();
        let k = table.k;
        let attraction = instrument::attraction_counts(&tree);
        AlgorithmState {
            tree,
            table,
            center,
            root,
            touched_clusters: vec![false; k + 1],
            attraction,
            op_log: Vec::new(),
            t1_parent_cluster,
        }
    }

    fn cluster_edge_at(&self, c: usize, y: VertexId) -> Option<EdgeId> {
        self.tree.rotation(y).iter().copied().find(|&e| self.tree.edge(e).label == c)
    }

    /// Clusters with anchor `x` that contain `y`.
    fn clusters_for(&self, x: usize, y: usize) -> Vec<usize> {
        let yv = self.tree.black(y);
        let mut out: Vec<usize> = self
            .tree
            .rotation(yv)
            .iter()
            .map(|&e| self.tree.edge(e).label)
            .filter(|&c| self.table.alpha[c] == x)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn sole_cluster(&self, op: OpKind, x: usize, y: usize) -> Result<usize, ForwardError> {
        let cs = self.clusters_for(x, y);
        match cs.as_slice() {
            [c] => Ok(*c),
            _ => Err(ForwardError::Precondition { op, x, y, assumption: if op == OpKind::Bend { "B1" } else { "J1" } }),
        }
    }

    /// Bend `𝔹_{x,y}` in the unique cluster anchored at `x` that contains `y`.
    pub fn bend(&mut self, x: usize, y: usize) -> Result<(), ForwardError> {
        let c = self.sole_cluster(OpKind::Bend, x, y)?;
        self.bend_in(c, x, y)
    }

    /// Jump `𝕁_{x,y}` in the unique cluster anchored at `x` that contains `y`.
    pub fn jump(&mut self, x: usize, y: usize) -> Result<(), ForwardError> {
        let c = self.sole_cluster(OpKind::Jump, x, y)?;
        self.jump_in(c, x, y)
    }

    pub fn bend_in(&mut self, c: usize, x: usize, y: usize) -> Result<(), ForwardError> {
        let fail = |a| ForwardError::Precondition { op: OpKind::Bend, x, y, assumption: a };
        if x == y || self.table.alpha[c] != x {
            return Err(fail("B1"));
        }
        let yv = self.tree.black(y);
        let v1 = self.center[c];
        let e1 = self.cluster_edge_at(c, yv).ok_or(fail("B1"))?;
        if self.tree.edge(e1).white != v1 {
            return Err(fail("B1"));
        }
        if self.tree.edge(self.root[c]).black == yv {
            return Err(fail("B2"));
        }
        if self.tree.degree(yv) < 2 {
            return Err(fail("B3"));
        }
        let t = &mut self.tree;
        let e2 = t.ccw_prev(yv, e1);
        let v2 = t.edge(e2).white;
        let l2 = t.edge(e2).label;
        let moved = t.ccw_after(v2, e2);
        t.remove_edge(e2);
        t.edge_mut(e1).label = l2;
        if self.root[l2] == e2 {
            self.root[l2] = e1;
        }
        let p = t.position(v1, e1);
        for (i, &e) in moved.iter().enumerate() {
            t.set_white_end(e, v1);
            t.vertex_mut(v1).rotation.insert(p + 1 + i, e);
        }
        self.center[l2] = v1;
        for &e in &moved {
            let l = t.edge(e).label;
            if self.center[l] == v2 {
                self.center[l] = v1;
            }
        }
        t.vertex_mut(v2).rotation.clear();
        t.retire_vertex(v2);
        self.touched_clusters[c] = true;
        t.vertex_mut(yv).touched = true;
        let xv = t.black(x);
        if let Some(ex) = t.edge_between(v1, xv) {
            t.edge_mut(ex).state = EdgeState::Dashed;
        }
        t.edge_mut(e1).state = EdgeState::Dashed;
        self.op_log.push(OpRecord { kind: OpKind::Bend, x, y, j: None, cluster: c });
        Ok(())
    }

    pub fn jump_in(&mut self, c: usize, x: usize, y: usize) -> Result<(), ForwardError> {
        let fail = |a| ForwardError::Precondition { op: OpKind::Jump, x, y, assumption: a };
        if x >= y || self.table.alpha[c] != x {
            return Err(fail("J1"));
        }
        let yv = self.tree.black(y);
        let v1 = self.center[c];
        let e1 = self.cluster_edge_at(c, yv).ok_or(fail("J1"))?;
        if self.tree.edge(e1).white != v1 {
            return Err(fail("J1"));
        }
        let ej = self.tree.ccw_prev(v1, e1);
        let jv = self.tree.edge(ej).black;
        if ej == e1 || self.tree.edge(self.root[c]).black != jv {
            return Err(fail("J2"));
        }
        if self.tree.degree(yv) < 3 {
            return Err(fail("J3"));
        }
        let xv = self.tree.black(x);
        if !self.tree.vertex(xv).touched {
            return Err(fail("J4"));
        }
        let j = self.tree.black_label(jv);
        let t = &mut self.tree;
        let e2 = t.ccw_prev(yv, e1);
        let e3 = t.ccw_prev(yv, e2);
        let (v2, v3) = (t.edge(e2).white, t.edge(e3).white);
        let (l2, l3) = (t.edge(e2).label, t.edge(e3).label);
        let red = t.cw_after(v3, e3);
        let blue = t.cw_after(v2, e2);
        let rest_y: Vec<EdgeId> = t.ccw_after(yv, e1).into_iter().filter(|&e| e != e2 && e != e3).collect();

        let w = t.add_vertex(Color::White, None);
        t.vertex_mut(w).origin = Origin::Artificial;
        let g2 = t.add_edge(l2, jv, w);
        let g3 = t.add_edge(l3, yv, w);
        let pj = t.position(jv, ej);
        t.vertex_mut(jv).rotation.insert(pj, g2);
        let mut ry = vec![g3];
        ry.extend(rest_y);
        t.vertex_mut(yv).rotation = ry;
        let mut cw = vec![g2];
        cw.extend(red.iter().copied());
        cw.push(g3);
        cw.extend(blue.iter().copied());
        cw.reverse();
        t.vertex_mut(w).rotation = cw;
        for &e in red.iter().chain(blue.iter()) {
            t.set_white_end(e, w);
        }
        for e in [e1, e2, e3] {
            t.remove_edge(e);
        }
        t.vertex_mut(v2).rotation.clear();
        t.vertex_mut(v3).rotation.clear();
        t.retire_vertex(v2);
        t.retire_vertex(v3);
        if self.root[l2] == e2 {
            self.root[l2] = g2;
        }
        if self.root[l3] == e3 {
            self.root[l3] = g3;
        }
        for &l in [l2, l3].iter() {
            self.center[l] = w;
        }
        for &e in red.iter().chain(blue.iter()) {
            let l = t.edge(e).label;
            if self.center[l] == v2 || self.center[l] == v3 {
                self.center[l] = w;
            }
        }
        self.touched_clusters[c] = true;
        t.vertex_mut(yv).touched = true;
        t.edge_mut(g2).state = EdgeState::Dashed;
        t.edge_mut(g3).state = EdgeState::Dashed;
        self.op_log.push(OpRecord { kind: OpKind::Jump, x, y, j: Some(j), cluster: c });
        Ok(())
    }

    /// Spine-cluster visiting order.
    pub fn spine_sequence(&self, order: ClusterOrder) -> Vec<usize> {
        let mut v = self.table.spine_clusters.clone();
        match order {
            ClusterOrder::Standard => {}
            ClusterOrder::Reversed => v.reverse(),
            ClusterOrder::Shuffled(seed) => v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        }
        v
    }

    /// Rib-cluster visiting order; always a linear extension of the
    /// "lies on the path from the spine" partial order.
    pub fn rib_sequence(&self, order: ClusterOrder) -> Vec<usize> {
        let mut v = self.table.sigma.clone();
        match order {
            ClusterOrder::Standard => {}
            ClusterOrder::Reversed => {
                v = linear_extension(&self.table.sigma, &self.table.rib_parent, |r| *r.iter().max().expect("nonempty"))
            }
            ClusterOrder::Shuffled(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                v = linear_extension(&self.table.sigma, &self.table.rib_parent, |r| r[rng.gen_range(0..r.len())])
            }
        }
        v
    }
}

/// Per-step observer, called after every rewrite.
pub trait StepObserver {
    fn step(&mut self, state: &AlgorithmState, op: &OpRecord);
}

impl<F: FnMut(&AlgorithmState, &OpRecord)> StepObserver for F {
    fn step(&mut self, state: &AlgorithmState, op: &OpRecord) {
        self(state, op)
    }
}

struct NoObserver;

impl StepObserver for NoObserver {
    fn step(&mut self, _: &AlgorithmState, _: &OpRecord) {}
}

/// Builds `T₁` and the initial state.
pub fn init(f: &MinimalFactorization) -> Result<AlgorithmState, ForwardError> {
    f.check().map_err(ForwardError::Invalid)?;
    if f.n() < 2 {
        return Err(ForwardError::TooFewFactors);
    }
    Ok(AlgorithmState::from_t1(relabel_to_t1(&build_t0(f))))
}

/// Runs both treatments and returns the final state.
pub fn run_with(
    f: &MinimalFactorization,
    opts: RunOptions,
    observer: &mut dyn StepObserver,
) -> Result<AlgorithmState, ForwardError> {
    let mut s = init(f)?;
    let mut checker = if opts.instrument { Some(instrument::Checker::new(&s)) } else { None };
    if let Some(ch) = checker.as_mut() {
        ch.before_run(&s)?;
    }
    let spine = s.spine_sequence(opts.spine_order);
    for &c in &spine {
        let alpha = s.table.alpha[c];
        let y1 = s.table.y1[c].expect("spine cluster");
        let ys: Vec<usize> = s.table.b_set(c).iter().copied().filter(|&y| y != alpha).collect();
        for y in ys {
            if let Some(ch) = checker.as_mut() {
                ch.before_step(&s);
            }
            if y == y1 || y < alpha {
                s.bend_in(c, alpha, y)?;
            } else {
                s.jump_in(c, alpha, y)?;
            }
            let op = *s.op_log.last().expect("logged");
            if let Some(ch) = checker.as_mut() {
                ch.after_step(&mut s, &op, true)?;
            }
            observer.step(&s, &op);
        }
    }
    let ribs = s.rib_sequence(opts.rib_order);
    for &c in &ribs {
        let alpha = s.table.alpha[c];
        let ys: Vec<usize> = s.table.b_set(c).iter().copied().filter(|&y| y != alpha).collect();
        for y in ys {
            if let Some(ch) = checker.as_mut() {
                ch.before_step(&s);
            }
            if y < alpha {
                s.bend_in(c, alpha, y)?;
            } else {
                s.jump_in(c, alpha, y)?;
            }
            let op = *s.op_log.last().expect("logged");
            if let Some(ch) = checker.as_mut() {
                ch.after_step(&mut s, &op, false)?;
            }
            observer.step(&s, &op);
        }
    }
    if let Some(ch) = checker.as_mut() {
        ch.after_run(&s)?;
    }
    Ok(s)
}

/// Runs the map and returns the final state (for callers that need `T₂` itself).
pub fn run_state(f: &MinimalFactorization, opts: RunOptions) -> Result<AlgorithmState, ForwardError> {
    run_with(f, opts, &mut NoObserver)
}

/// The map itself.
pub fn run_a(f: &MinimalFactorization, instrument: bool) -> Result<StanleyTree, ForwardError> {
    let s = run_state(f, RunOptions { instrument, ..Default::default() })?;
    to_stanley(&s)
}

pub fn to_stanley(s: &AlgorithmState) -> Result<StanleyTree, ForwardError> {
    StanleyTree::from_plane_tree(&s.tree).map_err(|e| ForwardError::Instrumentation(e.to_string()))
}
