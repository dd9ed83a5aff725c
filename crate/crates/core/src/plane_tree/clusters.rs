//! The trees `T₀`, `T₁` built from a factorization and the static cluster data.

use super::{Color, EdgeId, PlaneTree, VertexId};
use crate::factorization::MinimalFactorization;

/// Spine membership and the toward-the-spine orientation of a tree.
#[derive(Clone, Debug)]
pub struct Orientation {
    /// Vertices of the path from black 1 to black n.
    pub spine: Vec<VertexId>,
    pub on_spine: Vec<bool>,
    /// For non-spine vertices, the edge pointing towards the spine.
    pub parent_edge: Vec<Option<EdgeId>>,
    /// Distance to the spine (0 on it).
    pub depth: Vec<usize>,
}

impl Orientation {
    pub fn of(t: &PlaneTree) -> Orientation {
        let spine = t.spine_path();
        let slots = t.vertex_slots();
        let mut on_spine = vec![false; slots];
        let mut parent_edge = vec![None; slots];
        let mut depth = vec![usize::MAX; slots];
        let mut stack = Vec::new();
        for &v in &spine {
            on_spine[v.0] = true;
            depth[v.0] = 0;
            stack.push(v);
        }
        while let Some(v) = stack.pop() {
            for &e in t.rotation(v) {
                let u = t.other_end(e, v);
                if depth[u.0] == usize::MAX {
                    depth[u.0] = depth[v.0] + 1;
                    parent_edge[u.0] = Some(e);
                    stack.push(u);
                }
            }
        }
        Orientation { spine, on_spine, parent_edge, depth }
    }

    pub fn parent(&self, t: &PlaneTree, v: VertexId) -> Option<VertexId> {
        self.parent_edge[v.0].map(|e| t.other_end(e, v))
    }

    /// Children of a non-spine vertex, counterclockwise starting after the parent edge.
    pub fn children_ccw(&self, t: &PlaneTree, v: VertexId) -> Vec<VertexId> {
        match self.parent_edge[v.0] {
            Some(pe) => t.ccw_after(v, pe).into_iter().map(|e| t.other_end(e, v)).collect(),
            None => Vec::new(),
        }
    }
}

/// Builds `T₀`: black `i` is joined to the whites listed in `σᵢ`, in that
/// counterclockwise order; white rotations follow the spine/non-spine rule.
///
/// Black `i` gets id `i−1` and white `c` gets id `n+c−1`. Edges carry the label of
/// their white end already.
pub fn build_t0(f: &MinimalFactorization) -> PlaneTree {
    let n = f.n();
    let k = f.k();
    let mut t = PlaneTree::new();
    for i in 1..=n {
        t.add_vertex(Color::Black, Some(i));
    }
    for c in 1..=k {
        t.add_vertex(Color::White, Some(c));
    }
    for (i, cyc) in f.factors().iter().enumerate() {
        let b = VertexId(i);
        for &c in cyc.entries() {
            let w = VertexId(n + c - 1);
            let e = t.add_edge(c, b, w);
            t.vertex_mut(b).rotation.push(e);
            t.vertex_mut(w).rotation.push(e);
        }
    }
    let spine = t.path(VertexId(0), VertexId(n - 1));
    let mut on_spine = vec![false; t.vertex_slots()];
    for v in &spine {
        on_spine[v.0] = true;
    }
    for c in 1..=k {
        let w = VertexId(n + c - 1);
        let mut rot = t.rotation(w).to_vec();
        let lab = |e: EdgeId, t: &PlaneTree| t.black_label(t.edge(e).black);
        rot.sort_by_key(|&e| lab(e, &t));
        if on_spine[w.0] {
            let spine_nb: Vec<EdgeId> = rot.iter().copied().filter(|&e| on_spine[t.edge(e).black.0]).collect();
            let (ea, ey) = (spine_nb[0], spine_nb[1]);
            let alpha = lab(ea, &t);
            // after α: larger labels ascending, then smaller ascending, then y₁
            let mut order = vec![ea];
            order.extend(rot.iter().copied().filter(|&e| e != ey && lab(e, &t) > alpha));
            order.extend(rot.iter().copied().filter(|&e| e != ey && lab(e, &t) < alpha));
            order.push(ey);
            rot = order;
        }
        t.vertex_mut(w).rotation = rot;
    }
    t
}

/// Moves white labels onto the incident edges and drops them from the whites.
pub fn relabel_to_t1(t0: &PlaneTree) -> PlaneTree {
    let mut t = t0.clone();
    let edges: Vec<EdgeId> = t.edge_ids().collect();
    for e in edges {
        let w = t.edge(e).white;
        if let Some(l) = t.vertex(w).label {
            t.edge_mut(e).label = l;
        }
    }
    let whites: Vec<VertexId> = t.whites().collect();
    for w in whites {
        t.vertex_mut(w).label = None;
    }
    t
}

/// Cluster data of `T₁` that stays fixed during the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterTable {
    pub n: usize,
    pub k: usize,
    /// `b_sets[c]`: black labels in cluster `c`, ascending. Index 0 unused.
    pub b_sets: Vec<Vec<usize>>,
    pub alpha: Vec<usize>,
    pub root_edge: Vec<EdgeId>,
    pub center: Vec<VertexId>,
    /// For spine clusters, the larger spine label `y₁`.
    pub y1: Vec<Option<usize>>,
    /// Black spine labels in spine order from 1 to n.
    pub spine_blacks: Vec<usize>,
    pub is_spine_black: Vec<bool>,
    /// Spine cluster labels, ascending.
    pub spine_clusters: Vec<usize>,
    /// Non-spine non-leaf clusters, parents before children, smallest label first.
    pub sigma: Vec<usize>,
    /// For each rib cluster, the rib cluster directly above it (if any).
    pub rib_parent: Vec<Option<usize>>,
    /// Distance of each cluster center from the spine.
    pub center_depth: Vec<usize>,
}

impl ClusterTable {
    pub fn b_set(&self, c: usize) -> &[usize] {
        &self.b_sets[c]
    }

    pub fn is_spine_cluster(&self, c: usize) -> bool {
        self.y1[c].is_some()
    }

    pub fn is_leaf(&self, c: usize) -> bool {
        self.b_sets[c].len() == 1
    }

    /// `ℬ` as an ascending list.
    pub fn spine_black_set(&self) -> Vec<usize> {
        let mut v = self.spine_blacks.clone();
        v.sort_unstable();
        v
    }
}

pub fn compute_cluster_table(t1: &PlaneTree) -> ClusterTable {
    let n = t1.black_count();
    let k = t1.edge_ids().map(|e| t1.edge(e).label).max().unwrap_or(0);
    let orient = Orientation::of(t1);
    let mut b_sets = vec![Vec::new(); k + 1];
    let mut alpha = vec![0; k + 1];
    let mut root_edge = vec![EdgeId(usize::MAX); k + 1];
    let mut center = vec![VertexId(usize::MAX); k + 1];
    let mut y1 = vec![None; k + 1];
    let mut center_depth = vec![0; k + 1];
    for e in t1.edge_ids() {
        let ed = t1.edge(e);
        b_sets[ed.label].push(t1.black_label(ed.black));
        center[ed.label] = ed.white;
    }
    for c in 1..=k {
        b_sets[c].sort_unstable();
        let w = center[c];
        center_depth[c] = orient.depth[w.0];
        if orient.on_spine[w.0] {
            let mut sp: Vec<(usize, EdgeId)> = t1
                .rotation(w)
                .iter()
                .filter(|&&e| orient.on_spine[t1.edge(e).black.0])
                .map(|&e| (t1.black_label(t1.edge(e).black), e))
                .collect();
            sp.sort_unstable();
            alpha[c] = sp[0].0;
            root_edge[c] = sp[0].1;
            y1[c] = Some(sp[1].0);
        } else {
            let pe = orient.parent_edge[w.0].expect("non-spine vertex has a parent");
            root_edge[c] = pe;
            alpha[c] = t1.black_label(t1.edge(pe).black);
        }
    }
    let spine_blacks: Vec<usize> = orient
        .spine
        .iter()
        .filter(|&&v| t1.vertex(v).color == Color::Black)
        .map(|&v| t1.black_label(v))
        .collect();
    let mut is_spine_black = vec![false; n + 1];
    for &b in &spine_blacks {
        is_spine_black[b] = true;
    }
    let spine_clusters: Vec<usize> = (1..=k).filter(|&c| y1[c].is_some()).collect();
    let rib: Vec<usize> = (1..=k).filter(|&c| y1[c].is_none() && b_sets[c].len() >= 2).collect();
    let mut rib_parent = vec![None; k + 1];
    for &c in &rib {
        // the nearest rib cluster whose center lies on the way to the spine
        let p = orient.parent(t1, center[c]).expect("rib center has a parent");
        if let Some(pe) = orient.parent_edge[p.0] {
            rib_parent[c] = Some(t1.edge(pe).label);
        }
    }
    let sigma = linear_extension(&rib, &rib_parent, |ready| *ready.iter().min().expect("nonempty"));
    ClusterTable {
        n,
        k,
        b_sets,
        alpha,
        root_edge,
        center,
        y1,
        spine_blacks,
        is_spine_black,
        spine_clusters,
        sigma,
        rib_parent,
        center_depth,
    }
}

/// Topological order of `items` under `parent`, choosing among the ready items with `pick`.
pub fn linear_extension<F: FnMut(&[usize]) -> usize>(items: &[usize], parent: &[Option<usize>], mut pick: F) -> Vec<usize> {
    let mut placed = vec![false; parent.len()];
    let mut out = Vec::with_capacity(items.len());
    while out.len() < items.len() {
        let ready: Vec<usize> = items
            .iter()
            .copied()
            .filter(|&c| !placed[c] && parent[c].map_or(true, |p| placed[p] || !items.contains(&p)))
            .collect();
        let c = pick(&ready);
        placed[c] = true;
        out.push(c);
    }
    out
}

/// White non-spine vertices that are the leftmost child of their parent.
///
/// The leftmost child of a black vertex is the one met first when turning
/// clockwise from the edge towards the spine. A black spine vertex is looked at
/// from both spine edges, so it can have one leftmost child on each side.
pub fn leftist_vertices(t1: &PlaneTree) -> Vec<VertexId> {
    let orient = Orientation::of(t1);
    let mut out = Vec::new();
    for b in t1.blacks() {
        let refs: Vec<EdgeId> = if orient.on_spine[b.0] {
            t1.rotation(b).iter().copied().filter(|&e| orient.on_spine[t1.edge(e).white.0]).collect()
        } else {
            orient.parent_edge[b.0].into_iter().collect()
        };
        for r in refs {
            let e = t1.ccw_prev(b, r);
            let w = t1.edge(e).white;
            if e != r && !orient.on_spine[w.0] {
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_path_instance() {
        let f: MinimalFactorization = "k=3; (1,2)(1,3)".parse().unwrap();
        assert!(f.validate());
        let t0 = build_t0(&f);
        assert!(t0.check().is_ok());
        assert_eq!(t0.edge_count(), 4);
        assert_eq!(t0.spine_path().len(), 3);
        let t1 = relabel_to_t1(&t0);
        let table = compute_cluster_table(&t1);
        assert_eq!(table.spine_clusters, vec![1]);
        assert!(table.sigma.is_empty());
        assert_eq!(table.b_set(1), &[1, 2]);
        assert_eq!(table.alpha[1], 1);
        // black 2's whites 1 and 3; black 1's whites 1 and 2: both pendant whites are leftist
        assert_eq!(leftist_vertices(&t1).len(), 2);
    }
}
