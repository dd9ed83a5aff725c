mod common;

use common::each_admissible;

use stanley_bij::factorization::{enumerate, FactorizationType, MinimalFactorization};
use stanley_bij::forward::{self, invariant1_violation, ClusterOrder, ForwardError, InvariantViolation, OpKind, RunOptions};
use stanley_bij::plane_tree::{build_t0, leftist_vertices, relabel_to_t1, Orientation, Origin};

const GOLDEN: &str = "k=27; (2,3)(13,15,14)(6,9,10)(1,6,26)(11,15,12)(6,8,7)(1,16,15)(21,27,24)(22,23,25)(16,19,18)(2,20,1)(20,22,21)(1,5,4)(16,17)";

fn golden() -> MinimalFactorization {
    GOLDEN.parse().unwrap()
}

#[test]
fn toy_bend_drops_one_white_and_one_edge() {
    let f: MinimalFactorization = "k=3; (1,2)(1,3)".parse().unwrap();
    let mut s = forward::init(&f).unwrap();
    assert_eq!((s.tree.edge_count(), s.tree.white_count()), (4, 3));
    let c = s.table.spine_clusters[0];
    let alpha = s.table.alpha[c];
    let y = s.table.y1[c].unwrap();
    assert_eq!(s.tree.degree(s.tree.black(y)), 2);
    s.bend_in(c, alpha, y).unwrap();
    assert_eq!((s.tree.edge_count(), s.tree.white_count()), (3, 2));
    assert!(s.tree.check().is_ok());
}

#[test]
fn golden_run_ends_on_the_right_type() {
    let s = forward::run_state(&golden(), RunOptions::instrumented()).unwrap();
    assert_eq!(s.op_log.len(), 13);
    assert_eq!(s.tree.edge_count(), 27);
    assert_eq!(s.tree.white_count(), 14);
    assert_eq!(&s.attraction[1..], &[1; 14][..]);
    let artificial = s.tree.whites().filter(|&w| s.tree.vertex(w).origin == Origin::Artificial).count();
    let jumps = s.op_log.iter().filter(|o| o.kind == OpKind::Jump).count();
    assert_eq!(artificial, jumps);
}

#[test]
fn bend_preconditions() {
    let mut s = forward::init(&golden()).unwrap();
    let err = s.bend(7, 7).unwrap_err();
    assert!(matches!(err, ForwardError::Precondition { op: OpKind::Bend, assumption: "B1", .. }));
    // 9 shares no cluster anchored at 7
    let err = s.bend(7, 9).unwrap_err();
    assert!(matches!(err, ForwardError::Precondition { assumption: "B1", .. }));
}

#[test]
fn jump_preconditions() {
    let mut s = forward::init(&golden()).unwrap();
    let err = s.jump_in(1, 7, 4).unwrap_err();
    assert!(matches!(err, ForwardError::Precondition { op: OpKind::Jump, assumption: "J1", .. }));
    // before any bend in cluster 6 its anchor 4 is untouched
    let err = s.jump_in(6, 4, 6).unwrap_err();
    assert!(matches!(err, ForwardError::Precondition { op: OpKind::Jump, .. }), "{err}");
}

#[test]
fn corrupted_state_is_caught() {
    let s = forward::init(&golden()).unwrap();
    assert_eq!(invariant1_violation(&s), None);

    let mut bad = s.clone();
    bad.center[6] = bad.center[15];
    assert_eq!(invariant1_violation(&bad), Some(InvariantViolation::CommonCenter(6)));

    let mut bad = s.clone();
    bad.root[6] = bad.root[15];
    assert_eq!(invariant1_violation(&bad), Some(InvariantViolation::RootInCluster(6)));

    let mut bad = s.clone();
    let v = bad.tree.black(3);
    let e = bad.tree.edge_between(bad.center[6], v).unwrap();
    bad.root[6] = e;
    assert_eq!(invariant1_violation(&bad), Some(InvariantViolation::RootTouched(6)));
}

#[test]
fn instrumented_runs_up_to_five() {
    for k in 3..=5 {
        each_admissible(k, |f| {
            let s = forward::run_state(f, RunOptions::instrumented()).unwrap_or_else(|e| panic!("{f}: {e}"));
            assert_eq!(s.op_log.len(), f.n() - 1);
            assert!(s.op_log.iter().all(|o| o.j.is_none_or(|j| j < o.y)));
        });
    }
}

#[test]
fn cluster_order_does_not_matter_up_to_five() {
    let orders = [ClusterOrder::Standard, ClusterOrder::Reversed, ClusterOrder::Shuffled(7)];
    for k in 3..=5 {
        each_admissible(k, |f| {
            let base = forward::run_a(f, false).unwrap();
            for spine_order in orders {
                for rib_order in orders {
                    let s = forward::run_state(f, RunOptions { instrument: false, spine_order, rib_order }).unwrap();
                    assert_eq!(forward::to_stanley(&s).unwrap(), base, "{f}");
                }
            }
        });
    }
}

#[test]
fn jump_with_j_equal_to_x() {
    let mut found = false;
    for k in 4..=6 {
        each_admissible(k, |f| {
            if found {
                return;
            }
            let mut hit = false;
            let mut obs = |s: &forward::AlgorithmState, op: &forward::OpRecord| {
                if op.kind == OpKind::Jump && op.j == Some(op.x) {
                    let t = &s.tree;
                    let (x, y) = (t.black(op.x), t.black(op.y));
                    let w = t
                        .whites()
                        .find(|&w| t.vertex(w).origin == Origin::Artificial && t.edge_between(w, x).is_some() && t.edge_between(w, y).is_some());
                    assert!(w.is_some(), "{f}: no artificial white between {} and {}", op.x, op.y);
                    hit = true;
                }
            };
            forward::run_with(f, RunOptions::instrumented(), &mut obs).unwrap();
            found |= hit;
        });
    }
    assert!(found);
}

#[test]
fn star_has_no_more_than_two_leftist_whites() {
    for k in 2..=6 {
        for f in enumerate(&FactorizationType::new(vec![k]).unwrap()).unwrap() {
            let t1 = relabel_to_t1(&build_t0(&f));
            assert!(leftist_vertices(&t1).len() <= 2);
        }
    }
}

#[test]
fn paths_make_every_hanging_white_leftist() {
    let mut seen = 0;
    for k in 3..=6 {
        let t = FactorizationType::new(vec![2; k - 1]).unwrap();
        for f in enumerate(&t).unwrap() {
            let t1 = forward::init(&f).unwrap().tree;
            if t1.vertex_ids().any(|v| t1.degree(v) > 2) {
                continue;
            }
            seen += 1;
            let o = Orientation::of(&t1);
            let hanging: Vec<_> = t1.whites().filter(|&w| !o.on_spine[w.0]).collect();
            assert_eq!(leftist_vertices(&t1), hanging, "{f}");
        }
    }
    assert!(seen > 0);
}
