mod common;

use std::collections::BTreeSet;

use common::each_admissible;

use stanley_bij::factorization::{enumerate, FactorizationType, MinimalFactorization};
use stanley_bij::forward::{self, run_a, RunOptions};
use stanley_bij::inverse::{
    greedy_subsequence, observed_neighborhoods, predict_direct_neighborhoods, run_a_inverse, run_a_inverse_explained, t1_backbone,
    Analysis, Direction, InverseError, RecoveryCase, WhiteOrigin,
};
use stanley_bij::plane_tree::{Origin, VertexId};
use stanley_bij::stanley::{self, StanleyType};
use stanley_bij::Cycle;

const GOLDEN: &str = "k=27; (2,3)(13,15,14)(6,9,10)(1,6,26)(11,15,12)(6,8,7)(1,16,15)(21,27,24)(22,23,25)(16,19,18)(2,20,1)(20,22,21)(1,5,4)(16,17)";

fn golden() -> MinimalFactorization {
    GOLDEN.parse().unwrap()
}

fn cyc(v: &[usize]) -> Cycle {
    Cycle::new(v.to_vec()).unwrap()
}

#[test]
fn golden_round_trip() {
    let f = golden();
    let t = run_a(&f, true).unwrap();
    assert_eq!(run_a_inverse(&t).unwrap(), f);
}

#[test]
fn golden_cases() {
    let t = run_a(&golden(), false).unwrap();
    let a = Analysis::new(&t).unwrap();
    let rec = |b: usize| {
        let (v, case) = a.recover_cycle(b).unwrap();
        (cyc(&v), case)
    };
    assert_eq!(rec(13), (cyc(&[1, 5, 4]), RecoveryCase::D));
    assert_eq!(rec(9), (cyc(&[22, 23, 25]), RecoveryCase::C));
    assert_eq!(rec(1), (cyc(&[2, 3]), RecoveryCase::III));
    assert_eq!(rec(11), (cyc(&[2, 20, 1]), RecoveryCase::II));
    let (_, cases) = run_a_inverse_explained(&t).unwrap();
    assert_eq!(cases.len(), 14);
}

#[test]
fn golden_backbone() {
    let f = golden();
    let t = run_a(&f, false).unwrap();
    let bb = Analysis::new(&t).unwrap().build_backbone().unwrap();
    assert_eq!(bb.vertices, vec![1, 11, 7, 14]);
    let t1 = forward::init(&f).unwrap().tree;
    assert_eq!(t1_backbone(&t1), bb);
    assert_eq!(bb.segments_from_flags(), bb.segments);
}

#[test]
fn two_vertex_backbone_is_one_hairy_edge() {
    for f in enumerate(&FactorizationType::new(vec![2, 2]).unwrap()).unwrap() {
        let t = run_a(&f, false).unwrap();
        let bb = Analysis::new(&t).unwrap().build_backbone().unwrap();
        assert_eq!(bb.edges.len(), 1);
        assert!(!bb.edges[0].bald);
        assert_eq!((bb.edges[0].from, bb.edges[0].to), (1, 2));
        assert_eq!(bb.segments.len(), 1);
        assert_eq!((bb.segments[0].a.len(), bb.segments[0].b.len()), (1, 1));
    }
}

#[test]
fn type_one_one_is_matched_bijectively() {
    let facts = enumerate(&FactorizationType::new(vec![2, 2]).unwrap()).unwrap();
    let trees = stanley::enumerate(&StanleyType::new(vec![1, 1])).unwrap();
    assert_eq!(facts.len(), 6);
    assert_eq!(trees.len(), 6);
    let images: BTreeSet<String> = facts.iter().map(|f| run_a(f, false).unwrap().to_string()).collect();
    let all: BTreeSet<String> = trees.iter().map(|t| t.to_string()).collect();
    assert_eq!(images, all);
    let back: BTreeSet<String> = trees.iter().map(|t| run_a_inverse(t).unwrap().to_string()).collect();
    let orig: BTreeSet<String> = facts.iter().map(|f| f.to_string()).collect();
    assert_eq!(back, orig);
}

#[test]
fn round_trip_up_to_six() {
    for k in 3..=6 {
        each_admissible(k, |f| {
            let st = run_a(f, false).unwrap();
            assert_eq!(run_a_inverse(&st).unwrap(), *f, "{f}");
        });
    }
}

#[test]
fn classification_matches_forward_origin() {
    for k in 3..=6 {
        each_admissible(k, |f| {
            let s = forward::run_state(f, RunOptions::default()).unwrap();
            let st = forward::to_stanley(&s).unwrap();
            let a = Analysis::new(&st).unwrap();
            for w in s.tree.whites() {
                let label = s.tree.edge(s.tree.rotation(w)[0]).label;
                let mine = a.tree.edge(stanley_bij::plane_tree::EdgeId(label - 1)).white;
                let expect = match s.tree.vertex(w).origin {
                    Origin::Organic => WhiteOrigin::Organic,
                    Origin::Artificial => WhiteOrigin::Artificial,
                };
                match a.classify_white(mine) {
                    Ok(c) => assert_eq!(c, expect, "{f}"),
                    Err(InverseError::OnSpine(_)) => assert!(a.orient.on_spine[mine.0]),
                    Err(e) => panic!("{e}"),
                }
            }
        });
    }
}

#[test]
fn leaf_white_is_organic() {
    let t = run_a(&golden(), false).unwrap();
    let a = Analysis::new(&t).unwrap();
    let leaf = a.tree.whites().find(|&w| a.tree.degree(w) == 1 && !a.orient.on_spine[w.0]).unwrap();
    assert_eq!(a.classify_white(leaf).unwrap(), WhiteOrigin::Organic);
    let spine_white = a.orient.spine[1];
    assert_eq!(a.classify_white(spine_white), Err(InverseError::OnSpine(spine_white)));
}

#[test]
fn bald_chains_decrease_along_arrows() {
    for k in 3..=6 {
        each_admissible(k, |f| {
            let st = run_a(f, false).unwrap();
            let bb = Analysis::new(&st).unwrap().build_backbone().unwrap();
            for seg in &bb.segments {
                assert!(seg.a.windows(2).all(|w| w[0] > w[1]), "{f}");
                assert!(seg.b.windows(2).all(|w| w[0] > w[1]), "{f}");
                assert!(seg.a[0] < seg.b[0]);
            }
            assert_eq!(bb.segments_from_flags(), bb.segments);
        });
    }
}

#[test]
fn inadmissible_types_are_rejected() {
    let t = stanley::enumerate(&StanleyType::new(vec![1, 0, 1])).unwrap();
    assert!(!t.is_empty());
    assert!(matches!(run_a_inverse(&t[0]), Err(InverseError::Type(_))));
    let t = stanley::enumerate(&StanleyType::new(vec![2])).unwrap();
    assert!(matches!(run_a_inverse(&t[0]), Err(InverseError::Type(_))));
}

#[test]
fn greedy_selection_is_increasing() {
    let l = [14, 2, 11, 18, 8, 4, 6, 7, 10, 12, 3, 5, 9, 20, 21, 13, 16, 30, 15, 17];
    let sel: Vec<usize> = greedy_subsequence(&l, Direction::Increasing).iter().map(|&i| l[i]).collect();
    assert!(sel.windows(2).all(|w| w[0] < w[1]));
    let sel: Vec<usize> = greedy_subsequence(&l, Direction::Decreasing).iter().map(|&i| l[i]).collect();
    assert_eq!(sel, vec![14, 2]);
}

#[test]
fn golden_prediction_matches_output() {
    let f = golden();
    let t1 = forward::init(&f).unwrap().tree;
    let s = forward::run_state(&f, RunOptions::default()).unwrap();
    let pred = predict_direct_neighborhoods(&t1);
    assert_eq!(pred, observed_neighborhoods(&s.tree));
    assert_eq!(pred.to_stanley().unwrap(), forward::to_stanley(&s).unwrap());
}

#[test]
fn prediction_matches_output_up_to_five() {
    for k in 3..=5 {
        each_admissible(k, |f| {
            let t1 = forward::init(f).unwrap().tree;
            let st = run_a(f, false).unwrap();
            assert_eq!(predict_direct_neighborhoods(&t1).to_stanley().unwrap(), st, "{f}");
        });
    }
}

/// After dropping the children that jump away, the children of every
/// non-spine white increase counterclockwise and stay below its parent.
#[test]
fn pruned_children_are_ordered() {
    for k in 3..=6 {
        each_admissible(k, |f| {
            let t1 = forward::init(f).unwrap().tree;
            let o = stanley_bij::plane_tree::Orientation::of(&t1);
            for w in t1.whites() {
                let Some(pe) = o.parent_edge[w.0] else { continue };
                let alpha = t1.black_label(t1.edge(pe).black);
                let kept: Vec<usize> =
                    t1.ccw_after(w, pe).iter().map(|&e| t1.black_label(t1.edge(e).black)).filter(|&b| b < alpha).collect();
                assert!(kept.windows(2).all(|p| p[0] < p[1]), "{f} at {}", VertexId(w.0));
            }
        });
    }
}
