use stanley_bij::factorization::MinimalFactorization;
use stanley_bij::forward::{self, RunOptions};
use stanley_bij::plane_tree::{build_t0, compute_cluster_table, relabel_to_t1};

const GOLDEN: &str = "k=27; (2,3)(13,15,14)(6,9,10)(1,6,26)(11,15,12)(6,8,7)(1,16,15)(21,27,24)(22,23,25)(16,19,18)(2,20,1)(20,22,21)(1,5,4)(16,17)";

fn golden() -> MinimalFactorization {
    GOLDEN.parse().unwrap()
}

#[test]
fn golden_is_minimal() {
    let f = golden();
    assert!(f.validate());
    assert!(f.product().unwrap().is_long_cycle());
}

#[test]
fn t0_white_rotations() {
    let f = golden();
    let t0 = build_t0(&f);
    let n = f.n();
    let ccw = |c: usize| -> Vec<usize> {
        let w = stanley_bij::plane_tree::VertexId(n + c - 1);
        t0.rotation(w).iter().map(|&e| t0.black_label(t0.edge(e).black)).collect()
    };
    assert_eq!(ccw(6), vec![3, 4, 6]);
    assert_eq!(ccw(1), vec![7, 13, 4, 11]);
    let spine: Vec<usize> = t0
        .spine_path()
        .iter()
        .filter_map(|&v| if t0.vertex(v).color == stanley_bij::plane_tree::Color::Black { t0.vertex(v).label } else { None })
        .collect();
    assert_eq!(spine, vec![1, 11, 7, 14]);
}

#[test]
fn cluster_metadata() {
    let t1 = relabel_to_t1(&build_t0(&golden()));
    let tab = compute_cluster_table(&t1);
    assert_eq!(tab.spine_black_set(), vec![1, 7, 11, 14]);
    assert_eq!(tab.spine_clusters, vec![1, 2, 16]);
    let b = |c: usize| tab.b_set(c).to_vec();
    assert_eq!(b(1), vec![4, 7, 11, 13]);
    assert_eq!(b(2), vec![1, 11]);
    assert_eq!(b(6), vec![3, 4, 6]);
    assert_eq!(b(15), vec![2, 5, 7]);
    assert_eq!(b(16), vec![7, 10, 14]);
    assert_eq!(b(20), vec![11, 12]);
    assert_eq!(b(21), vec![8, 12]);
    assert_eq!(b(22), vec![9, 12]);
    let alpha: Vec<(usize, usize)> = [1, 2, 6, 15, 16, 20, 21, 22].iter().map(|&c| (c, tab.alpha[c])).collect();
    assert_eq!(alpha, vec![(1, 7), (2, 1), (6, 4), (15, 7), (16, 7), (20, 11), (21, 12), (22, 12)]);
    assert_eq!(tab.sigma, vec![6, 15, 20, 21, 22]);
    assert!(tab.is_leaf(10));
}

#[test]
fn operation_log() {
    let s = forward::run_state(&golden(), RunOptions::instrumented()).unwrap();
    let log: Vec<String> = s.op_log.iter().map(|o| format!("{}{},{}", o.kind, o.x, o.y)).collect();
    assert_eq!(
        log,
        ["B7,4", "B7,11", "J7,13", "B1,11", "J7,10", "B7,14", "B4,3", "J4,6", "B7,2", "B7,5", "J11,12", "B12,8", "B12,9"]
    );
    let st = forward::to_stanley(&s).unwrap();
    assert_eq!(st.type_of().b, vec![1; 14]);
}
