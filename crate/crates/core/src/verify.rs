//! The verification suites behind `verify` and the acceptance target.
//!
//! Each suite returns a [`CheckResult`]; a failing suite carries its first
//! counterexample in `detail`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::{
    eval_known_polynomial, expected_coeff, extract_psquarefree_coeff, normalized_character_multi, scaled_magnitude, MultiRectangular,
    KnownPolynomial,
};
use crate::factorization::{self, for_each, random_admissible_type, FactorizationType, MinimalFactorization};
use crate::forward::{self, ClusterOrder, OpKind, RunOptions};
use crate::inverse::{predict_direct_neighborhoods, run_a_inverse};
use crate::plane_tree::{build_t0, compute_cluster_table, relabel_to_t1};
use crate::stanley::{self, StanleyType};

/// The worked example: 14 factors of a 27-cycle.
pub const GOLDEN: &str = "k=27; (2,3)(13,15,14)(6,9,10)(1,6,26)(11,15,12)(6,8,7)(1,16,15)(21,27,24)(22,23,25)(16,19,18)(2,20,1)(20,22,21)(1,5,4)(16,17)";

/// Its operation log with the spine clusters visited in ascending order.
pub const GOLDEN_LOG: [&str; 13] =
    ["B7,4", "B7,11", "J7,13", "B1,11", "J7,10", "B7,14", "B4,3", "J4,6", "B7,2", "B7,5", "J11,12", "B12,8", "B12,9"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Size of the check on success, first counterexample on failure.
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, outcome: Result<String, String>) -> CheckResult {
        match outcome {
            Ok(detail) => CheckResult { name: name.to_string(), passed: true, detail },
            Err(detail) => CheckResult { name: name.to_string(), passed: false, detail },
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Tree keys of every Stanley tree with `k` edges and `n` blacks, grouped by type.
fn trees_by_type(k: usize, n: usize) -> HashMap<StanleyType, HashSet<u128>> {
    let mut out: HashMap<StanleyType, HashSet<u128>> = HashMap::new();
    stanley::for_each_with_n(k, n, |t, ty| {
        out.entry(ty.clone()).or_default().insert(t.key());
    });
    out
}

/// Injectivity, left inverse, and image equality for every admissible type with `k ≤ kmax`.
pub fn bijection(kmax: usize) -> CheckResult {
    CheckResult::new("bijection", bijection_inner(kmax))
}

fn bijection_inner(kmax: usize) -> Result<String, String> {
    if kmax > 12 {
        return Err("tree keys need k <= 12".into());
    }
    let mut total = 0usize;
    let mut types = 0usize;
    for k in 3..=kmax {
        let mut cache: HashMap<usize, HashMap<StanleyType, HashSet<u128>>> = HashMap::new();
        for t in FactorizationType::admissible_with_k(k) {
            let b = StanleyType::from_factor_lengths(t.parts()).expect("n >= 2");
            let mut image = HashSet::new();
            let mut count = 0usize;
            let mut failure = None;
            for_each(&t, |fs| {
                if failure.is_some() {
                    return;
                }
                let f = MinimalFactorization::from_parts(k, fs.to_vec());
                count += 1;
                match forward::run_a(&f, false) {
                    Err(e) => failure = Some(format!("{f}: forward failed: {e}")),
                    Ok(st) => {
                        if !image.insert(st.key()) {
                            failure = Some(format!("{f}: image {st} already hit"));
                        } else {
                            match run_a_inverse(&st) {
                                Ok(g) if g == f => {}
                                Ok(g) => failure = Some(format!("{f}: inverse gave {g}")),
                                Err(e) => failure = Some(format!("{f}: inverse failed: {e}")),
                            }
                        }
                    }
                }
            });
            if let Some(m) = failure {
                return Err(m);
            }
            let trees = cache.entry(t.n()).or_insert_with(|| trees_by_type(k, t.n()));
            let all = trees.get(&b).cloned().unwrap_or_default();
            if all != image {
                return Err(format!("type {t}: image has {} trees, class {:?} has {}", image.len(), b.b, all.len()));
            }
            total += count;
            types += 1;
        }
    }
    Ok(format!("{types} types, {total} factorizations, k <= {kmax}"))
}

/// Class sizes against `(k−1)!·k^(n−1)` on both sides.
pub fn counts(kmax: usize) -> CheckResult {
    CheckResult::new("counts", counts_inner(kmax))
}

/// One class and its size next to `(k−1)!·k^(n−1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    /// `"factorizations"` or `"trees"`.
    pub kind: &'static str,
    pub class: String,
    pub count: u64,
    pub formula: BigUint,
}

/// Every factorization type, and every tree type with all parts positive, for `k ≤ kmax`.
pub fn count_table(kmax: usize) -> Vec<CountRow> {
    let mut rows = Vec::new();
    for k in 2..=kmax {
        for t in FactorizationType::all_with_k(k, 1) {
            let mut count = 0u64;
            for_each(&t, |_| count += 1);
            rows.push(CountRow { kind: "factorizations", class: t.to_string(), count, formula: factorization::count_formula(&t) });
        }
        for n in 1..=k + 1 {
            let types = StanleyType::all_with(k, n, 1);
            if types.is_empty() {
                continue;
            }
            let mut sizes: HashMap<StanleyType, u64> = HashMap::new();
            stanley::for_each_with_n(k, n, |_, ty| *sizes.entry(ty.clone()).or_default() += 1);
            for bt in types {
                let count = sizes.get(&bt).copied().unwrap_or(0);
                rows.push(CountRow { kind: "trees", class: bt.to_string(), count, formula: bt.count_formula() });
            }
        }
    }
    rows
}

fn counts_inner(kmax: usize) -> Result<String, String> {
    let rows = count_table(kmax);
    if let Some(r) = rows.iter().find(|r| BigUint::from(r.count) != r.formula) {
        return Err(format!("{} of type {}: {}, expected {}", r.kind, r.class, r.count, r.formula));
    }
    Ok(format!("{} classes, k <= {kmax}", rows.len()))
}

/// Cluster data, operation log, final type, and inverse of the worked example.
pub fn golden() -> CheckResult {
    CheckResult::new("golden", golden_inner())
}

fn golden_inner() -> Result<String, String> {
    let f: MinimalFactorization = GOLDEN.parse().map_err(|e| format!("{e}"))?;
    let tab = compute_cluster_table(&relabel_to_t1(&build_t0(&f)));
    let expect = |what: &str, got: Vec<usize>, want: &[usize]| -> Result<(), String> {
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: {got:?}, expected {want:?}"))
        }
    };
    expect("spine blacks", tab.spine_black_set(), &[1, 7, 11, 14])?;
    expect("spine clusters", tab.spine_clusters.clone(), &[1, 2, 16])?;
    let b_sets: [(usize, &[usize]); 8] = [
        (1, &[4, 7, 11, 13]),
        (2, &[1, 11]),
        (6, &[3, 4, 6]),
        (15, &[2, 5, 7]),
        (16, &[7, 10, 14]),
        (20, &[11, 12]),
        (21, &[8, 12]),
        (22, &[9, 12]),
    ];
    for (c, want) in b_sets {
        expect(&format!("B_{c}"), tab.b_set(c).to_vec(), want)?;
    }
    for (c, a) in [(1, 7), (2, 1), (6, 4), (15, 7), (16, 7), (20, 11), (21, 12), (22, 12)] {
        expect(&format!("alpha_{c}"), vec![tab.alpha[c]], &[a])?;
    }
    let s = forward::run_state(&f, RunOptions::instrumented()).map_err(|e| e.to_string())?;
    let log: Vec<String> = s.op_log.iter().map(|o| format!("{}{},{}", o.kind, o.x, o.y)).collect();
    if log != GOLDEN_LOG {
        return Err(format!("operation log {log:?}"));
    }
    let st = forward::to_stanley(&s).map_err(|e| e.to_string())?;
    expect("type", st.type_of().b, &[1; 14])?;
    let back = run_a_inverse(&st).map_err(|e| e.to_string())?;
    if back != f {
        return Err(format!("inverse gave {back}"));
    }
    Ok("metadata, 13 steps, type (1^14), inverse".into())
}

/// Instrumented runs on every admissible factorization with `k ≤ kmax`.
pub fn instrumentation(kmax: usize) -> CheckResult {
    CheckResult::new("instrumentation", instrumentation_inner(kmax))
}

fn instrumentation_inner(kmax: usize) -> Result<String, String> {
    let mut total = 0usize;
    for k in 3..=kmax {
        for t in FactorizationType::admissible_with_k(k) {
            let b = StanleyType::from_factor_lengths(t.parts()).expect("n >= 2");
            let mut failure = None;
            for_each(&t, |fs| {
                if failure.is_some() {
                    return;
                }
                let f = MinimalFactorization::from_parts(k, fs.to_vec());
                total += 1;
                // the instrumented run checks the cluster invariant after every step
                let s = match forward::run_state(&f, RunOptions::instrumented()) {
                    Ok(s) => s,
                    Err(e) => {
                        failure = Some(format!("{f}: {e}"));
                        return;
                    }
                };
                if s.op_log.len() != f.n() - 1 {
                    failure = Some(format!("{f}: {} operations", s.op_log.len()));
                } else if let Some(o) = s.op_log.iter().find(|o| o.kind == OpKind::Jump && o.j.is_none_or(|j| j >= o.y)) {
                    failure = Some(format!("{f}: jump {o} with j not below y"));
                } else if s.attraction[1..] != b.b[..] {
                    failure = Some(format!("{f}: attraction {:?}", &s.attraction[1..]));
                }
            });
            if let Some(m) = failure {
                return Err(m);
            }
        }
    }
    Ok(format!("{total} instrumented runs, k <= {kmax}"))
}

/// Output independent of the spine and rib cluster orders on random instances.
pub fn order_independence(samples: usize, kmax: usize, seed: u64) -> CheckResult {
    CheckResult::new("order independence", order_inner(samples, kmax, seed))
}

fn order_inner(samples: usize, kmax: usize, seed: u64) -> Result<String, String> {
    // below k = 8 no instance has both a free spine order and a free rib order,
    // so half the instances are drawn with each kind of freedom
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = [0usize; 2];
    let mut attempts = 0;
    while done[0] + done[1] < samples {
        attempts += 1;
        if attempts > 10_000 * samples {
            return Err(format!("only {done:?} instances with free spine/rib orders"));
        }
        let want_rib = done[0] >= samples / 2;
        let k = rng.gen_range(5..=kmax.max(7));
        let t = random_admissible_type(k, &mut rng);
        let f = factorization::sample_with(&t, &mut rng);
        let s0 = forward::init(&f).map_err(|e| format!("{f}: {e}"))?;
        let spines = [ClusterOrder::Standard, ClusterOrder::Reversed];
        let ribs = [ClusterOrder::Standard, ClusterOrder::Reversed];
        let free_spine = s0.spine_sequence(spines[0]) != s0.spine_sequence(spines[1]);
        let free_rib = s0.rib_sequence(ribs[0]) != s0.rib_sequence(ribs[1]);
        if (want_rib && !free_rib) || (!want_rib && !free_spine) {
            continue;
        }
        let base = forward::run_a(&f, false).map_err(|e| format!("{f}: {e}"))?;
        for spine_order in spines {
            for rib_order in ribs {
                let s = forward::run_state(&f, RunOptions { instrument: false, spine_order, rib_order }).map_err(|e| format!("{f}: {e}"))?;
                let st = forward::to_stanley(&s).map_err(|e| e.to_string())?;
                if st != base {
                    return Err(format!("{f}: orders {spine_order:?}/{rib_order:?} give {st}, standard gives {base}"));
                }
            }
        }
        done[usize::from(want_rib)] += 1;
    }
    Ok(format!("{} with a free spine order, {} with a free rib order, 4 order pairs each", done[0], done[1]))
}

/// The direct neighborhood description against the algorithm, for every admissible `k ≤ kmax`.
pub fn predictor(kmax: usize) -> CheckResult {
    CheckResult::new("direct description", predictor_inner(kmax))
}

fn predictor_inner(kmax: usize) -> Result<String, String> {
    let mut total = 0usize;
    for k in 3..=kmax {
        for t in FactorizationType::admissible_with_k(k) {
            let mut failure = None;
            for_each(&t, |fs| {
                if failure.is_some() {
                    return;
                }
                let f = MinimalFactorization::from_parts(k, fs.to_vec());
                total += 1;
                let got = forward::init(&f)
                    .map_err(|e| e.to_string())
                    .and_then(|s| predict_direct_neighborhoods(&s.tree).to_stanley().map_err(|e| e.to_string()));
                let want = forward::run_a(&f, false).map_err(|e| e.to_string());
                match (got, want) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (Ok(a), Ok(b)) => failure = Some(format!("{f}: predicted {a}, algorithm gives {b}")),
                    (Err(e), _) | (_, Err(e)) => failure = Some(format!("{f}: {e}")),
                }
            });
            if let Some(m) = failure {
                return Err(m);
            }
        }
    }
    Ok(format!("{total} instances, k <= {kmax}"))
}

/// Characters against the known closed forms, and the p-square-free coefficients.
pub fn characters(kmax: usize) -> CheckResult {
    CheckResult::new("characters", characters_inner(kmax))
}

fn characters_inner(kmax: usize) -> Result<String, String> {
    let mut points = 0;
    for which in [KnownPolynomial::Ch1, KnownPolynomial::Ch2, KnownPolynomial::Ch3, KnownPolynomial::Ch4] {
        let k = which.ch_index().expect("character");
        for p1 in 0..=2usize {
            for p2 in 0..=2usize {
                for q1 in 0..=3usize {
                    for q2 in 0..=q1 {
                        let pq = MultiRectangular { p: vec![p1, p2], q: vec![q1, q2] };
                        let got = normalized_character_multi(k, &pq);
                        let want = eval_known_polynomial(which, [p1 as i64, p2 as i64], [q1 as i64, q2 as i64]);
                        if got != BigRational::from_integer(want.clone()) {
                            return Err(format!("Ch_{k} at p=({p1},{p2}) q=({q1},{q2}): {got}, expected {want}"));
                        }
                        points += 1;
                    }
                }
            }
        }
    }
    let rows = coefficient_table(kmax).map_err(|e| e.to_string())?;
    for r in &rows {
        if r.coefficient != BigRational::from_integer(r.expected.clone()) {
            return Err(format!("coefficient for b={:?}: {}, expected {}", r.b, r.coefficient, r.expected));
        }
        if scaled_magnitude(&r.coefficient, r.k) != Some(BigUint::from(r.trees)) {
            return Err(format!("b={:?}: |coefficient|*(k-1)! differs from {} trees", r.b, r.trees));
        }
    }
    Ok(format!("{points} points, {} coefficients", rows.len()))
}

/// A p-square-free coefficient next to `(−k)^{n−1}` and the number of trees of type `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRow {
    pub k: usize,
    pub b: Vec<usize>,
    pub coefficient: BigRational,
    pub expected: num_bigint::BigInt,
    pub trees: usize,
}

/// All `b` with at most three parts, each positive, and `k ≤ kmax`.
pub fn coefficient_table(kmax: usize) -> Result<Vec<CoefficientRow>, Box<dyn std::error::Error>> {
    let mut rows = Vec::new();
    for k in 1..=kmax {
        for n in 1..=3 {
            for bt in StanleyType::all_with(k, n, 1) {
                let coefficient = extract_psquarefree_coeff(k, &bt.b)?;
                let trees = stanley::enumerate(&bt)?.len();
                rows.push(CoefficientRow { k, b: bt.b, coefficient, expected: expected_coeff(k, n), trees });
            }
        }
    }
    Ok(rows)
}

/// Round trips on random admissible factorizations with `kmin ≤ k ≤ kmax`.
pub fn random_roundtrip(samples: usize, kmin: usize, kmax: usize, seed: u64) -> CheckResult {
    CheckResult::new("random round trip", random_inner(samples, kmin, kmax, seed))
}

fn random_inner(samples: usize, kmin: usize, kmax: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let k = rng.gen_range(kmin..=kmax);
        let t = random_admissible_type(k, &mut rng);
        let f = factorization::sample_with(&t, &mut rng);
        let st = forward::run_a(&f, false).map_err(|e| format!("{f}: {e}"))?;
        let b = StanleyType::from_factor_lengths(t.parts()).expect("n >= 2");
        if st.type_of() != b {
            return Err(format!("{f}: image has type {:?}, expected {:?}", st.type_of().b, b.b));
        }
        let g = run_a_inverse(&st).map_err(|e| format!("{f}: {e}"))?;
        if g != f {
            return Err(format!("{f}: inverse gave {g}"));
        }
    }
    Ok(format!("{samples} samples, {kmin} <= k <= {kmax}"))
}
