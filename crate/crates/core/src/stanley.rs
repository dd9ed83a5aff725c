//! Stanley trees: plane trees with `k` labeled edges and `n` labeled black vertices,
//! encoded by the pair `(σ₁, σ₂)` of rotations around white and black vertices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::{parse_cycles, Cycle, PermError, Permutation};
use crate::plane_tree::{Color, PlaneTree, VertexId};

/// Default largest `k` accepted by [`enumerate`].
pub const DEFAULT_MAX_K: usize = 8;

/// Environment variable overriding the enumeration bounds.
pub const MAX_K_ENV: &str = "STANLEY_BIJ_MAX_K";

/// Enumeration bound: the environment override if set, else `default`.
pub fn max_k_from_env(default: usize) -> usize {
    std::env::var(MAX_K_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StanleyError {
    #[error("edge labels are not exactly 1..{0}")]
    EdgeLabels(usize),
    #[error("black labels are not a bijection onto the cycles of sigma2")]
    Labeling,
    #[error("permutation pair does not encode a plane tree")]
    NotATree,
    #[error("k={k} exceeds the enumeration bound {bound}")]
    BoundExceeded { k: usize, bound: usize },
    #[error("cannot parse Stanley tree: {0}")]
    Syntax(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The type `(b₁,…,bₙ)`; `k = Σbᵢ + n − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StanleyType {
    pub b: Vec<usize>,
}

impl StanleyType {
    pub fn new(b: Vec<usize>) -> Self {
        StanleyType { b }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn k(&self) -> usize {
        self.b.iter().sum::<usize>() + self.b.len() - 1
    }

    pub fn all_positive(&self) -> bool {
        self.b.iter().all(|&x| x >= 1)
    }

    /// The factor lengths matched with this type: `bᵢ+1` at both ends, `bᵢ+2` inside.
    pub fn matching_factor_lengths(&self) -> Vec<usize> {
        let n = self.n();
        (0..n).map(|i| if i == 0 || i == n - 1 { self.b[i] + 1 } else { self.b[i] + 2 }).collect()
    }

    /// Inverse of [`StanleyType::matching_factor_lengths`] (requires `n ≥ 2`).
    pub fn from_factor_lengths(a: &[usize]) -> Option<StanleyType> {
        let n = a.len();
        if n < 2 {
            return None;
        }
        let mut b = Vec::with_capacity(n);
        for (i, &x) in a.iter().enumerate() {
            let off = if i == 0 || i == n - 1 { 1 } else { 2 };
            b.push(x.checked_sub(off)?);
        }
        Some(StanleyType { b })
    }

    /// `(k−1)!·k^(n−1)`, the size of the class when every `bᵢ ≥ 1`.
    pub fn count_formula(&self) -> BigUint {
        let k = self.k();
        let mut r = BigUint::from(1u32);
        for i in 1..k {
            r *= BigUint::from(i);
        }
        for _ in 1..self.n() {
            r *= BigUint::from(k);
        }
        r
    }

    /// All types with `n` parts, every part at least `min_part`, and the given `k`.
    pub fn all_with(k: usize, n: usize, min_part: usize) -> Vec<StanleyType> {
        fn rec(i: usize, n: usize, left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<StanleyType>) {
            if i == n {
                if left == 0 {
                    out.push(StanleyType { b: cur.clone() });
                }
                return;
            }
            for x in min..=left {
                cur.push(x);
                rec(i + 1, n, left - x, min, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n >= 1 && k + 1 >= n {
            rec(0, n, k + 1 - n, min_part, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for StanleyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for StanleyType {
    type Err = StanleyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let b = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| StanleyError::Syntax(s.to_string()))?;
        if b.is_empty() {
            return Err(StanleyError::Syntax(s.to_string()));
        }
        Ok(StanleyType { b })
    }
}

/// A Stanley tree in canonical form.
///
/// `black_min[i-1]` is the smallest edge label around black vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StanleyTree {
    k: usize,
    sigma1: Permutation,
    sigma2: Permutation,
    black_min: Vec<usize>,
}

impl StanleyTree {
    /// Builds and validates.
    pub fn new(sigma1: Permutation, sigma2: Permutation, black_min: Vec<usize>) -> Result<Self, StanleyError> {
        let k = sigma1.degree();
        if sigma2.degree() != k {
            return Err(StanleyError::Perm(PermError::DegreeMismatch(k, sigma2.degree())));
        }
        let t = StanleyTree { k, sigma1, sigma2, black_min };
        t.check()?;
        Ok(t)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.black_min.len()
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &Permutation {
        &self.sigma2
    }

    pub fn black_min(&self) -> &[usize] {
        &self.black_min
    }

    /// For each edge label, the black label of its black end (index 0 unused).
    pub fn black_of_edge(&self) -> Vec<usize> {
        let mut out = vec![0; self.k + 1];
        for (i, &m) in self.black_min.iter().enumerate() {
            let mut x = m;
            loop {
                out[x] = i + 1;
                x = self.sigma2.apply(x);
                if x == m {
                    break;
                }
            }
        }
        out
    }

    fn check(&self) -> Result<(), StanleyError> {
        let k = self.k;
        let s2_cycles = self.sigma2.cycles();
        let mut mins: Vec<usize> = self.black_min.clone();
        mins.sort_unstable();
        let cycle_mins: Vec<usize> = s2_cycles.iter().map(|c| c.entries()[0]).collect();
        if mins != cycle_mins {
            return Err(StanleyError::Labeling);
        }
        if !is_plane_tree(&self.sigma1, &self.sigma2) {
            return Err(StanleyError::NotATree);
        }
        let _ = k;
        Ok(())
    }

    /// `bᵢ` counts white vertices whose largest black neighbor is `i`.
    pub fn type_of(&self) -> StanleyType {
        let owner = self.black_of_edge();
        let mut b = vec![0; self.n()];
        for c in self.sigma1.cycles() {
            let m = c.entries().iter().map(|&x| owner[x]).max().expect("nonempty cycle");
            b[m - 1] += 1;
        }
        StanleyType { b }
    }

    /// Reads `σ₁`, `σ₂` off counterclockwise rotations.
    pub fn from_plane_tree(p: &PlaneTree) -> Result<StanleyTree, StanleyError> {
        let k = p.edge_count();
        let mut seen = vec![false; k + 1];
        for e in p.edge_ids() {
            let l = p.edge(e).label;
            if l == 0 || l > k || seen[l] {
                return Err(StanleyError::EdgeLabels(k));
            }
            seen[l] = true;
        }
        let mut s1 = vec![0; k];
        let mut s2 = vec![0; k];
        let n = p.black_count();
        let mut black_min = vec![0; n];
        for v in p.vertex_ids() {
            let r = p.rotation(v);
            let target = if p.vertex(v).color == Color::White { &mut s1 } else { &mut s2 };
            for (i, &e) in r.iter().enumerate() {
                let next = r[(i + 1) % r.len()];
                target[p.edge(e).label - 1] = p.edge(next).label;
            }
            if p.vertex(v).color == Color::Black {
                let lab = p.vertex(v).label.ok_or(StanleyError::Labeling)?;
                if lab == 0 || lab > n {
                    return Err(StanleyError::Labeling);
                }
                black_min[lab - 1] = r.iter().map(|&e| p.edge(e).label).min().ok_or(StanleyError::NotATree)?;
            }
        }
        StanleyTree::new(Permutation::from_images(s1)?, Permutation::from_images(s2)?, black_min)
    }

    /// Plane tree with black `i` at id `i−1`, whites after them in order of their
    /// smallest edge label, and edge `x` at id `x−1`.
    pub fn to_plane_tree(&self) -> PlaneTree {
        let k = self.k;
        let n = self.n();
        let mut t = PlaneTree::new();
        for i in 1..=n {
            t.add_vertex(Color::Black, Some(i));
        }
        let owner = self.black_of_edge();
        let mut white_of = vec![0; k + 1];
        let w_cycles = self.sigma1.cycles();
        for (j, c) in w_cycles.iter().enumerate() {
            t.add_vertex(Color::White, None);
            for &x in c.entries() {
                white_of[x] = n + j;
            }
        }
        for x in 1..=k {
            t.add_edge(x, VertexId(owner[x] - 1), VertexId(white_of[x]));
        }
        for c in &w_cycles {
            let w = VertexId(white_of[c.entries()[0]]);
            t.vertex_mut(w).rotation = c.entries().iter().map(|&x| crate::plane_tree::EdgeId(x - 1)).collect();
        }
        for (i, &m) in self.black_min.iter().enumerate() {
            let mut rot = Vec::new();
            let mut x = m;
            loop {
                rot.push(crate::plane_tree::EdgeId(x - 1));
                x = self.sigma2.apply(x);
                if x == m {
                    break;
                }
            }
            t.vertex_mut(VertexId(i)).rotation = rot;
        }
        t
    }

    /// Compact injective key, usable for `k ≤ 12`.
    pub fn key(&self) -> u128 {
        let mut key: u128 = 0;
        for x in 1..=self.k {
            key = key * 16 + self.sigma1.apply(x) as u128;
        }
        for x in 1..=self.k {
            key = key * 16 + self.sigma2.apply(x) as u128;
        }
        for &m in &self.black_min {
            key = key * 16 + m as u128;
        }
        key
    }
}

/// Connected and `#cycles(σ₁) + #cycles(σ₂) = k + 1`.
pub fn is_plane_tree(s1: &Permutation, s2: &Permutation) -> bool {
    let k = s1.degree();
    if s1.cycle_count() + s2.cycle_count() != k + 1 {
        return false;
    }
    // points are connected through both permutations
    let mut seen = vec![false; k + 1];
    let mut stack = vec![1];
    seen[1] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in [s1.apply(x), s2.apply(x)] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == k
}

impl fmt::Display for StanleyTree {
    /// `k=3; s1=(1)(2,3); s2=(1,2)(3); labels=1:1,3:2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Permutation| -> String { p.cycles().iter().map(|c| c.to_string()).collect() };
        let mut pairs: Vec<(usize, usize)> = self.black_min.iter().enumerate().map(|(i, &m)| (m, i + 1)).collect();
        pairs.sort_unstable();
        let labels: Vec<String> = pairs.iter().map(|(m, l)| format!("{m}:{l}")).collect();
        write!(f, "k={}; s1={}; s2={}; labels={}", self.k, show(&self.sigma1), show(&self.sigma2), labels.join(","))
    }
}

impl FromStr for StanleyTree {
    type Err = StanleyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StanleyError::Syntax(s.to_string());
        let mut k = None;
        let mut s1 = None;
        let mut s2 = None;
        let mut labels = None;
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, val) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "k" => k = Some(val.trim().parse::<usize>().map_err(|_| bad())?),
                "s1" => s1 = Some(val.trim().to_string()),
                "s2" => s2 = Some(val.trim().to_string()),
                "labels" => labels = Some(val.trim().to_string()),
                "type" => {}
                _ => return Err(bad()),
            }
        }
        let k = k.ok_or_else(bad)?;
        let s1 = Permutation::parse(k, &s1.ok_or_else(bad)?)?;
        let s2 = Permutation::parse(k, &s2.ok_or_else(bad)?)?;
        let mut pairs = Vec::new();
        for item in labels.ok_or_else(bad)?.split(',') {
            let (m, l) = item.split_once(':').ok_or_else(bad)?;
            let m = m.trim().parse::<usize>().map_err(|_| bad())?;
            let l = l.trim().parse::<usize>().map_err(|_| bad())?;
            pairs.push((l, m));
        }
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(i, &(l, _))| l != i + 1) {
            return Err(StanleyError::Labeling);
        }
        // accept any point of the cycle, store its minimum
        let cycles = s2.cycles();
        let black_min = pairs
            .iter()
            .map(|&(_, m)| {
                cycles
                    .iter()
                    .find(|c| c.contains(m))
                    .map(|c| c.entries()[0])
                    .ok_or(StanleyError::Labeling)
            })
            .collect::<Result<Vec<_>, _>>()?;
        StanleyTree::new(s1, s2, black_min)
    }
}

/// All permutations of `S_k` in lexicographic one-line order, grouped by cycle count.
fn permutations_by_cycle_count(k: usize) -> Vec<Vec<Permutation>> {
    let mut out = vec![Vec::new(); k + 1];
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        let p = Permutation::from_images(cur.clone()).expect("permutation");
        out[p.cycle_count()].push(p);
        // next lexicographic permutation
        let mut i = k;
        while i > 1 && cur[i - 2] >= cur[i - 1] {
            i -= 1;
        }
        if i <= 1 {
            break;
        }
        let mut j = k;
        while cur[j - 1] <= cur[i - 2] {
            j -= 1;
        }
        cur.swap(i - 2, j - 1);
        cur[i - 1..].reverse();
    }
    out
}

/// Lexicographic permutations of `0..n`.
fn index_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Streams every Stanley tree with `k` edges and `n` black vertices, in canonical
/// order, together with its type.
pub fn for_each_with_n<F: FnMut(&StanleyTree, &StanleyType)>(k: usize, n: usize, mut visit: F) {
    if n == 0 || n > k + 1 || k == 0 {
        return;
    }
    let by_count = permutations_by_cycle_count(k);
    let whites = k + 1 - n;
    if whites > k || n > k {
        return;
    }
    let labelings = index_permutations(n);
    for s1 in &by_count[whites] {
        for s2 in &by_count[n] {
            if !is_plane_tree(s1, s2) {
                continue;
            }
            let cycles = s2.cycles();
            let mut cycle_of = vec![0; k + 1];
            for (ci, c) in cycles.iter().enumerate() {
                for &x in c.entries() {
                    cycle_of[x] = ci;
                }
            }
            let w_cycles = s1.cycles();
            for lab in &labelings {
                // lab[ci] is the black label − 1 given to σ₂-cycle ci
                let mut b = vec![0; n];
                for w in &w_cycles {
                    let m = w.entries().iter().map(|&x| lab[cycle_of[x]]).max().expect("nonempty");
                    b[m] += 1;
                }
                let mut black_min = vec![0; n];
                for (ci, c) in cycles.iter().enumerate() {
                    black_min[lab[ci]] = c.entries()[0];
                }
                let t = StanleyTree { k, sigma1: s1.clone(), sigma2: s2.clone(), black_min };
                visit(&t, &StanleyType { b });
            }
        }
    }
}

/// Every tree of the given type, in canonical order.
pub fn enumerate(bt: &StanleyType) -> Result<Vec<StanleyTree>, StanleyError> {
    enumerate_bounded(bt, max_k_from_env(DEFAULT_MAX_K))
}

pub fn enumerate_bounded(bt: &StanleyType, bound: usize) -> Result<Vec<StanleyTree>, StanleyError> {
    let k = bt.k();
    if k > bound {
        return Err(StanleyError::BoundExceeded { k, bound });
    }
    let mut out = Vec::new();
    for_each_with_n(k, bt.n(), |t, ty| {
        if ty == bt {
            out.push(t.clone());
        }
    });
    Ok(out)
}

/// Canonical equality.
pub fn equal(a: &StanleyTree, b: &StanleyTree) -> bool {
    a == b
}

/// The cycle of `σ₂` around black `i`, starting from its smallest label.
pub fn black_cycle(t: &StanleyTree, i: usize) -> Cycle {
    let m = t.black_min[i - 1];
    let mut v = Vec::new();
    let mut x = m;
    loop {
        v.push(x);
        x = t.sigma2.apply(x);
        if x == m {
            break;
        }
    }
    Cycle::new(v).expect("distinct")
}

/// Parses `σ₂` text into cycles (helper for callers building trees by hand).
pub fn parse_cycle_list(s: &str) -> Result<Vec<Cycle>, StanleyError> {
    Ok(parse_cycles(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute force over all pairs and labelings, no cycle-count prefilter.
    fn brute(bt: &StanleyType) -> usize {
        let k = bt.k();
        let n = bt.n();
        let all: Vec<Permutation> = permutations_by_cycle_count(k).into_iter().flatten().collect();
        let mut count = 0;
        for s1 in &all {
            for s2 in &all {
                if s2.cycle_count() != n || !is_plane_tree(s1, s2) {
                    continue;
                }
                let mins: Vec<usize> = s2.cycles().iter().map(|c| c.entries()[0]).collect();
                for lab in index_permutations(n) {
                    let mut bm = vec![0; n];
                    for (ci, &m) in mins.iter().enumerate() {
                        bm[lab[ci]] = m;
                    }
                    let t = StanleyTree::new(s1.clone(), s2.clone(), bm).unwrap();
                    if &t.type_of() == bt {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn type_one_one_has_six_trees() {
        let bt = StanleyType::new(vec![1, 1]);
        let all = enumerate(&bt).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(brute(&bt), 6);
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 6);
        assert!(!equal(&all[0], &all[1]));
        assert!(equal(&all[0], &all[0].clone()));
    }

    #[test]
    fn single_black_vertex() {
        for k in 1..=5 {
            let bt = StanleyType::new(vec![k]);
            let expected: usize = (1..k).product();
            assert_eq!(enumerate(&bt).unwrap().len(), expected.max(1));
        }
        let t = &enumerate(&StanleyType::new(vec![1])).unwrap()[0];
        assert_eq!(t.type_of().b, vec![1]);
    }

    #[test]
    fn counts_with_zero_parts_match_brute_force() {
        for b in [vec![0, 2], vec![2, 0], vec![1, 0, 1], vec![0, 1, 1]] {
            let bt = StanleyType::new(b);
            assert_eq!(enumerate(&bt).unwrap().len(), brute(&bt), "{bt}");
        }
    }

    #[test]
    fn plane_tree_round_trip() {
        for k in 1..=5 {
            for n in 1..=k + 1 {
                for_each_with_n(k, n, |t, ty| {
                    let p = t.to_plane_tree();
                    assert!(p.check().is_ok());
                    let back = StanleyTree::from_plane_tree(&p).unwrap();
                    assert_eq!(&back, t);
                    assert_eq!(&back.type_of(), ty);
                    assert_eq!(ty.b.iter().sum::<usize>() + n, k + 1);
                });
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for t in enumerate(&StanleyType::new(vec![2, 1])).unwrap() {
            let s = t.to_string();
            assert_eq!(s.parse::<StanleyTree>().unwrap(), t);
        }
        assert!("k=3; s1=(1,3,2); s2=(1)(2,3); labels=1:1,2:2".parse::<StanleyTree>().is_err());
    }

    #[test]
    fn factor_length_correspondence() {
        let bt = StanleyType::new(vec![3, 5, 3]);
        assert_eq!(bt.matching_factor_lengths(), vec![4, 7, 4]);
        assert_eq!(StanleyType::from_factor_lengths(&[4, 7, 4]), Some(bt));
        assert_eq!(StanleyType::new(vec![1; 14]).k(), 27);
    }
}
