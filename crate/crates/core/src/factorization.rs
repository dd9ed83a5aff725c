//! Minimal factorizations of long cycles (any `k`-cycle) into cycles of prescribed lengths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::{parse_cycles, Cycle, PermError, Permutation};

/// Default largest `k` accepted by [`enumerate`].
pub const DEFAULT_MAX_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("type must have at least one part and all parts must be >= 2")]
    BadType,
    #[error("k={k} exceeds the enumeration bound {bound}; use for_each for streaming")]
    BoundExceeded { k: usize, bound: usize },
    #[error("cannot parse factorization: {0}")]
    Syntax(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Why a tuple of cycles fails to be a minimal factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Defect {
    EmptyType,
    ShortFactor { index: usize },
    LengthMismatch { index: usize },
    EntryOutOfRange { index: usize },
    DegreeMismatch,
    NotLongCycle,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::EmptyType => write!(f, "no factors"),
            Defect::ShortFactor { index } => write!(f, "factor {} has length < 2", index + 1),
            Defect::LengthMismatch { index } => {
                write!(f, "factor {} does not match the declared type", index + 1)
            }
            Defect::EntryOutOfRange { index } => write!(f, "factor {} leaves 1..k", index + 1),
            Defect::DegreeMismatch => write!(f, "k differs from 1 + sum(a_i - 1)"),
            Defect::NotLongCycle => write!(f, "product is not a k-cycle"),
        }
    }
}

/// The lengths `(a₁,…,aₙ)` of the factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorizationType {
    parts: Vec<usize>,
}

impl FactorizationType {
    pub fn new(parts: Vec<usize>) -> Result<Self, FactorizationError> {
        if parts.is_empty() || parts.iter().any(|&a| a < 2) {
            return Err(FactorizationError::BadType);
        }
        Ok(FactorizationType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn k(&self) -> usize {
        1 + self.parts.iter().map(|a| a - 1).sum::<usize>()
    }

    /// All types with `n ≥ min_n` factors and the given `k`, in lexicographic order.
    pub fn all_with_k(k: usize, min_n: usize) -> Vec<FactorizationType> {
        fn rec(left: usize, cur: &mut Vec<usize>, min_n: usize, out: &mut Vec<FactorizationType>) {
            if left == 0 {
                if cur.len() >= min_n.max(1) {
                    out.push(FactorizationType { parts: cur.clone() });
                }
                return;
            }
            for d in 1..=left {
                cur.push(d + 1);
                rec(left - d, cur, min_n, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k >= 2 {
            rec(k - 1, &mut Vec::new(), min_n, &mut out);
        }
        out
    }

    /// At least two factors and every inner factor of length at least 3, so the
    /// matching tree type has no zero part.
    pub fn is_admissible(&self) -> bool {
        let n = self.parts.len();
        n >= 2 && self.parts[1..n - 1].iter().all(|&a| a >= 3)
    }

    pub fn admissible_with_k(k: usize) -> Vec<FactorizationType> {
        Self::all_with_k(k, 2).into_iter().filter(|t| t.is_admissible()).collect()
    }
}

impl fmt::Display for FactorizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for FactorizationType {
    type Err = FactorizationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| FactorizationError::Syntax(s.to_string()))?;
        FactorizationType::new(parts)
    }
}

/// An ordered tuple `(σ₁,…,σₙ)` of cycles in `S_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalFactorization {
    k: usize,
    factors: Vec<Cycle>,
}

impl MinimalFactorization {
    /// Wraps the factors without checking; see [`MinimalFactorization::check`].
    pub fn from_parts(k: usize, factors: Vec<Cycle>) -> Self {
        MinimalFactorization { k, factors }
    }

    /// Builds and validates.
    pub fn new(k: usize, factors: Vec<Cycle>) -> Result<Self, Defect> {
        let f = MinimalFactorization { k, factors };
        f.check()?;
        Ok(f)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Cycle] {
        &self.factors
    }

    pub fn ftype(&self) -> FactorizationType {
        FactorizationType { parts: self.factors.iter().map(|c| c.len()).collect() }
    }

    pub fn product(&self) -> Result<Permutation, PermError> {
        Permutation::from_cycles(self.k, &self.factors)
    }

    pub fn check(&self) -> Result<(), Defect> {
        self.check_against(None)
    }

    /// Validates, optionally against a declared type.
    pub fn check_against(&self, declared: Option<&FactorizationType>) -> Result<(), Defect> {
        if self.factors.is_empty() {
            return Err(Defect::EmptyType);
        }
        for (index, c) in self.factors.iter().enumerate() {
            if c.len() < 2 {
                return Err(Defect::ShortFactor { index });
            }
            if c.max_entry() > self.k {
                return Err(Defect::EntryOutOfRange { index });
            }
            if let Some(t) = declared {
                if t.parts.get(index) != Some(&c.len()) {
                    return Err(Defect::LengthMismatch { index });
                }
            }
        }
        if let Some(t) = declared {
            if t.n() != self.n() {
                return Err(Defect::LengthMismatch { index: t.n().min(self.n()) });
            }
        }
        if self.ftype().k() != self.k {
            return Err(Defect::DegreeMismatch);
        }
        let p = self.product().map_err(|_| Defect::NotLongCycle)?;
        if !p.is_long_cycle() {
            return Err(Defect::NotLongCycle);
        }
        Ok(())
    }

    pub fn validate(&self) -> bool {
        self.check().is_ok()
    }
}

impl fmt::Display for MinimalFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}; ", self.k)?;
        for c in &self.factors {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for MinimalFactorization {
    type Err = FactorizationError;
    /// Parses `k=10; (7,8,9,10)(1,2)(2,5,6,10)(2,3,4)` without validating.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FactorizationError::Syntax(s.to_string());
        let (head, body) = s.split_once(';').ok_or_else(bad)?;
        let k = head
            .trim()
            .strip_prefix("k=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(bad)?;
        let factors = parse_cycles(body)?;
        Ok(MinimalFactorization { k, factors })
    }
}

/// `(k−1)!·k^(n−1)`.
pub fn count_formula(t: &FactorizationType) -> BigUint {
    let k = t.k();
    let mut r = BigUint::from(1u32);
    for i in 1..k {
        r *= BigUint::from(i);
    }
    for _ in 1..t.n() {
        r *= BigUint::from(k);
    }
    r
}

/// Canonical cycles of length `a` in `S_k`, in lexicographic order.
fn cycles_of_length(k: usize, a: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, a: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for x in cur[0] + 1..=k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, a, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; k + 1];
    for m in 1..=k {
        used[m] = true;
        rec(k, a, &mut vec![m], &mut used, &mut out);
        used[m] = false;
    }
    out
}

/// Streams every element of the class, in lexicographic order, into `visit`.
///
/// The partial product `σ₁⋯σᵢ` is kept; a candidate `σᵢ₊₁` survives only if its
/// points lie in distinct cycles of it, which is exactly when the norm grows by
/// `aᵢ₊₁ − 1` and the total `k − 1` stays reachable.
pub fn for_each<F: FnMut(&[Cycle])>(t: &FactorizationType, mut visit: F) {
    let k = t.k();
    let n = t.n();
    let candidates: Vec<Vec<Vec<usize>>> = t.parts.iter().map(|&a| cycles_of_length(k, a)).collect();
    let mut partial = vec![(1..=k).collect::<Vec<usize>>()];
    let mut chosen: Vec<Cycle> = Vec::with_capacity(n);
    let mut cycle_id = vec![0usize; k + 1];
    dfs(k, &candidates, &mut partial, &mut chosen, &mut cycle_id, &mut visit);
}

fn dfs<F: FnMut(&[Cycle])>(
    k: usize,
    candidates: &[Vec<Vec<usize>>],
    partial: &mut Vec<Vec<usize>>,
    chosen: &mut Vec<Cycle>,
    cycle_id: &mut [usize],
    visit: &mut F,
) {
    let depth = chosen.len();
    if depth == candidates.len() {
        if is_long(partial.last().expect("partial product")) {
            visit(chosen);
        }
        return;
    }
    // label points by the cycle of the current partial product
    {
        let p = partial.last().expect("partial product");
        cycle_id.iter_mut().for_each(|c| *c = 0);
        let mut next = 0;
        for s in 1..=k {
            if cycle_id[s] != 0 {
                continue;
            }
            next += 1;
            let mut x = s;
            while cycle_id[x] == 0 {
                cycle_id[x] = next;
                x = p[x - 1];
            }
        }
    }
    let ids: Vec<usize> = cycle_id.to_vec();
    'cand: for c in &candidates[depth] {
        for i in 0..c.len() {
            for j in 0..i {
                if ids[c[i]] == ids[c[j]] {
                    continue 'cand;
                }
            }
        }
        // new partial = old ∘ c  (c acts first)
        let old = partial.last().expect("partial product");
        let mut next: Vec<usize> = old.clone();
        for (i, &x) in c.iter().enumerate() {
            next[x - 1] = old[c[(i + 1) % c.len()] - 1];
        }
        partial.push(next);
        chosen.push(Cycle::new(c.clone()).expect("canonical candidate"));
        dfs(k, candidates, partial, chosen, cycle_id, visit);
        chosen.pop();
        partial.pop();
    }
}

fn is_long(p: &[usize]) -> bool {
    let mut x = 1;
    for step in 1..=p.len() {
        x = p[x - 1];
        if x == 1 {
            return step == p.len();
        }
    }
    false
}

/// Every element of the class, with the default bound on `k` (overridable through
/// the `STANLEY_BIJ_MAX_K` environment variable).
pub fn enumerate(t: &FactorizationType) -> Result<Vec<MinimalFactorization>, FactorizationError> {
    enumerate_bounded(t, crate::stanley::max_k_from_env(DEFAULT_MAX_K))
}

pub fn enumerate_bounded(
    t: &FactorizationType,
    bound: usize,
) -> Result<Vec<MinimalFactorization>, FactorizationError> {
    let k = t.k();
    if k > bound {
        return Err(FactorizationError::BoundExceeded { k, bound });
    }
    let mut out = Vec::new();
    for_each(t, |fs| out.push(MinimalFactorization { k, factors: fs.to_vec() }));
    Ok(out)
}

/// A random element of the class; every element has positive probability.
///
/// Factors are drawn one at a time with points in pairwise distinct cycles of the
/// partial product, so the process never dead-ends and needs no rejection step.
pub fn sample(t: &FactorizationType, seed: u64) -> MinimalFactorization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(t, &mut rng)
}

pub fn sample_with<R: Rng>(t: &FactorizationType, rng: &mut R) -> MinimalFactorization {
    let k = t.k();
    let mut p = Permutation::identity(k);
    let mut factors = Vec::with_capacity(t.n());
    for &a in &t.parts {
        let cycles = p.cycles();
        let mut which: Vec<usize> = (0..cycles.len()).collect();
        which.shuffle(rng);
        let mut entries: Vec<usize> = which[..a]
            .iter()
            .map(|&ci| {
                let e = cycles[ci].entries();
                e[rng.gen_range(0..e.len())]
            })
            .collect();
        entries.shuffle(rng);
        let c = Cycle::new(entries).expect("distinct points");
        p = p.compose(&c.to_permutation(k).expect("in range")).expect("same degree");
        factors.push(c);
    }
    MinimalFactorization { k, factors }
}

/// A random type with the given `k` and at least two parts.
pub fn random_type<R: Rng>(k: usize, rng: &mut R) -> FactorizationType {
    loop {
        let mut parts = Vec::new();
        let mut left = k - 1;
        while left > 0 {
            let d = rng.gen_range(1..=left);
            parts.push(d + 1);
            left -= d;
        }
        if parts.len() >= 2 {
            return FactorizationType { parts };
        }
    }
}

/// A uniformly chosen admissible type with the given `k` (needs `k ≥ 3`).
pub fn random_admissible_type<R: Rng>(k: usize, rng: &mut R) -> FactorizationType {
    let all = FactorizationType::admissible_with_k(k);
    all[rng.gen_range(0..all.len())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ty(p: &[usize]) -> FactorizationType {
        FactorizationType::new(p.to_vec()).unwrap()
    }

    /// Every ordered tuple of cycles of the right lengths, filtered by the product.
    fn brute_force(t: &FactorizationType) -> Vec<MinimalFactorization> {
        let k = t.k();
        let mut out = vec![Vec::<Cycle>::new()];
        for &a in t.parts() {
            let cs = cycles_of_length(k, a);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    cs.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(Cycle::new(c.clone()).unwrap());
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|fs| MinimalFactorization::from_parts(k, fs))
            .filter(|f| f.validate())
            .collect()
    }

    #[test]
    fn two_transpositions_in_s3() {
        let all = enumerate(&ty(&[2, 2])).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(enumerate(&ty(&[2, 2, 2])).unwrap().len(), 96);
        assert_eq!(all, brute_force(&ty(&[2, 2])));
    }

    #[test]
    fn single_factor_is_a_long_cycle() {
        let all = enumerate(&ty(&[3])).unwrap();
        let text: Vec<String> = all.iter().map(|f| f.to_string()).collect();
        assert_eq!(text, ["k=3; (1,2,3)", "k=3; (1,3,2)"]);
    }

    #[test]
    fn enumeration_agrees_with_brute_force_small() {
        for t in [ty(&[2, 2, 2]), ty(&[3, 2]), ty(&[2, 3]), ty(&[3, 3]), ty(&[2, 2, 3])] {
            let fast = enumerate(&t).unwrap();
            assert_eq!(fast, brute_force(&t), "type {t}");
        }
    }

    #[test]
    fn counts_match_formula_up_to_six() {
        for k in 2..=6 {
            for t in FactorizationType::all_with_k(k, 1) {
                let all = enumerate(&t).unwrap();
                let set: HashSet<_> = all.iter().collect();
                assert_eq!(set.len(), all.len());
                assert!(all.iter().all(|f| f.validate()));
                assert_eq!(BigUint::from(all.len()), count_formula(&t), "type {t}");
            }
        }
    }

    #[test]
    fn rejects_non_minimal() {
        let f: MinimalFactorization = "k=3; (1,2)(1,2)".parse().unwrap();
        assert_eq!(f.check(), Err(Defect::NotLongCycle));
        let g: MinimalFactorization = "k=10; (7,8,9,10)(1,2)(2,5,6,10)(2,3,4)".parse().unwrap();
        assert!(g.validate());
    }

    #[test]
    fn samples_are_valid_and_deterministic() {
        for seed in 0..50 {
            let t = ty(&[2, 3, 3, 2]);
            let f = sample(&t, seed);
            assert!(f.validate());
            assert_eq!(f.ftype(), t);
            assert_eq!(f, sample(&t, seed));
        }
        let members: HashSet<_> = enumerate(&ty(&[2, 3, 3, 2])).unwrap().into_iter().collect();
        assert!(members.contains(&sample(&ty(&[2, 3, 3, 2]), 7)));
    }

    #[test]
    fn formula_values() {
        assert_eq!(count_formula(&ty(&[2, 2])), BigUint::from(6u32));
        assert_eq!(count_formula(&ty(&[5])), BigUint::from(24u32));
    }
}
