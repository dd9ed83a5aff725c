//! Exact symmetric group characters on Young diagrams and multi-rectangular
//! diagrams, and the Stanley polynomials for two rectangles.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("rows must be positive and weakly decreasing")]
    NotAPartition,
    #[error("q must be weakly decreasing and p, q of equal length")]
    NotMultiRectangular,
    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("need b_1+...+b_n+n = k+1, got n={n}, k={k}")]
    BadExponents { n: usize, k: usize },
    #[error("interpolation grid of {0} points is too large")]
    GridTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self, CharacterError> {
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(CharacterError::NotAPartition);
        }
        Ok(YoungDiagram { rows })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dimension(&self) -> BigUint {
        let n = self.size();
        let mut num = BigUint::one();
        for i in 2..=n {
            num *= i;
        }
        let mut den = BigUint::one();
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 0..r {
                let below = self.rows[i + 1..].iter().filter(|&&s| s > j).count();
                den *= r - j + below;
            }
        }
        num / den
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `p × q`: `p₁` rows of length `q₁`, then `p₂` rows of length `q₂`, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRectangular {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

impl MultiRectangular {
    pub fn new(p: Vec<usize>, q: Vec<usize>) -> Result<Self, CharacterError> {
        if p.len() != q.len() || q.windows(2).any(|w| w[0] < w[1]) {
            return Err(CharacterError::NotMultiRectangular);
        }
        Ok(MultiRectangular { p, q })
    }

    pub fn diagram(&self) -> YoungDiagram {
        let mut rows = Vec::new();
        for (&p, &q) in self.p.iter().zip(&self.q) {
            if q > 0 {
                rows.extend(std::iter::repeat(q).take(p));
            }
        }
        YoungDiagram { rows }
    }
}

/// First-column hook lengths `λᵢ + (ℓ − i)`, decreasing.
fn beta_set(rows: &[usize]) -> Vec<usize> {
    let l = rows.len();
    rows.iter().enumerate().map(|(i, &r)| r + l - 1 - i).collect()
}

fn from_beta(beta: &[usize]) -> Vec<usize> {
    let l = beta.len();
    beta.iter().enumerate().map(|(i, &b)| b - (l - 1 - i)).filter(|&r| r > 0).collect()
}

/// All shapes obtained by removing a rim hook of size `r`, with the hook's sign.
fn remove_rim_hooks(rows: &[usize], r: usize) -> Vec<(Vec<usize>, bool)> {
    let beta = beta_set(rows);
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c < b && c > b - r).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        out.push((from_beta(&nb), between % 2 == 1));
    }
    out
}

/// `χ^λ(ρ)` by the Murnaghan–Nakayama rule, memoized on the remaining shape.
pub fn mn_character(lambda: &YoungDiagram, rho: &[usize]) -> Result<BigInt, CharacterError> {
    let total: usize = rho.iter().sum();
    if total != lambda.size() {
        return Err(CharacterError::SizeMismatch(lambda.size(), total));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(&lambda.rows, rho, &mut memo))
}

fn mn_rec(rows: &[usize], rho: &[usize], memo: &mut HashMap<(Vec<usize>, usize), BigInt>) -> BigInt {
    if rho.is_empty() {
        return BigInt::one();
    }
    let key = (rows.to_vec(), rho.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut acc = BigInt::zero();
    for (mu, neg) in remove_rim_hooks(rows, rho[0]) {
        let v = mn_rec(&mu, &rho[1..], memo);
        if neg {
            acc -= v;
        } else {
            acc += v;
        }
    }
    memo.insert(key, acc.clone());
    acc
}

/// `Ch_k(λ) = N(N−1)⋯(N−k+1) · χ^λ(k,1^{N−k}) / χ^λ(1^N)`, and 0 when `k > N`.
pub fn normalized_character(k: usize, lambda: &YoungDiagram) -> BigRational {
    let n = lambda.size();
    if k > n || k == 0 {
        return BigRational::zero();
    }
    // χ^λ(k,1^{N−k}) = Σ over k-rim hooks of ±dim(λ∖hook)
    let mut chi = BigInt::zero();
    for (mu, neg) in remove_rim_hooks(&lambda.rows, k) {
        let d = BigInt::from(YoungDiagram { rows: mu }.dimension());
        if neg {
            chi -= d;
        } else {
            chi += d;
        }
    }
    let mut falling = BigInt::one();
    for i in 0..k {
        falling *= n - i;
    }
    BigRational::new(falling * chi, BigInt::from(lambda.dimension()))
}

pub fn normalized_character_multi(k: usize, pq: &MultiRectangular) -> BigRational {
    normalized_character(k, &pq.diagram())
}

/// Closed forms of Ch_1..Ch_4 and R_2..R_5 on two rectangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownPolynomial {
    Ch1,
    Ch2,
    Ch3,
    Ch4,
    R2,
    R3,
    R4,
    R5,
}

impl KnownPolynomial {
    pub const ALL: [KnownPolynomial; 8] = [
        KnownPolynomial::Ch1,
        KnownPolynomial::Ch2,
        KnownPolynomial::Ch3,
        KnownPolynomial::Ch4,
        KnownPolynomial::R2,
        KnownPolynomial::R3,
        KnownPolynomial::R4,
        KnownPolynomial::R5,
    ];

    /// Terms `(coefficient, [deg p₁, deg q₁, deg p₂, deg q₂])`.
    pub fn terms(self) -> &'static [(i64, [u32; 4])] {
        match self {
            KnownPolynomial::Ch1 | KnownPolynomial::R2 => CH1,
            KnownPolynomial::Ch2 => CH2,
            KnownPolynomial::R3 => R3,
            KnownPolynomial::Ch3 => CH3,
            KnownPolynomial::R4 => R4,
            KnownPolynomial::Ch4 => CH4,
            KnownPolynomial::R5 => R5,
        }
    }

    /// `Some(k)` for `Ch_k`.
    pub fn ch_index(self) -> Option<usize> {
        match self {
            KnownPolynomial::Ch1 => Some(1),
            KnownPolynomial::Ch2 => Some(2),
            KnownPolynomial::Ch3 => Some(3),
            KnownPolynomial::Ch4 => Some(4),
            _ => None,
        }
    }
}

impl std::str::FromStr for KnownPolynomial {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "ch1" => KnownPolynomial::Ch1,
            "ch2" => KnownPolynomial::Ch2,
            "ch3" => KnownPolynomial::Ch3,
            "ch4" => KnownPolynomial::Ch4,
            "r2" => KnownPolynomial::R2,
            "r3" => KnownPolynomial::R3,
            "r4" => KnownPolynomial::R4,
            "r5" => KnownPolynomial::R5,
            _ => return Err(format!("unknown polynomial {s}")),
        })
    }
}

const CH1: &[(i64, [u32; 4])] = &[(1, [1, 1, 0, 0]), (1, [0, 0, 1, 1])];

const CH2: &[(i64, [u32; 4])] =
    &[(-1, [2, 1, 0, 0]), (1, [1, 2, 0, 0]), (-2, [1, 0, 1, 1]), (-1, [0, 0, 2, 1]), (1, [0, 0, 1, 2])];

const R3: &[(i64, [u32; 4])] = CH2;

const CH3: &[(i64, [u32; 4])] = &[
    (1, [3, 1, 0, 0]),
    (-3, [2, 2, 0, 0]),
    (3, [2, 0, 1, 1]),
    (1, [1, 3, 0, 0]),
    (-3, [1, 1, 1, 1]),
    (3, [1, 0, 2, 1]),
    (-3, [1, 0, 1, 2]),
    (1, [0, 0, 3, 1]),
    (-3, [0, 0, 2, 2]),
    (1, [0, 0, 1, 3]),
    (1, [1, 1, 0, 0]),
    (1, [0, 0, 1, 1]),
];

const R4: &[(i64, [u32; 4])] = &[
    (1, [3, 1, 0, 0]),
    (-3, [2, 2, 0, 0]),
    (3, [2, 0, 1, 1]),
    (1, [1, 3, 0, 0]),
    (-3, [1, 1, 1, 1]),
    (3, [1, 0, 2, 1]),
    (-3, [1, 0, 1, 2]),
    (1, [0, 0, 3, 1]),
    (-3, [0, 0, 2, 2]),
    (1, [0, 0, 1, 3]),
];

const CH4: &[(i64, [u32; 4])] = &[
    (-1, [4, 1, 0, 0]),
    (6, [3, 2, 0, 0]),
    (-4, [3, 0, 1, 1]),
    (-6, [2, 3, 0, 0]),
    (12, [2, 1, 1, 1]),
    (-6, [2, 0, 2, 1]),
    (6, [2, 0, 1, 2]),
    (1, [1, 4, 0, 0]),
    (-4, [1, 2, 1, 1]),
    (4, [1, 1, 2, 1]),
    (-4, [1, 1, 1, 2]),
    (-4, [1, 0, 3, 1]),
    (14, [1, 0, 2, 2]),
    (-4, [1, 0, 1, 3]),
    (-1, [0, 0, 4, 1]),
    (6, [0, 0, 3, 2]),
    (-6, [0, 0, 2, 3]),
    (1, [0, 0, 1, 4]),
    (-5, [2, 1, 0, 0]),
    (5, [1, 2, 0, 0]),
    (-10, [1, 0, 1, 1]),
    (-5, [0, 0, 2, 1]),
    (5, [0, 0, 1, 2]),
];

const R5: &[(i64, [u32; 4])] = &[
    (-1, [4, 1, 0, 0]),
    (6, [3, 2, 0, 0]),
    (-4, [3, 0, 1, 1]),
    (-6, [2, 3, 0, 0]),
    (12, [2, 1, 1, 1]),
    (-6, [2, 0, 2, 1]),
    (6, [2, 0, 1, 2]),
    (1, [1, 4, 0, 0]),
    (-4, [1, 2, 1, 1]),
    (4, [1, 1, 2, 1]),
    (-4, [1, 1, 1, 2]),
    (-4, [1, 0, 3, 1]),
    (14, [1, 0, 2, 2]),
    (-4, [1, 0, 1, 3]),
    (-1, [0, 0, 4, 1]),
    (6, [0, 0, 3, 2]),
    (-6, [0, 0, 2, 3]),
    (1, [0, 0, 1, 4]),
];

pub fn eval_known_polynomial(which: KnownPolynomial, p: [i64; 2], q: [i64; 2]) -> BigInt {
    let vars = [p[0], q[0], p[1], q[1]];
    let mut acc = BigInt::zero();
    for &(c, e) in which.terms() {
        let mut t = BigInt::from(c);
        for (v, &d) in vars.iter().zip(&e) {
            t *= BigInt::from(*v).pow(d);
        }
        acc += t;
    }
    acc
}

/// Monomial coefficients of the polynomial of degree `≤ d` through `(x, values[x])`, `x = 0..=d`.
fn interpolate_1d(values: &[BigRational]) -> Vec<BigRational> {
    let d = values.len();
    // forward differences at 0
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(d);
    for _ in 0..d {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // Σ Δʲf(0) · x(x−1)⋯(x−j+1)/j!
    let mut coeffs = vec![BigRational::zero(); d];
    let mut falling = vec![BigRational::one()];
    let mut fact = BigRational::one();
    for (j, dj) in newton.iter().enumerate() {
        if j > 0 {
            fact *= BigRational::from_integer(BigInt::from(j));
            let mut next = vec![BigRational::zero(); falling.len() + 1];
            let shift = BigRational::from_integer(BigInt::from(j - 1));
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        for (i, c) in falling.iter().enumerate() {
            coeffs[i] += dj * c / &fact;
        }
    }
    coeffs
}

/// Upper bound on character evaluations for one coefficient extraction.
pub const MAX_GRID: usize = 2_000_000;

/// `[p₁⋯pₙ q₁^{b₁}⋯qₙ^{bₙ}] Ch_k(p × q)`, by exact interpolation.
///
/// Inclusion–exclusion over `p ∈ {0,1}ⁿ` keeps the monomials divisible by every
/// `pᵢ`; since `Ch_k` has degree `k+1`, those of `q`-degree `Σbᵢ` are square-free
/// in `p`. The resulting polynomial in `q` is interpolated on the cone
/// `q₁ ≥ ⋯ ≥ qₙ ≥ 0` through `qᵢ = sᵢ + ⋯ + sₙ`.
pub fn extract_psquarefree_coeff(k: usize, b: &[usize]) -> Result<BigRational, CharacterError> {
    let n = b.len();
    if n == 0 || b.iter().sum::<usize>() + n != k + 1 {
        return Err(CharacterError::BadExponents { n, k });
    }
    let d = k + 1 - n;
    let side = d + 1;
    let points = side.checked_pow(n as u32).and_then(|v| v.checked_mul(1 << n)).unwrap_or(usize::MAX);
    if points > MAX_GRID {
        return Err(CharacterError::GridTooLarge(points));
    }
    let cells = side.pow(n as u32);
    let mut grid = Vec::with_capacity(cells);
    for idx in 0..cells {
        let mut s = vec![0usize; n];
        let mut r = idx;
        for v in s.iter_mut() {
            *v = r % side;
            r /= side;
        }
        let mut q = vec![0usize; n];
        let mut acc = 0;
        for i in (0..n).rev() {
            acc += s[i];
            q[i] = acc;
        }
        let mut g = BigRational::zero();
        for mask in 0..(1usize << n) {
            let p: Vec<usize> = (0..n).map(|i| (mask >> i) & 1).collect();
            let v = normalized_character_multi(k, &MultiRectangular { p, q: q.clone() });
            if (n - mask.count_ones() as usize) % 2 == 1 {
                g -= v;
            } else {
                g += v;
            }
        }
        grid.push(g);
    }
    // interpolate axis by axis: grid becomes the coefficient array in s
    let mut stride = 1;
    for _ in 0..n {
        for base in 0..cells {
            if (base / stride) % side != 0 {
                continue;
            }
            let vals: Vec<BigRational> = (0..side).map(|t| grid[base + t * stride].clone()).collect();
            for (t, c) in interpolate_1d(&vals).into_iter().enumerate() {
                grid[base + t * stride] = c;
            }
        }
        stride *= side;
    }
    // substitute sᵢ = qᵢ − qᵢ₊₁ (sₙ = qₙ) and read off the coefficient of q^b
    let mut total = BigRational::zero();
    for (idx, c) in grid.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = vec![0usize; n];
        let mut r = idx;
        for v in e.iter_mut() {
            *v = r % side;
            r /= side;
        }
        if e.iter().sum::<usize>() != d {
            continue;
        }
        total += c * coefficient_in_differences(&e, b);
    }
    Ok(total)
}

/// Coefficient of `q^b` in `Π (qᵢ − qᵢ₊₁)^{eᵢ}` (with `qₙ₊₁ = 0`).
fn coefficient_in_differences(e: &[usize], b: &[usize]) -> BigRational {
    // (qᵢ − qᵢ₊₁)^{eᵢ} contributes qᵢ^{eᵢ−tᵢ} (−qᵢ₊₁)^{tᵢ}
    fn rec(i: usize, e: &[usize], b: &[usize], carry: usize) -> BigInt {
        let n = e.len();
        if i == n {
            return BigInt::one();
        }
        // qᵢ already has `carry` from the previous factor
        if carry > b[i] {
            return BigInt::zero();
        }
        let need = b[i] - carry;
        if need > e[i] {
            return BigInt::zero();
        }
        let t = e[i] - need;
        if i == n - 1 && t > 0 {
            return BigInt::zero();
        }
        let mut c = binomial(e[i], t);
        if t % 2 == 1 {
            c = -c;
        }
        c * rec(i + 1, e, b, t)
    }
    BigRational::from_integer(rec(0, e, b, 0))
}

fn binomial(n: usize, r: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..r {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `(−k)^{n−1}`.
pub fn expected_coeff(k: usize, n: usize) -> BigInt {
    let v = BigInt::from(k).pow(n as u32 - 1);
    if n % 2 == 0 {
        -v
    } else {
        v
    }
}

/// `|c|·(k−1)!` as an integer, when that is one.
pub fn scaled_magnitude(c: &BigRational, k: usize) -> Option<BigUint> {
    let mut f = BigInt::one();
    for i in 2..k {
        f *= i;
    }
    let v = c.abs() * BigRational::from_integer(f);
    v.is_integer().then(|| v.to_integer().to_biguint().expect("nonnegative"))
}

/// Rounds an integral rational to `i64` for display.
pub fn as_i64(c: &BigRational) -> Option<i64> {
    c.is_integer().then(|| c.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(r: &[usize]) -> YoungDiagram {
        YoungDiagram::new(r.to_vec()).unwrap()
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn small_characters() {
        assert_eq!(mn_character(&yd(&[2]), &[2]).unwrap(), BigInt::from(1));
        assert_eq!(mn_character(&yd(&[1, 1]), &[2]).unwrap(), BigInt::from(-1));
        assert_eq!(mn_character(&yd(&[2, 1]), &[2, 1]).unwrap(), BigInt::from(0));
        assert!(mn_character(&yd(&[2, 1]), &[2]).is_err());
    }

    /// Column orthogonality on S_4 and S_5: Σ_λ χ^λ(ρ)² = z_ρ.
    #[test]
    fn column_orthogonality() {
        fn parts(n: usize, max: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in (1..=n.min(max)).rev() {
                for mut rest in parts(n - first, first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        for n in 4..=5 {
            for rho in parts(n, n) {
                let mut z = BigInt::one();
                let mut counts = HashMap::new();
                for &r in &rho {
                    z *= r;
                    *counts.entry(r).or_insert(0usize) += 1;
                }
                for (_, m) in counts {
                    for i in 2..=m {
                        z *= i;
                    }
                }
                let s: BigInt = parts(n, n).iter().map(|l| mn_character(&yd(l), &rho).unwrap().pow(2)).sum();
                assert_eq!(s, z, "{rho:?}");
            }
        }
    }

    #[test]
    fn dimension_matches_trivial_column() {
        for l in [&[3, 2, 1][..], &[4, 1], &[2, 2, 2], &[5]] {
            let n = l.iter().sum::<usize>();
            let ones = vec![1; n];
            assert_eq!(BigInt::from(yd(l).dimension()), mn_character(&yd(l), &ones).unwrap());
        }
    }

    #[test]
    fn normalized_small_values() {
        for l in [&[1][..], &[2], &[1, 1], &[3, 1], &[2, 2, 1], &[3, 2, 1]] {
            assert_eq!(normalized_character(1, &yd(l)), rat(l.iter().sum::<usize>() as i64));
        }
        assert_eq!(normalized_character(2, &yd(&[2])), rat(2));
        assert_eq!(normalized_character(2, &yd(&[2, 1])), rat(0));
        assert_eq!(normalized_character(5, &yd(&[2, 1])), rat(0));
    }

    #[test]
    fn rim_hook_formula_agrees_with_recursion() {
        for l in [&[3, 2, 1][..], &[4, 2], &[3, 3, 1], &[5, 1, 1]] {
            let lam = yd(l);
            let n = lam.size();
            for k in 1..=n {
                let mut rho = vec![k];
                rho.extend(std::iter::repeat(1).take(n - k));
                let chi = mn_character(&lam, &rho).unwrap();
                let mut falling = BigInt::one();
                for i in 0..k {
                    falling *= n - i;
                }
                let want = BigRational::new(falling * chi, BigInt::from(lam.dimension()));
                assert_eq!(normalized_character(k, &lam), want);
            }
        }
    }

    #[test]
    fn known_polynomials_at_points() {
        assert_eq!(eval_known_polynomial(KnownPolynomial::Ch1, [1, 1], [2, 1]), BigInt::from(3));
        assert_eq!(eval_known_polynomial(KnownPolynomial::Ch2, [1, 1], [2, 1]), BigInt::from(0));
        assert_eq!(eval_known_polynomial(KnownPolynomial::Ch2, [1, 0], [2, 0]), BigInt::from(2));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = |x: i64| rat(2 * x * x * x - x + 7);
        let vals: Vec<BigRational> = (0..5).map(f).collect();
        assert_eq!(interpolate_1d(&vals), vec![rat(7), rat(-1), rat(0), rat(2), rat(0)]);
    }

    #[test]
    fn difference_substitution() {
        // (q₁ − q₂)² = q₁² − 2q₁q₂ + q₂²
        assert_eq!(coefficient_in_differences(&[2, 0], &[1, 1]), rat(-2));
        assert_eq!(coefficient_in_differences(&[2, 0], &[0, 2]), rat(1));
        // s₂ = q₂
        assert_eq!(coefficient_in_differences(&[0, 1], &[0, 1]), rat(1));
        assert_eq!(coefficient_in_differences(&[0, 1], &[1, 0]), rat(0));
    }

    #[test]
    fn bad_exponents() {
        assert_eq!(extract_psquarefree_coeff(4, &[1, 1]), Err(CharacterError::BadExponents { n: 2, k: 4 }));
    }
}
