//! Permutations of `{1..k}` and their cycles.
//!
//! Products are taken rightmost-first: `compose(f, g)` is `x ↦ f(g(x))`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("value {value} outside 1..={k}")]
    OutOfRange { value: usize, k: usize },
    #[error("value {0} appears more than once")]
    Repeated(usize),
    #[error("empty cycle")]
    EmptyCycle,
    #[error("cannot parse cycle text: {0}")]
    Syntax(String),
}

/// A bijection of `{1..k}` stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation { images: (1..=k).collect() }
    }

    /// Builds from one-line notation; `images[i-1]` is the image of `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let k = images.len();
        let mut seen = vec![false; k + 1];
        for &v in &images {
            if v == 0 || v > k {
                return Err(PermError::OutOfRange { value: v, k });
            }
            if seen[v] {
                return Err(PermError::Repeated(v));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Product of the given cycles read as disjoint or not; the last one acts first.
    pub fn from_cycles(k: usize, cycles: &[Cycle]) -> Result<Self, PermError> {
        let mut p = Permutation::identity(k);
        for c in cycles.iter().rev() {
            p = c.to_permutation(k)?.compose(&p)?;
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = other.images.iter().map(|&y| self.images[y - 1]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn cycle_count(&self) -> usize {
        let k = self.degree();
        let mut seen = vec![false; k + 1];
        let mut count = 0;
        for start in 1..=k {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x - 1];
            }
        }
        count
    }

    /// Minimal number of transpositions needed: `k` minus the number of cycles.
    pub fn norm(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    pub fn is_long_cycle(&self) -> bool {
        let k = self.degree();
        if k == 0 {
            return false;
        }
        let mut x = 1;
        for step in 1..=k {
            x = self.images[x - 1];
            if x == 1 {
                return step == k;
            }
        }
        false
    }

    /// Full decomposition including fixed points, minimum first, sorted by minimum.
    pub fn cycles(&self) -> Vec<Cycle> {
        let k = self.degree();
        let mut seen = vec![false; k + 1];
        let mut out = Vec::new();
        for start in 1..=k {
            if seen[start] {
                continue;
            }
            let mut entries = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                entries.push(x);
                x = self.images[x - 1];
            }
            out.push(Cycle { entries });
        }
        out
    }

    /// Parses concatenated cycles such as `(1,2)(3,4)`; omitted points are fixed.
    pub fn parse(k: usize, text: &str) -> Result<Self, PermError> {
        let cycles = parse_cycles(text)?;
        let mut images: Vec<usize> = (1..=k).collect();
        let mut seen = vec![false; k + 1];
        for c in &cycles {
            for (i, &x) in c.entries.iter().enumerate() {
                if x > k {
                    return Err(PermError::OutOfRange { value: x, k });
                }
                if seen[x] {
                    return Err(PermError::Repeated(x));
                }
                seen[x] = true;
                images[x - 1] = c.entries[(i + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation without fixed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() > 1 {
                write!(f, "{c}")?;
                any = true;
            }
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A cyclic sequence of distinct positive integers, kept with its minimum first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    entries: Vec<usize>,
}

impl Cycle {
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        if entries.is_empty() {
            return Err(PermError::EmptyCycle);
        }
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(PermError::Repeated(w[0]));
            }
        }
        if sorted[0] == 0 {
            return Err(PermError::OutOfRange { value: 0, k: sorted[sorted.len() - 1] });
        }
        Ok(Self::canonical(entries))
    }

    fn canonical(mut entries: Vec<usize>) -> Self {
        let pos = (0..entries.len()).min_by_key(|&i| entries[i]).unwrap_or(0);
        entries.rotate_left(pos);
        Cycle { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.entries.contains(&x)
    }

    pub fn to_permutation(&self, k: usize) -> Result<Permutation, PermError> {
        let mut images: Vec<usize> = (1..=k).collect();
        for (i, &x) in self.entries.iter().enumerate() {
            if x > k {
                return Err(PermError::OutOfRange { value: x, k });
            }
            images[x - 1] = self.entries[(i + 1) % self.len()];
        }
        Ok(Permutation { images })
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Parses a run of parenthesized cycles, e.g. `(7,8,9,10)(1,2)`. Whitespace is ignored.
pub fn parse_cycles(text: &str) -> Result<Vec<Cycle>, PermError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "()" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Syntax(text.to_string()))?;
        let close = body.find(')').ok_or_else(|| PermError::Syntax(text.to_string()))?;
        let inner = &body[..close];
        let entries = inner
            .split(',')
            .map(|s| s.parse::<usize>().map_err(|_| PermError::Syntax(text.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Cycle::new(entries)?);
        rest = &body[close + 1..];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(v: &[usize]) -> Cycle {
        Cycle::new(v.to_vec()).unwrap()
    }

    #[test]
    fn involution_squares_to_identity() {
        let t = cyc(&[1, 2]).to_permutation(2).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn product_convention_matches_four_factor_fixture() {
        let factors = [cyc(&[7, 8, 9, 10]), cyc(&[1, 2]), cyc(&[2, 5, 6, 10]), cyc(&[2, 3, 4])];
        let p = Permutation::from_cycles(10, &factors).unwrap();
        assert_eq!(p, Permutation::from_images((1..=10).map(|i| i % 10 + 1).collect()).unwrap());
        assert!(p.is_long_cycle());
    }

    #[test]
    fn norms() {
        assert_eq!(Permutation::identity(5).norm(), 0);
        assert_eq!(Permutation::parse(3, "(1,2,3)").unwrap().norm(), 2);
        assert_eq!(Permutation::parse(4, "(1,2)(3,4)").unwrap().norm(), 2);
    }

    #[test]
    fn long_cycle_detection() {
        assert!(!Permutation::identity(2).is_long_cycle());
        assert!(!Permutation::parse(4, "(1,2)(3,4)").unwrap().is_long_cycle());
        assert!(Permutation::parse(4, "(1,3,2,4)").unwrap().is_long_cycle());
    }

    #[test]
    fn cycle_decomposition_is_canonical() {
        let p = Permutation::parse(10, "(2,5,6,10)").unwrap();
        let text: Vec<String> = p.cycles().iter().map(|c| c.to_string()).collect();
        assert_eq!(text, ["(1)", "(2,5,6,10)", "(3)", "(4)", "(7)", "(8)", "(9)"]);
        assert_eq!(Permutation::identity(3).cycles().len(), 3);
        assert_eq!(cyc(&[3, 2, 1]).entries(), &[1, 3, 2]);
        assert_eq!(cyc(&[5, 9, 2]), cyc(&[2, 5, 9]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Cycle::new(vec![]).is_err());
        assert!(Cycle::new(vec![1, 2, 1]).is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::identity(2).compose(&Permutation::identity(3)).is_err());
        assert!(parse_cycles("(1,2").is_err());
    }

    #[test]
    fn display_round_trips() {
        let p = Permutation::parse(6, "(1,4)(2,6,3)").unwrap();
        assert_eq!(p.to_string(), "(1,4)(2,6,3)");
        assert_eq!(Permutation::parse(6, &p.to_string()).unwrap(), p);
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }
}
