//! Undoing the folding of a pruned tree: greedy separators and recovered labels.

use super::InverseError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Positions of the leftmost greedy monotone subsequence of `l`: take `l[0]`,
/// then every later entry that beats the last one taken.
pub fn greedy_subsequence(l: &[usize], dir: Direction) -> Vec<usize> {
    let mut out = Vec::new();
    let mut last: Option<usize> = None;
    for (i, &x) in l.iter().enumerate() {
        let take = match (last, dir) {
            (None, _) => true,
            (Some(m), Direction::Increasing) => x > m,
            (Some(m), Direction::Decreasing) => x < m,
        };
        if take {
            out.push(i);
            last = Some(x);
        }
    }
    out
}

/// A folded star opened back up into the tree it came from.
///
/// Every black vertex of that tree has exactly one child, so it is enough to
/// remember, for each black, the black two levels above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldedTree {
    /// Black labels in folded order.
    pub order: Vec<usize>,
    /// Label of the edge joining each black to the folded root.
    pub edge_labels: Vec<usize>,
    /// Label of the root's parental edge.
    pub parental: usize,
    /// `up[i]`: position of the grandparent black of `order[i]`; `None` under the root.
    pub up: Vec<Option<usize>>,
}

impl UnfoldedTree {
    pub fn position(&self, label: usize) -> Option<usize> {
        self.order.iter().position(|&x| x == label)
    }

    /// Blacks hanging directly below the root white.
    pub fn root_children(&self) -> Vec<usize> {
        (0..self.order.len()).filter(|&i| self.up[i].is_none()).map(|i| self.order[i]).collect()
    }

    /// Blacks whose grandparent is `label`.
    pub fn grandchildren(&self, label: usize) -> Vec<usize> {
        match self.position(label) {
            Some(p) => (0..self.order.len()).filter(|&i| self.up[i] == Some(p)).map(|i| self.order[i]).collect(),
            None => Vec::new(),
        }
    }

    /// Label of the edge from `order[i]` to its parent white before folding.
    ///
    /// That white's cluster label sits on its own parental edge, which after
    /// folding is the edge of the grandparent black (or the root's parental edge).
    pub fn parent_edge_label(&self, i: usize) -> usize {
        match self.up[i] {
            Some(g) => self.edge_labels[g],
            None => self.parental,
        }
    }
}

/// Recursively splits `order` by greedy separators.
pub fn unfold(order: &[usize], edge_labels: &[usize], parental: usize, dir: Direction) -> Result<UnfoldedTree, InverseError> {
    if order.len() != edge_labels.len() {
        return Err(InverseError::OutOfImage("folded list and its labels differ in length".into()));
    }
    let mut seen = order.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(InverseError::OutOfImage("repeated black in a folded list".into()));
    }
    let mut up = vec![None; order.len()];
    split(order, 0, None, dir, &mut up);
    Ok(UnfoldedTree { order: order.to_vec(), edge_labels: edge_labels.to_vec(), parental, up })
}

fn split(list: &[usize], offset: usize, parent: Option<usize>, dir: Direction, up: &mut [Option<usize>]) {
    let sel = greedy_subsequence(list, dir);
    for (n, &i) in sel.iter().enumerate() {
        up[offset + i] = parent;
        let end = sel.get(n + 1).copied().unwrap_or(list.len());
        split(&list[i + 1..end], offset + i + 1, Some(offset + i), dir, up);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: [usize; 20] = [14, 2, 11, 18, 8, 4, 6, 7, 10, 12, 3, 5, 9, 20, 21, 13, 16, 30, 15, 17];

    #[test]
    fn greedy_on_folded_example() {
        let sel: Vec<usize> = greedy_subsequence(&L, Direction::Increasing).iter().map(|&i| L[i]).collect();
        assert_eq!(sel, vec![14, 18, 20, 21, 30]);
    }

    #[test]
    fn greedy_edge_cases() {
        assert_eq!(greedy_subsequence(&[5], Direction::Increasing), vec![0]);
        assert_eq!(greedy_subsequence(&[5], Direction::Decreasing), vec![0]);
        assert_eq!(greedy_subsequence(&[9, 7, 4, 1], Direction::Increasing), vec![0]);
        assert_eq!(greedy_subsequence(&[9, 7, 8, 4, 1], Direction::Decreasing), vec![0, 1, 3, 4]);
        assert!(greedy_subsequence(&[], Direction::Increasing).is_empty());
    }

    #[test]
    fn unfolding_recovers_levels() {
        let labels: Vec<usize> = (1..=L.len()).collect();
        let u = unfold(&L, &labels, 99, Direction::Increasing).unwrap();
        assert_eq!(u.root_children(), vec![14, 18, 20, 21, 30]);
        assert_eq!(u.grandchildren(18), vec![8, 10, 12]);
        assert_eq!(u.grandchildren(14), vec![2, 11]);
        assert!(u.grandchildren(2).is_empty());
        assert!(u.grandchildren(20).is_empty());
        assert_eq!(u.grandchildren(21), vec![13, 16]);
        assert_eq!(u.grandchildren(30), vec![15, 17]);
        let p8 = u.position(8).unwrap();
        assert_eq!(u.parent_edge_label(p8), labels[u.position(18).unwrap()]);
        assert_eq!(u.parent_edge_label(0), 99);
    }

    #[test]
    fn monotone_blocks_are_bounded() {
        let sel = greedy_subsequence(&L, Direction::Increasing);
        for (n, &i) in sel.iter().enumerate() {
            let end = sel.get(n + 1).copied().unwrap_or(L.len());
            assert!(L[i + 1..end].iter().all(|&x| x < L[i]));
        }
    }

    #[test]
    fn repeated_entries_are_rejected() {
        assert!(unfold(&[3, 3], &[1, 2], 5, Direction::Increasing).is_err());
    }
}
