//! Lexicographic indexing of `A^{×k}` and formal sums of tuples.

/// Signed formal sum of tuples, repeated tuples allowed.
pub type FormalSum = Vec<(Vec<usize>, i64)>;

/// The set `A^{×k}` for `|A| = order`, indexed lexicographically with the
/// first coordinate most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleSpace {
    pub order: usize,
    pub degree: usize,
}

impl TupleSpace {
    pub fn new(order: usize, degree: usize) -> Self {
        TupleSpace { order, degree }
    }

    pub fn len(&self) -> usize {
        self.order.pow(self.degree as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple.iter().fold(0, |acc, &a| acc * self.order + a)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for slot in out.iter_mut().rev() {
            *slot = index % self.order;
            index /= self.order;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(|i| self.tuple(i))
    }

    /// Sparse column `(index, coefficient)` for a formal sum, merged and with
    /// cancelled terms removed.
    pub fn linearize(&self, sum: &FormalSum) -> Vec<(usize, i64)> {
        let mut entries: Vec<(usize, i64)> = sum.iter().map(|(t, c)| (self.index(t), *c)).collect();
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|e| e.1 != 0);
        merged
    }
}

/// Whether some coordinate equals `zero`.
pub fn is_degenerate(tuple: &[usize], zero: usize) -> bool {
    tuple.contains(&zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let s = TupleSpace::new(3, 2);
        assert_eq!(s.len(), 9);
        assert_eq!(s.index(&[1, 2]), 5);
        assert_eq!(s.tuple(5), vec![1, 2]);
        let all: Vec<_> = s.iter().collect();
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[8], vec![2, 2]);
        assert_eq!(TupleSpace::new(4, 0).len(), 1);
        assert_eq!(TupleSpace::new(4, 0).tuple(0), Vec::<usize>::new());
    }

    #[test]
    fn linearize_merges() {
        let s = TupleSpace::new(2, 2);
        let sum = vec![(vec![0, 1], 1), (vec![1, 0], -1), (vec![0, 1], 2), (vec![1, 0], 1)];
        assert_eq!(s.linearize(&sum), vec![(1, 3)]);
    }
}
