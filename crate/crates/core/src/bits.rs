//! Small fixed-width bit vectors and lexicographic subset enumeration.

use alloc::vec;
use alloc::vec::Vec;

/// A fixed-length bit vector backed by 64-bit words. Bit 0 is the least
/// significant bit of word 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.insert(i);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of bits set in `self` but not in `other`.
    pub fn count_minus(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.len
    }

    /// Index of the lowest bit that is not set.
    pub fn first_zero(&self) -> Option<usize> {
        for (w, word) in self.words.iter().enumerate() {
            if *word != u64::MAX {
                let i = w * 64 + (!word).trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The `width`-bit field starting at bit `offset`, least significant bit
    /// first. `width` must be at most 64.
    pub fn field(&self, offset: usize, width: usize) -> u64 {
        let mut value = 0u64;
        for b in 0..width {
            if self.contains(offset + b) {
                value |= 1 << b;
            }
        }
        value
    }
}

/// Visit every `k`-subset of `0..n` in lexicographic order. The visitor
/// returns `false` to stop early; the function returns whether the whole
/// enumeration ran.
pub fn for_each_combination<F>(n: usize, k: usize, mut visit: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Visit every tuple in `0..radix` of the given length, first coordinate
/// most significant.
pub fn for_each_tuple<F>(radix: usize, len: usize, mut visit: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if radix == 0 && len > 0 {
        return true;
    }
    let mut t = vec![0usize; len];
    loop {
        if !visit(&t) {
            return false;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < radix {
                break;
            }
            t[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_combination(5, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn tuples_count() {
        let mut count = 0;
        for_each_tuple(3, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 27);
        let mut last = Vec::new();
        for_each_tuple(2, 2, |t| {
            last = t.to_vec();
            true
        });
        assert_eq!(last, vec![1, 1]);
    }

    #[test]
    fn bitset_basics() {
        let mut s = BitSet::new(70);
        s.insert(0);
        s.insert(65);
        assert!(s.contains(65) && !s.contains(64));
        assert_eq!(s.count_ones(), 2);
        assert_eq!(s.first_zero(), Some(1));
        assert!(BitSet::full(70).is_full());
        assert_eq!(BitSet::full(64).first_zero(), None);
        let mut f = BitSet::new(8);
        f.insert(2);
        f.insert(3);
        assert_eq!(f.field(2, 2), 3);
        assert_eq!(f.field(3, 2), 1);
    }
}
