//! Fixed-capacity vertex sets backed by `u64` words.
//!
//! Pair-coverage checks reduce to row unions in an n×n bit matrix, so the
//! whole crate stores vertex and point sets in this form.

const WORD_BITS: usize = 64;

/// A set of vertices (or points) drawn from `[0, capacity)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    capacity: usize,
    words: Vec<u64>,
}

impl VertexSet {
    /// Empty set over `[0, capacity)`.
    pub fn empty(capacity: usize) -> Self {
        VertexSet {
            capacity,
            words: vec![0; capacity.div_ceil(WORD_BITS)],
        }
    }

    pub fn from_members(capacity: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut set = VertexSet::empty(capacity);
        for v in members {
            set.insert(v);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.capacity);
        self.words[v / WORD_BITS] & (1 << (v % WORD_BITS)) != 0
    }

    /// Inserts `v`; returns true if it was not already present.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.capacity, "member {v} out of range {}", self.capacity);
        let word = &mut self.words[v / WORD_BITS];
        let mask = 1 << (v % WORD_BITS);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.capacity);
        self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            std::iter::successors(
                (word != 0).then_some(word),
                |w| {
                    let w = w & (w - 1);
                    (w != 0).then_some(w)
                },
            )
            .map(move |w| i * WORD_BITS + w.trailing_zeros() as usize)
        })
    }

    /// Least member ≥ `from`, if any.
    pub fn next_member(&self, from: usize) -> Option<usize> {
        if from >= self.capacity {
            return None;
        }
        let mut idx = from / WORD_BITS;
        let mut word = self.words[idx] & (!0u64 << (from % WORD_BITS));
        loop {
            if word != 0 {
                return Some(idx * WORD_BITS + word.trailing_zeros() as usize);
            }
            idx += 1;
            if idx == self.words.len() {
                return None;
            }
            word = self.words[idx];
        }
    }

    /// Least element of `[from, capacity)` NOT in the set, if any.
    pub fn next_absent(&self, from: usize) -> Option<usize> {
        let mut v = from;
        while v < self.capacity {
            let word = !self.words[v / WORD_BITS] & (!0u64 << (v % WORD_BITS));
            if word != 0 {
                let cand = (v / WORD_BITS) * WORD_BITS + word.trailing_zeros() as usize;
                if cand < self.capacity {
                    return Some(cand);
                }
                return None;
            }
            v = (v / WORD_BITS + 1) * WORD_BITS;
        }
        None
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    /// Collects members, sizing capacity to the largest member + 1.
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let members: Vec<usize> = iter.into_iter().collect();
        let capacity = members.iter().max().map_or(0, |&m| m + 1);
        VertexSet::from_members(capacity, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = VertexSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(64));
        assert_eq!(s.len(), 3);
        assert!(s.contains(129));
        assert!(!s.contains(1));
        s.remove(64);
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn iter_ascending_across_words() {
        let s = VertexSet::from_members(200, [199, 3, 64, 65, 0]);
        assert_eq!(s.to_vec(), vec![0, 3, 64, 65, 199]);
    }

    #[test]
    fn next_member_and_absent() {
        let s = VertexSet::from_members(70, [2, 5, 69]);
        assert_eq!(s.next_member(0), Some(2));
        assert_eq!(s.next_member(3), Some(5));
        assert_eq!(s.next_member(6), Some(69));
        assert_eq!(s.next_member(70), None);
        assert_eq!(s.next_absent(2), Some(3));
        assert_eq!(s.next_absent(69), None);

        let full = VertexSet::from_members(65, 0..65);
        assert_eq!(full.next_absent(0), None);
    }

    #[test]
    fn union() {
        let mut a = VertexSet::from_members(10, [1, 2]);
        let b = VertexSet::from_members(10, [2, 7]);
        a.union_with(&b);
        assert_eq!(a.to_vec(), vec![1, 2, 7]);
    }

    #[test]
    fn empty_capacity_zero() {
        let s = VertexSet::empty(0);
        assert!(s.is_empty());
        assert_eq!(s.next_member(0), None);
        assert_eq!(s.next_absent(0), None);
    }
}
