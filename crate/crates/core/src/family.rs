//! Block families on a point set `[0, n)` and the family-side view of the
//! mediated property: symmetric + 2-covering + has an SDR.
//!
//! Blocks are kept both as sorted point lists (canonical text form for
//! certificates) and as bitsets (pair-coverage checks). Block order is
//! significant because SDR representatives are indexed by block; repeated
//! blocks are permitted.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::{Error, Result};

/// Outcome of the 2-covering check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverVerdict {
    Covered,
    /// Lexicographically least pair {a, b}, a < b, contained in no block.
    Uncovered(usize, usize),
}

impl CoverVerdict {
    pub fn is_covered(&self) -> bool {
        matches!(self, CoverVerdict::Covered)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Block {
    points: Vec<usize>, // sorted, deduplicated
    set: VertexSet,
}

/// An ordered list of blocks (point subsets) over `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFamily {
    n: usize,
    blocks: Vec<Block>,
}

impl BlockFamily {
    /// Builds a family, validating that every point lies in `[0, n)`.
    /// Duplicate points within a block collapse.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = blocks
            .into_iter()
            .map(|points| {
                for &p in &points {
                    if p >= n {
                        return Err(Error::PointOutOfRange { point: p, n });
                    }
                }
                let set = VertexSet::from_members(n, points);
                Ok(Block { points: set.to_vec(), set })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockFamily { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Points of block `i`, sorted ascending.
    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i].points
    }

    pub fn block_set(&self, i: usize) -> &VertexSet {
        &self.blocks[i].set
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(|b| b.points.as_slice())
    }

    /// Maximum block cardinality; 0 for an empty family.
    pub fn mcard(&self) -> usize {
        self.blocks.iter().map(|b| b.points.len()).max().unwrap_or(0)
    }

    /// Number of blocks containing point `p` (the replication number d(p)).
    pub fn point_degree(&self, p: usize) -> usize {
        self.blocks.iter().filter(|b| b.set.contains(p)).count()
    }

    /// A family is symmetric if the block count equals the point count.
    pub fn is_symmetric(&self) -> bool {
        self.blocks.len() == self.n
    }

    /// Checks that every unordered pair of distinct points lies in some block.
    pub fn is_two_covering(&self) -> CoverVerdict {
        if self.n <= 1 {
            return CoverVerdict::Covered;
        }
        let mut coverage: Vec<VertexSet> =
            (0..self.n).map(|_| VertexSet::empty(self.n)).collect();
        for block in &self.blocks {
            for a in block.set.iter() {
                coverage[a].union_with(&block.set);
            }
        }
        for a in 0..self.n - 1 {
            if let Some(b) = coverage[a].next_absent(a + 1) {
                return CoverVerdict::Uncovered(a, b);
            }
        }
        CoverVerdict::Covered
    }

    /// Finds a system of distinct representatives: one point per block, all
    /// distinct, each belonging to its block. Computed as a maximum matching
    /// in the block–point incidence graph via augmenting paths with
    /// deterministic vertex order; an SDR exists iff the matching is full.
    pub fn find_sdr(&self) -> Option<Vec<usize>> {
        let m = self.blocks.len();
        let mut point_to_block: Vec<Option<usize>> = vec![None; self.n];
        let mut visited = vec![false; m];

        fn augment(
            family: &BlockFamily,
            block: usize,
            point_to_block: &mut Vec<Option<usize>>,
            visited: &mut Vec<bool>,
        ) -> bool {
            if visited[block] {
                return false;
            }
            visited[block] = true;
            for p in family.blocks[block].set.iter() {
                match point_to_block[p] {
                    None => {
                        point_to_block[p] = Some(block);
                        return true;
                    }
                    Some(other) => {
                        if augment(family, other, point_to_block, visited) {
                            point_to_block[p] = Some(block);
                            return true;
                        }
                    }
                }
            }
            false
        }

        for block in 0..m {
            visited.iter_mut().for_each(|v| *v = false);
            if !augment(self, block, &mut point_to_block, &mut visited) {
                return None;
            }
        }

        let mut sdr = vec![usize::MAX; m];
        for (point, block) in point_to_block.iter().enumerate() {
            if let Some(b) = *block {
                sdr[b] = point;
            }
        }
        debug_assert!(sdr.iter().all(|&p| p != usize::MAX));
        Some(sdr)
    }

    /// Symmetric + 2-covering + has an SDR.
    pub fn is_mediated_family(&self) -> bool {
        self.is_symmetric() && self.is_two_covering().is_covered() && self.find_sdr().is_some()
    }

    /// True iff this is a symmetric (n, k, λ)-design: n blocks, all of size
    /// `k`, every distinct pair of points in exactly `lambda` blocks.
    ///
    /// Caller contract: `lambda ≥ 1` and `n > k ≥ 2`.
    pub fn check_symmetric_design(&self, k: usize, lambda: usize) -> bool {
        assert!(lambda >= 1, "lambda must be at least 1");
        assert!(k >= 2 && self.n > k, "need n > k >= 2");
        if self.blocks.len() != self.n {
            return false;
        }
        if self.blocks.iter().any(|b| b.points.len() != k) {
            return false;
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                let count = self
                    .blocks
                    .iter()
                    .filter(|blk| blk.set.contains(a) && blk.set.contains(b))
                    .count();
                if count != lambda {
                    return false;
                }
            }
        }
        true
    }

    /// The family {N⁻[0], …, N⁻[n−1]} of closed in-neighborhoods. Symmetric by
    /// construction, has the identity SDR, and mcard = Δ⁻ + 1 (for n ≥ 1).
    pub fn from_digraph(d: &Digraph) -> BlockFamily {
        let n = d.n();
        let blocks = (0..n)
            .map(|v| {
                let mut set = d.in_neighbors(v).clone();
                set.insert(v);
                Block { points: set.to_vec(), set }
            })
            .collect();
        BlockFamily { n, blocks }
    }

    /// Builds a digraph with N⁻[i] = Xᵢ after relabeling points by an SDR.
    ///
    /// The family must be symmetric and admit an SDR (x₀, …, x_{n−1}); points
    /// are relabeled by the permutation x_i ↦ i so that every block contains
    /// its own index, then in_nbrs[i] = Xᵢ \ {i}. A 2-covering input yields a
    /// mediated digraph with Δ⁻ ≤ mcard − 1.
    pub fn to_digraph(&self) -> Result<Digraph> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric { blocks: self.blocks.len(), n: self.n });
        }
        let sdr = self.find_sdr().ok_or(Error::NoSdr)?;
        // relabel[old_point] = new label; SDR reps are a permutation of the
        // points because the family is symmetric.
        let mut relabel = vec![usize::MAX; self.n];
        for (block, &rep) in sdr.iter().enumerate() {
            relabel[rep] = block;
        }
        debug_assert!(relabel.iter().all(|&v| v != usize::MAX));

        let mut d = Digraph::empty(self.n);
        for (block, blk) in self.blocks.iter().enumerate() {
            for p in blk.set.iter() {
                let label = relabel[p];
                if label != block {
                    d.add_arc(label, block)?;
                }
            }
        }
        Ok(d)
    }
}

/// Parameters of an (n, k, λ)-design with b blocks and replication number r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub b: usize,
    pub r: usize,
}

impl DesignParams {
    /// The two standard counting identities a valid design satisfies:
    /// b·k·(k−1) = λ·n·(n−1) and r·(k−1) = λ·(b−1).
    pub fn equations_hold(&self) -> bool {
        self.b * self.k * (self.k - 1) == self.lambda * self.n * (self.n - 1)
            && self.r * (self.k - 1) == self.lambda * (self.b - 1)
    }

    /// Parameters of a symmetric design, where b = n and r = k.
    pub fn symmetric(n: usize, k: usize, lambda: usize) -> DesignParams {
        DesignParams { n, k, lambda, b: n, r: k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::MediatedVerdict;

    fn triangle_family() -> BlockFamily {
        BlockFamily::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn mcard_examples() {
        let f = BlockFamily::new(3, vec![vec![0, 1, 2], vec![0]]).unwrap();
        assert_eq!(f.mcard(), 3);
        let empty = BlockFamily::new(0, vec![]).unwrap();
        assert_eq!(empty.mcard(), 0);
    }

    #[test]
    fn symmetric_examples() {
        assert!(triangle_family().is_symmetric());
        let f = BlockFamily::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(!f.is_symmetric());
    }

    #[test]
    fn two_covering_examples() {
        assert!(triangle_family().is_two_covering().is_covered());
        let f = BlockFamily::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(f.is_two_covering(), CoverVerdict::Uncovered(0, 2));
    }

    #[test]
    fn sdr_examples() {
        let f = BlockFamily::new(1, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(f.find_sdr(), None);

        let f = triangle_family();
        let sdr = f.find_sdr().unwrap();
        // self-validating: membership and distinctness
        let mut seen = vec![false; 3];
        for (i, &p) in sdr.iter().enumerate() {
            assert!(f.block(i).contains(&p));
            assert!(!seen[p]);
            seen[p] = true;
        }
    }

    #[test]
    fn mediated_family_examples() {
        let f = BlockFamily::new(3, vec![vec![0, 1, 2], vec![0], vec![1]]).unwrap();
        assert!(f.is_mediated_family());

        let f = BlockFamily::new(3, vec![vec![0, 1], vec![0, 1], vec![0, 1]]).unwrap();
        assert!(!f.is_mediated_family());
    }

    #[test]
    fn symmetric_design_trivial() {
        assert!(triangle_family().check_symmetric_design(2, 1));
        let f = BlockFamily::new(3, vec![vec![0, 1], vec![1, 2], vec![1, 2]]).unwrap();
        assert!(!f.check_symmetric_design(2, 1));
    }

    #[test]
    fn design_params_identities() {
        let fano = DesignParams::symmetric(7, 3, 1);
        assert!(fano.equations_hold());
        let bad = DesignParams { n: 7, k: 3, lambda: 1, b: 6, r: 3 };
        assert!(!bad.equations_hold());
    }

    #[test]
    fn family_from_digraph_examples() {
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = BlockFamily::from_digraph(&d);
        assert_eq!(f.block(0), &[0, 2]);
        assert_eq!(f.block(1), &[0, 1]);
        assert_eq!(f.block(2), &[1, 2]);
        assert!(f.is_mediated_family());
        assert_eq!(f.mcard(), d.max_in_degree() + 1);

        let single = BlockFamily::from_digraph(&Digraph::empty(1));
        assert_eq!(single.block(0), &[0]);
    }

    #[test]
    fn digraph_from_family_examples() {
        let d = triangle_family().to_digraph().unwrap();
        assert!(d.is_mediated().is_mediated());
        assert_eq!(d.max_in_degree(), 1);

        // Round trip from a digraph uses the identity SDR implicitly: the
        // verdict and Δ⁻ are preserved.
        let orig = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let rt = BlockFamily::from_digraph(&orig).to_digraph().unwrap();
        assert_eq!(rt.is_mediated(), MediatedVerdict::Mediated);
        assert_eq!(rt.max_in_degree(), orig.max_in_degree());
    }

    #[test]
    fn digraph_from_family_errors() {
        let not_sym = BlockFamily::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(not_sym.to_digraph(), Err(Error::NotSymmetric { .. })));

        let no_sdr =
            BlockFamily::new(3, vec![vec![0], vec![0], vec![0, 1]]).unwrap();
        assert!(matches!(no_sdr.to_digraph(), Err(Error::NoSdr)));
    }

    #[test]
    fn out_of_range_point_rejected() {
        assert!(matches!(
            BlockFamily::new(3, vec![vec![0, 3]]),
            Err(Error::PointOutOfRange { point: 3, n: 3 })
        ));
    }
}
