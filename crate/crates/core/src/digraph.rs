//! Digraphs stored as per-vertex in-neighbor sets, with the mediated-property
//! decision procedure.
//!
//! A digraph is mediated if every pair of distinct vertices x, y lies together
//! in the closed in-neighborhood N⁻[z] of some vertex z (z = x or z = y is
//! allowed). The check materializes, for each z, all pairs inside N⁻[z] into
//! an n×n coverage bit matrix and then scans for the least uncovered pair, so
//! it runs in O(n · Δ⁻ · n/64) rather than a triple loop over vertex triples.

use crate::bitset::VertexSet;
use crate::{Error, Result};

/// Verdict of the mediated-property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MediatedVerdict {
    Mediated,
    /// Lexicographically least pair {x, y}, x < y, contained in no closed
    /// in-neighborhood.
    Uncovered(usize, usize),
}

impl MediatedVerdict {
    pub fn is_mediated(&self) -> bool {
        matches!(self, MediatedVerdict::Mediated)
    }
}

/// A digraph on vertices `[0, n)`. Arcs have set semantics and self-loops are
/// rejected. Values are immutable once built and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    in_nbrs: Vec<VertexSet>,
}

impl Digraph {
    /// Digraph with no arcs. `n = 0` is legal (and vacuously mediated).
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            in_nbrs: (0..n).map(|_| VertexSet::empty(n)).collect(),
        }
    }

    /// Builds from `(source, target)` arcs. Duplicate arcs collapse; range
    /// violations and self-loops are errors.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for &(from, to) in arcs {
            d.add_arc(from, to)?;
        }
        Ok(d)
    }

    /// Builds from explicit in-neighbor sets, validating range and the
    /// no-self-loop invariant.
    pub fn from_in_neighbors(n: usize, in_nbrs: Vec<Vec<usize>>) -> Result<Self> {
        if in_nbrs.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} in-neighbor sets, got {}",
                in_nbrs.len()
            )));
        }
        let mut d = Digraph::empty(n);
        for (v, nbrs) in in_nbrs.into_iter().enumerate() {
            for u in nbrs {
                d.add_arc(u, v)?;
            }
        }
        Ok(d)
    }

    /// Adds the arc `from → to`; returns false if it was already present.
    pub fn add_arc(&mut self, from: usize, to: usize) -> Result<bool> {
        if from >= self.n {
            return Err(Error::VertexOutOfRange { vertex: from, n: self.n });
        }
        if to >= self.n {
            return Err(Error::VertexOutOfRange { vertex: to, n: self.n });
        }
        if from == to {
            return Err(Error::SelfLoop(from));
        }
        Ok(self.in_nbrs[to].insert(from))
    }

    pub fn remove_arc(&mut self, from: usize, to: usize) {
        if to < self.n && from < self.n {
            self.in_nbrs[to].remove(from);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        from < self.n && to < self.n && self.in_nbrs[to].contains(from)
    }

    /// All arcs as `(source, target)`, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|to| self.in_nbrs[to].iter().map(move |from| (from, to)))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.in_nbrs[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_nbrs[v].len()
    }

    /// Maximum in-degree Δ⁻; 0 for digraphs with at most one vertex.
    pub fn max_in_degree(&self) -> usize {
        (0..self.n).map(|v| self.in_nbrs[v].len()).max().unwrap_or(0)
    }

    /// N⁻[v] = {v} ∪ N⁻(v).
    pub fn closed_in_neighborhood(&self, v: usize) -> Result<VertexSet> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut set = self.in_nbrs[v].clone();
        set.insert(v);
        Ok(set)
    }

    /// Decides the mediated property. On failure reports the lexicographically
    /// least pair covered by no closed in-neighborhood.
    pub fn is_mediated(&self) -> MediatedVerdict {
        let n = self.n;
        if n <= 1 {
            return MediatedVerdict::Mediated;
        }
        // coverage[a] bit b set ⇔ pair {a,b} lies in some N⁻[z]
        let mut coverage: Vec<VertexSet> = (0..n).map(|_| VertexSet::empty(n)).collect();
        for z in 0..n {
            let mut closed = self.in_nbrs[z].clone();
            closed.insert(z);
            for a in closed.iter() {
                coverage[a].union_with(&closed);
            }
        }
        for x in 0..n - 1 {
            if let Some(y) = coverage[x].next_absent(x + 1) {
                return MediatedVerdict::Uncovered(x, y);
            }
        }
        MediatedVerdict::Mediated
    }

    /// Σᵢ(d⁻ᵢ² + d⁻ᵢ) − n(n−1). Mediated digraphs satisfy ≥ 0, so a negative
    /// value is a fast certificate of non-mediatedness.
    pub fn degree_sum_slack(&self) -> i64 {
        let n = self.n as i64;
        let sum: i64 = (0..self.n)
            .map(|v| {
                let d = self.in_nbrs[v].len() as i64;
                d * d + d
            })
            .sum();
        sum - n * (n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Digraph {
        // 0→1→2→0
        Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn max_in_degree_trivial() {
        assert_eq!(Digraph::empty(1).max_in_degree(), 0);
        assert_eq!(Digraph::empty(0).max_in_degree(), 0);
        assert_eq!(three_cycle().max_in_degree(), 1);
    }

    #[test]
    fn closed_in_neighborhood_examples() {
        let d = three_cycle();
        assert_eq!(d.closed_in_neighborhood(1).unwrap().to_vec(), vec![0, 1]);

        let iso = Digraph::empty(4);
        assert_eq!(iso.closed_in_neighborhood(2).unwrap().to_vec(), vec![2]);

        let d = Digraph::from_arcs(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(d.closed_in_neighborhood(2).unwrap().to_vec(), vec![0, 1, 2]);

        assert!(matches!(
            three_cycle().closed_in_neighborhood(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn mediated_examples() {
        assert!(Digraph::empty(0).is_mediated().is_mediated());
        assert!(Digraph::empty(1).is_mediated().is_mediated());
        assert_eq!(
            Digraph::empty(2).is_mediated(),
            MediatedVerdict::Uncovered(0, 1)
        );
        assert!(three_cycle().is_mediated().is_mediated());
    }

    #[test]
    fn least_uncovered_pair_is_lexicographic() {
        // Arcs cover {0,1} (via N⁻[1]) but nothing else on 4 vertices.
        let d = Digraph::from_arcs(4, &[(0, 1)]).unwrap();
        assert_eq!(d.is_mediated(), MediatedVerdict::Uncovered(0, 2));
    }

    #[test]
    fn degree_sum_slack_examples() {
        // 4-cycle: each in-degree 1.
        let d = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(d.degree_sum_slack(), -4);
        assert!(!d.is_mediated().is_mediated());

        assert_eq!(three_cycle().degree_sum_slack(), 0);
        assert_eq!(Digraph::empty(1).degree_sum_slack(), 0);
    }

    #[test]
    fn arc_validation() {
        let mut d = Digraph::empty(3);
        assert!(matches!(d.add_arc(0, 0), Err(Error::SelfLoop(0))));
        assert!(matches!(
            d.add_arc(3, 0),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(d.add_arc(0, 1).unwrap());
        assert!(!d.add_arc(0, 1).unwrap()); // set semantics
        assert_eq!(d.arcs(), vec![(0, 1)]);
    }

    #[test]
    fn tournament_is_mediated() {
        // Transitive tournament on 5 vertices: arc i→j for i<j.
        let mut d = Digraph::empty(5);
        for i in 0..5 {
            for j in i + 1..5 {
                d.add_arc(i, j).unwrap();
            }
        }
        assert!(d.is_mediated().is_mediated());
        assert_eq!(d.max_in_degree(), 4);
    }
}
