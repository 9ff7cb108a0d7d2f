//! Upper-bound witnesses: the plane-extension construction and cyclic
//! difference-cover developments, plus an exhaustive minimal-cover search.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::VertexSet;
use crate::family::BlockFamily;
use crate::galois::{projective_plane, ProjectivePlane};
use crate::{Error, Result};

/// How the extension picks the mq−t plane points that receive primed copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZChoice {
    /// First mq−t points of (B₁ ∪ … ∪ B_m) \ {x} in canonical order: the
    /// points of B₁ \ {x} first, then B₂ \ {x}, and so on.
    #[default]
    Canonical,
    /// Uniformly random legal subset from a seeded generator. Any legal
    /// choice yields a mediated family; this exists for property testing.
    Seeded(u64),
}

/// The bundle produced by [`extend_plane`]: a plane of order q grown by m new
/// points and mq−t primed copies into a mediated family on
/// n = q²+q+1+m(q+1)−t points.
///
/// Point indices: the plane points keep their canonical indices `[0, N)`,
/// the new points W are `[N, N+m)`, and the primed copies Z′ follow in the
/// order of `z_points`.
#[derive(Debug, Clone)]
pub struct PlaneExtension {
    pub q: usize,
    pub m: usize,
    pub t: usize,
    /// Index of the apex point x (canonical point 0 of the plane).
    pub apex: usize,
    /// The q+1 line indices through the apex, in canonical line order.
    pub lines_through_apex: Vec<usize>,
    /// The m new points W.
    pub new_points: Vec<usize>,
    /// The chosen plane points Z, |Z| = mq−t.
    pub z_points: Vec<usize>,
    /// Primed copies, aligned with `z_points`.
    pub z_primes: Vec<usize>,
    /// tau[i]: position in `lines_through_apex` of the unique line through
    /// the apex containing `z_points[i]`.
    pub tau: Vec<usize>,
    /// The resulting family: n blocks on n points, mcard ≤ q+1+m.
    pub family: BlockFamily,
}

/// Runs the plane-extension construction for a prime power q,
/// 1 ≤ m ≤ q+1 and 0 ≤ t ≤ q, witnessing μ(n) ≤ q+m at
/// n = q²+q+1+m(q+1)−t.
pub fn extend_plane(q: usize, m: usize, t: usize) -> Result<PlaneExtension> {
    extend_plane_with(q, m, t, ZChoice::Canonical)
}

pub fn extend_plane_with(q: usize, m: usize, t: usize, choice: ZChoice) -> Result<PlaneExtension> {
    if !(1..=q + 1).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "m = {m} out of range [1, {}]",
            q + 1
        )));
    }
    if t > q {
        return Err(Error::InvalidArgument(format!("t = {t} out of range [0, {q}]")));
    }
    let plane = projective_plane(q)?;
    let plane_n = plane.num_points();
    let apex = 0usize;
    let lines_through_apex = plane.lines_through(apex);
    debug_assert_eq!(lines_through_apex.len(), q + 1);

    // Candidate pool for Z in canonical order: B₁ \ {x}, then B₂ \ {x}, …
    // Lines through x pairwise intersect only in x, so the pool has mq
    // distinct points.
    let mut pool: Vec<usize> = Vec::with_capacity(m * q);
    for &line in lines_through_apex.iter().take(m) {
        pool.extend(plane.lines().block(line).iter().copied().filter(|&p| p != apex));
    }
    debug_assert_eq!(pool.len(), m * q);
    let z_count = m * q - t;
    let z_points: Vec<usize> = match choice {
        ZChoice::Canonical => pool[..z_count].to_vec(),
        ZChoice::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = pool.clone();
            picked.shuffle(&mut rng);
            picked.truncate(z_count);
            picked.sort_unstable();
            picked
        }
    };

    let n = plane_n + m + z_count;
    let new_points: Vec<usize> = (plane_n..plane_n + m).collect();
    let z_primes: Vec<usize> = (plane_n + m..plane_n + m + z_count).collect();

    // prime_of[p] = primed index for plane point p, if p ∈ Z
    let mut prime_of: Vec<Option<usize>> = vec![None; plane_n];
    for (i, &z) in z_points.iter().enumerate() {
        prime_of[z] = Some(z_primes[i]);
    }
    // tau: unique line through the apex containing z (λ = 1 makes it unique)
    let tau: Vec<usize> = z_points
        .iter()
        .map(|&z| {
            lines_through_apex
                .iter()
                .position(|&l| plane.lines().block_set(l).contains(z))
                .expect("every plane point lies on a line through the apex")
        })
        .collect();

    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n);
    let apex_line_set: VertexSet =
        VertexSet::from_members(plane.lines().num_blocks(), lines_through_apex.iter().copied());

    // Plane blocks: lines through x gain W; other lines gain the primed copy
    // of each of their Z-points.
    for line in 0..plane.lines().num_blocks() {
        let mut block: Vec<usize> = plane.lines().block(line).to_vec();
        if apex_line_set.contains(line) {
            block.extend(&new_points);
        } else {
            for &p in plane.lines().block(line) {
                if let Some(zp) = prime_of[p] {
                    block.push(zp);
                }
            }
        }
        blocks.push(block);
    }

    // Q_i = W ∪ {z′ : z ∈ Z ∩ B_i}, for the first m apex lines.
    for i in 0..m {
        let mut block = new_points.clone();
        for (zi, &line_pos) in tau.iter().enumerate() {
            if line_pos == i {
                block.push(z_primes[zi]);
            }
        }
        blocks.push(block);
    }

    // R_z = (B_{τ(z)} \ {z}) ∪ {z′}, one per z ∈ Z.
    for (zi, &z) in z_points.iter().enumerate() {
        let line = lines_through_apex[tau[zi]];
        let mut block: Vec<usize> = plane
            .lines()
            .block(line)
            .iter()
            .copied()
            .filter(|&p| p != z)
            .collect();
        block.push(z_primes[zi]);
        blocks.push(block);
    }

    debug_assert_eq!(blocks.len(), n);
    let family = BlockFamily::new(n, blocks)?;
    debug_assert!(family.find_sdr().is_some());
    Ok(PlaneExtension {
        q,
        m,
        t,
        apex,
        lines_through_apex,
        new_points,
        z_points,
        z_primes,
        tau,
        family,
    })
}

/// Re-exported basis plane, handy for callers that need both the extension
/// and the underlying plane geometry.
pub fn base_plane(q: usize) -> Result<ProjectivePlane> {
    projective_plane(q)
}

/// True iff every residue of Z_n occurs among the pairwise differences
/// dᵢ − dⱼ (mod n) (residue 0 arises from i = j).
pub fn is_difference_cover(elems: &[usize], n: usize) -> bool {
    if n == 0 || elems.iter().any(|&d| d >= n) {
        return false;
    }
    let mut hit = vec![false; n];
    hit[0] = !elems.is_empty();
    for &a in elems {
        for &b in elems {
            hit[(a + n - b) % n] = true;
        }
    }
    hit.iter().all(|&h| h)
}

/// A validated cyclic difference cover D ⊆ Z_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceCover {
    n: usize,
    elems: Vec<usize>, // sorted
}

impl DifferenceCover {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Result<DifferenceCover> {
        elems.sort_unstable();
        elems.dedup();
        if !is_difference_cover(&elems, n) {
            return Err(Error::NotDifferenceCover(format!("{elems:?} mod {n}")));
        }
        Ok(DifferenceCover { n, elems })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    /// The development dev D = {c + D : c ∈ Z_n}: a symmetric 2-covering
    /// family with an SDR, so μ(n) ≤ |D| − 1.
    pub fn develop(&self) -> BlockFamily {
        let blocks: Vec<Vec<usize>> = (0..self.n)
            .map(|c| self.elems.iter().map(|&d| (c + d) % self.n).collect())
            .collect();
        BlockFamily::new(self.n, blocks).expect("development points are reduced mod n")
    }
}

/// Search budget: the default cap ⌈√(1.5 n)⌉ + 6 on k is a proven upper
/// bound on k(n), so the exhaustive search cannot miss the minimum.
pub fn default_k_budget(n: usize) -> usize {
    // ceil(sqrt(1.5 n)) via integer sqrt of 3n/2 rounded up
    let target = (3 * n).div_ceil(2);
    let mut r = integer_sqrt(target);
    if r * r < target {
        r += 1;
    }
    r + 6
}

pub(crate) fn integer_sqrt(v: usize) -> usize {
    if v < 2 {
        return v;
    }
    let mut x = v;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + v / x) / 2;
    }
    x
}

/// Finds a minimum-size cyclic n-difference cover by exhaustive
/// branch-and-bound over canonical forms, trying k = 1, 2, … up to the
/// budget. Returns `None` when the budget is exhausted.
///
/// Canonical form: residue 1 must arise as a difference, so every cover has
/// two cyclically adjacent elements at distance 1 and some rotation contains
/// {0, 1}; the search fixes those two elements and grows the rest in
/// increasing order. Reflection about the fixed pair (x ↦ 1−x) is broken by
/// requiring d_k ≤ n+1−d₃.
///
/// Pruning works on negation classes {r, n−r}: an unordered pair of elements
/// covers exactly one of the ⌊n/2⌋ classes, so a size-k cover has
/// C(k,2) − ⌊n/2⌋ pair-slots to waste; a partial choice whose duplicated
/// classes exceed that cannot complete. Branches whose least (or greatest)
/// uncovered class is out of reach of every remaining element placement are
/// cut as well. The first cover found is the lexicographically least
/// canonical witness, independent of thread count.
pub fn min_difference_cover(n: usize, k_budget: Option<usize>) -> Option<DifferenceCover> {
    if n == 0 {
        return None;
    }
    let budget = k_budget.unwrap_or_else(|| default_k_budget(n));
    for k in 1..=budget.min(n) {
        if k * (k - 1) < n - 1 {
            continue; // not enough difference slots
        }
        if let Some(elems) = search_cover(n, k) {
            return Some(DifferenceCover { n, elems });
        }
    }
    None
}

/// Exhaustive decision at one k. The mask path handles every n the effort
/// tiers reach; the array path has no modulus limit and doubles as an
/// independent implementation for cross-checking.
pub(crate) fn search_cover(n: usize, k: usize) -> Option<Vec<usize>> {
    if n <= 255 {
        MaskSearch::new(n, k).run()
    } else {
        CoverSearch::new(n, k).run()
    }
}

/// Bitmask-based variant of [`CoverSearch`] for n ≤ 255 (so every negation
/// class fits in a u128). Covered classes travel down the stack by value,
/// which removes all backtracking bookkeeping from the hot loop.
struct MaskSearch {
    n: usize,
    k: usize,
    slack: usize,
    /// bits 1..=num_classes
    full: u128,
    elems: Vec<usize>,
}

impl MaskSearch {
    fn new(n: usize, k: usize) -> MaskSearch {
        let num_classes = n / 2;
        let pairs = k * (k - 1) / 2;
        MaskSearch {
            n,
            k,
            slack: pairs - num_classes,
            full: if num_classes == 0 { 0 } else { (2u128 << num_classes) - 2 },
            elems: Vec::with_capacity(k),
        }
    }

    #[inline]
    fn class_bit(&self, diff: usize) -> u128 {
        1u128 << diff.min(self.n - diff)
    }

    fn run(self) -> Option<Vec<usize>> {
        if self.k == 1 {
            return (self.n == 1).then(|| vec![0]);
        }
        if self.n == 1 {
            return None; // k = 1 already covers it; larger k is not minimal
        }
        let covered = self.class_bit(1) & self.full;
        if self.k == 2 {
            let mut probe = self;
            probe.elems.push(0);
            probe.elems.push(1);
            return probe.dfs(covered, 0).then_some(probe.elems);
        }
        // Top-level split on d₃, explored concurrently. `find_first` keeps
        // the result identical to the sequential left-to-right scan.
        let template = &self;
        (2..self.n)
            .into_par_iter()
            .map(|d3| {
                let mut branch = MaskSearch {
                    n: template.n,
                    k: template.k,
                    slack: template.slack,
                    full: template.full,
                    elems: Vec::with_capacity(template.k),
                };
                branch.elems.push(0);
                branch.elems.push(1);
                let mask = branch.class_bit(d3) | branch.class_bit(d3 - 1);
                let gain = (mask & !covered).count_ones() as usize;
                let waste = 2 - gain;
                if waste > branch.slack {
                    return None;
                }
                branch.elems.push(d3);
                branch.dfs(covered | mask, waste).then_some(branch.elems)
            })
            .find_first(|r| r.is_some())
            .flatten()
    }

    fn dfs(&mut self, covered: u128, waste: usize) -> bool {
        if self.elems.len() == self.k {
            return covered == self.full;
        }
        let last = *self.elems.last().unwrap();
        // reflection break: after d₃ is placed, elements stay ≤ n+1−d₃
        let limit = if self.elems.len() >= 3 {
            (self.n + 1 - self.elems[2]).min(self.n - 1)
        } else {
            self.n - 1
        };
        let missing = !covered & self.full;
        if missing != 0 {
            let lo = missing.trailing_zeros() as usize;
            let hi = 127 - missing.leading_zeros() as usize;
            if !self.class_reachable(lo, last, limit)
                || (hi != lo && !self.class_reachable(hi, last, limit))
            {
                return false;
            }
        }
        for d in last + 1..=limit {
            let mut mask = 0u128;
            for &e in &self.elems {
                mask |= self.class_bit(d - e);
            }
            let gain = (mask & !covered).count_ones() as usize;
            let new_waste = waste + self.elems.len() - gain;
            if new_waste > self.slack {
                continue;
            }
            self.elems.push(d);
            if self.dfs(covered | mask, new_waste) {
                return true;
            }
            self.elems.pop();
        }
        false
    }

    fn class_reachable(&self, class: usize, last: usize, limit: usize) -> bool {
        let span = limit.saturating_sub(last + 1);
        for diff in [class, self.n - class] {
            if diff <= span {
                return true;
            }
            for &e in &self.elems {
                let b = e + diff;
                if b > last && b <= limit {
                    return true;
                }
            }
        }
        false
    }
}

struct CoverSearch {
    n: usize,
    k: usize,
    num_classes: usize,
    slack: usize,
    /// hit[c]: number of element pairs currently covering class c (index 0 unused).
    hit: Vec<u32>,
    elems: Vec<usize>,
}

impl CoverSearch {
    fn new(n: usize, k: usize) -> CoverSearch {
        let num_classes = n / 2;
        let pairs = k * (k - 1) / 2;
        CoverSearch {
            n,
            k,
            num_classes,
            slack: pairs - num_classes,
            hit: vec![0; num_classes + 1],
            elems: Vec::with_capacity(k),
        }
    }

    #[inline]
    fn class_of(&self, diff: usize) -> usize {
        diff.min(self.n - diff)
    }

    fn run(mut self) -> Option<Vec<usize>> {
        if self.k == 1 {
            return (self.n == 1).then(|| vec![0]);
        }
        if self.n == 1 {
            return None; // k = 1 already covers it; larger k is not minimal
        }
        self.elems.push(0);
        self.elems.push(1);
        self.hit[1] = 1;
        let covered = 1.min(self.num_classes);
        if self.dfs(covered, 0) {
            return Some(self.elems);
        }
        None
    }

    /// `covered` counts distinct classes hit, `waste` duplicated pair-slots.
    fn dfs(&mut self, covered: usize, waste: usize) -> bool {
        if self.elems.len() == self.k {
            return covered == self.num_classes;
        }
        let last = *self.elems.last().unwrap();
        // reflection break: after d₃ is placed, elements stay ≤ n+1−d₃
        let limit = if self.elems.len() >= 3 {
            (self.n + 1 - self.elems[2]).min(self.n - 1)
        } else {
            self.n - 1
        };
        if !self.frontier_classes_reachable(last, limit) {
            return false;
        }
        for d in last + 1..=limit {
            let mut new_covered = covered;
            let mut new_waste = waste;
            for i in 0..self.elems.len() {
                let c = self.class_of(d - self.elems[i]);
                if self.hit[c] == 0 {
                    new_covered += 1;
                } else {
                    new_waste += 1;
                }
                self.hit[c] += 1;
            }
            if new_waste <= self.slack {
                self.elems.push(d);
                if self.dfs(new_covered, new_waste) {
                    return true;
                }
                self.elems.pop();
            }
            for i in 0..self.elems.len() {
                let c = self.class_of(d - self.elems[i]);
                self.hit[c] -= 1;
            }
        }
        false
    }

    /// Checks that the least and greatest uncovered classes can still be
    /// covered by some future element in `(last, limit]`: either paired with
    /// an existing element, or as the span of two future elements.
    fn frontier_classes_reachable(&self, last: usize, limit: usize) -> bool {
        let lo = (1..=self.num_classes).find(|&c| self.hit[c] == 0);
        let hi = (1..=self.num_classes).rev().find(|&c| self.hit[c] == 0);
        for c in [lo, hi].into_iter().flatten() {
            if !self.class_reachable(c, last, limit) {
                return false;
            }
        }
        true
    }

    fn class_reachable(&self, class: usize, last: usize, limit: usize) -> bool {
        let span = (limit).saturating_sub(last + 1);
        for diff in [class, self.n - class] {
            // two future elements at distance `diff`
            if diff <= span {
                return true;
            }
            // future element pairing with an existing one
            for &e in &self.elems {
                let b = e + diff;
                if b > last && b <= limit {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_q2_m1_t0() {
        let ext = extend_plane(2, 1, 0).unwrap();
        assert_eq!(ext.family.n(), 10);
        assert_eq!(ext.family.num_blocks(), 10);
        assert!(ext.family.mcard() <= 4);
        assert!(ext.family.is_mediated_family());
        assert_eq!(ext.z_points.len(), 2);
    }

    #[test]
    fn extension_q2_m1_t2_structure() {
        // |Z| = 0: seven plane blocks (three extended by W) plus Q₁ = {w₁}.
        let ext = extend_plane(2, 1, 2).unwrap();
        assert_eq!(ext.family.n(), 8);
        assert_eq!(ext.family.num_blocks(), 8);
        assert!(ext.z_points.is_empty());
        assert_eq!(ext.family.block(7), &[7]); // Q₁ holds only w₁
        assert!(ext.family.is_mediated_family());
        assert_eq!(ext.family.mcard(), 4);
    }

    #[test]
    fn extension_q3_m2_t1() {
        let ext = extend_plane(3, 2, 1).unwrap();
        assert_eq!(ext.family.n(), 20);
        assert!(ext.family.mcard() <= 6);
        assert!(ext.family.is_two_covering().is_covered());
        assert!(ext.family.is_mediated_family());
    }

    #[test]
    fn extension_parameter_validation() {
        assert!(extend_plane(2, 0, 0).is_err());
        assert!(extend_plane(2, 4, 0).is_err());
        assert!(extend_plane(2, 1, 3).is_err());
        assert!(extend_plane(6, 1, 0).is_err()); // not a prime power
    }

    #[test]
    fn extension_seeded_z_choice_stays_mediated() {
        for seed in 0..5 {
            let ext = extend_plane_with(3, 2, 2, ZChoice::Seeded(seed)).unwrap();
            assert!(ext.family.is_mediated_family());
            assert!(ext.family.mcard() <= 3 + 1 + 2);
        }
    }

    #[test]
    fn difference_cover_predicate() {
        assert!(is_difference_cover(&[0, 1, 3], 7));
        assert!(!is_difference_cover(&[0, 1], 4));
        assert!(is_difference_cover(&[0], 1));
        assert!(!is_difference_cover(&[0, 5], 4)); // out of range
    }

    #[test]
    fn develop_examples() {
        let d = DifferenceCover::new(7, vec![0, 1, 3]).unwrap();
        let fam = d.develop();
        assert!(fam.is_mediated_family());
        assert_eq!(fam.mcard(), 3); // μ(7) ≤ 2

        let d = DifferenceCover::new(4, vec![0, 1, 2]).unwrap();
        assert!(d.develop().is_two_covering().is_covered());

        let d = DifferenceCover::new(3, vec![0, 1]).unwrap();
        assert!(d.develop().is_mediated_family()); // μ(3) ≤ 1

        assert!(matches!(
            DifferenceCover::new(4, vec![0, 1]),
            Err(Error::NotDifferenceCover(_))
        ));
    }

    #[test]
    fn min_cover_small_cases() {
        assert_eq!(min_difference_cover(1, None).unwrap().elems(), &[0]);
        assert_eq!(min_difference_cover(3, None).unwrap().elems(), &[0, 1]);
        let c7 = min_difference_cover(7, None).unwrap();
        assert_eq!(c7.elems(), &[0, 1, 3]);
        let c13 = min_difference_cover(13, None).unwrap();
        assert_eq!(c13.elems(), &[0, 1, 3, 9]);
    }

    #[test]
    fn min_cover_budget_exhaustion_is_none() {
        assert!(min_difference_cover(4, Some(2)).is_none());
    }

    #[test]
    fn min_cover_deterministic() {
        let a = min_difference_cover(31, None).unwrap();
        let b = min_difference_cover(31, None).unwrap();
        assert_eq!(a, b);
    }
}
