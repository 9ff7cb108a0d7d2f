//! The lower bound f(n), aggregated upper bounds on μ(n) over all applicable
//! constructions, plane-order nonexistence predicates, and strict-gap
//! reporting.

use crate::construct::{extend_plane, integer_sqrt, min_difference_cover, DifferenceCover};
use crate::digraph::Digraph;
use crate::family::BlockFamily;
use crate::galois::{prime_power_decompose, projective_plane};
use crate::solver;
use crate::{Error, Result};

/// f(n) = ⌈(√(4n−3) − 1)/2⌉, computed in exact integer arithmetic as the
/// least d ≥ 0 with d² + d ≥ n − 1. Every mediated digraph on n vertices has
/// Δ⁻ ≥ f(n).
pub fn f_lower(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("f(n) requires n >= 1".into()));
    }
    // d² + d ≥ n−1 first holds near √(n−1); adjust by at most a step or two.
    let mut d = integer_sqrt(n - 1);
    while d > 0 && (d - 1) * (d - 1) + (d - 1) >= n - 1 {
        d -= 1;
    }
    while d * d + d < n - 1 {
        d += 1;
    }
    Ok(d)
}

/// Effort tiers for upper-bound aggregation.
///
/// Tier 0 uses closed-form constructions only; tier 1 adds the
/// difference-cover search for n up to `diffcover_cap`; tier 2 adds the exact
/// solver for n up to `exact_cap`.
#[derive(Debug, Clone)]
pub struct EffortConfig {
    pub tier: u8,
    pub diffcover_cap: usize,
    pub diffcover_budget: Option<usize>,
    pub exact_cap: usize,
}

impl Default for EffortConfig {
    fn default() -> Self {
        EffortConfig { tier: 1, diffcover_cap: 150, diffcover_budget: None, exact_cap: 10 }
    }
}

impl EffortConfig {
    pub fn tier(tier: u8) -> Self {
        EffortConfig { tier, ..Default::default() }
    }
}

/// Which construction produced an upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpperBoundMethod {
    /// Projective plane of order q on q²+q+1 vertices: μ ≤ q.
    Plane { q: usize },
    /// Plane extension with parameters (q, m, t): μ ≤ q+m.
    PlaneExtension { q: usize, m: usize, t: usize },
    /// Development of a cyclic difference cover of size k: μ ≤ k−1.
    DiffCover { cover: DifferenceCover },
    /// Exact solver witness: μ ≤ value (and the value is exact).
    Exact,
    /// Fallback half-set difference cover {0, …, ⌊n/2⌋}: μ ≤ ⌊n/2⌋.
    Trivial,
}

impl UpperBoundMethod {
    /// Short tag without parameters, e.g. `plane-extension`.
    pub fn tag(&self) -> &'static str {
        match self {
            UpperBoundMethod::Plane { .. } => "plane",
            UpperBoundMethod::PlaneExtension { .. } => "plane-extension",
            UpperBoundMethod::DiffCover { .. } => "diff-cover",
            UpperBoundMethod::Exact => "exact",
            UpperBoundMethod::Trivial => "trivial",
        }
    }

    /// Parameterized label, e.g. `plane-extension(2,1,0)` or `diff-cover(3)`.
    pub fn label(&self) -> String {
        match self {
            UpperBoundMethod::Plane { q } => format!("plane({q})"),
            UpperBoundMethod::PlaneExtension { q, m, t } => format!("plane-extension({q},{m},{t})"),
            UpperBoundMethod::DiffCover { cover } => format!("diff-cover({})", cover.k()),
            UpperBoundMethod::Exact => "exact".to_string(),
            UpperBoundMethod::Trivial => "trivial".to_string(),
        }
    }
}

/// The half-set {0, …, ⌊n/2⌋} always covers Z_n.
fn trivial_cover(n: usize) -> DifferenceCover {
    DifferenceCover::new(n, (0..=n / 2).collect()).expect("half-set covers all residues")
}

/// Minimum upper bound on μ(n) over every construction the effort tier
/// allows, with the method that attains it. Ties prefer plane, then
/// plane-extension, then diff-cover, then exact, then the trivial fallback.
pub fn best_upper_bound(n: usize, effort: &EffortConfig) -> Result<(usize, UpperBoundMethod)> {
    if n < 1 {
        return Err(Error::InvalidArgument("best_upper_bound requires n >= 1".into()));
    }
    let mut best: (usize, UpperBoundMethod) = (n / 2, UpperBoundMethod::Trivial);

    // planes: n = q²+q+1 for a prime power q
    if let Some(q) = plane_order_of(n) {
        if prime_power_decompose(q).is_some() && q < best.0 {
            best = (q, UpperBoundMethod::Plane { q });
        }
    }

    // plane extensions: n = q²+q+1+m(q+1)−t, bound q+m, minimal m per q
    let mut q = 2;
    while q * q + q + 1 < n {
        if prime_power_decompose(q).is_some() {
            let delta = n - (q * q + q + 1);
            let m = delta.div_ceil(q + 1);
            if m <= q + 1 {
                let t = m * (q + 1) - delta;
                debug_assert!(t <= q);
                if q + m < best.0 {
                    best = (q + m, UpperBoundMethod::PlaneExtension { q, m, t });
                }
            }
        }
        q += 1;
    }

    // difference-cover search
    if effort.tier >= 1 && n <= effort.diffcover_cap {
        if let Some(cover) = min_difference_cover(n, effort.diffcover_budget) {
            if cover.k() - 1 < best.0 {
                best = (cover.k() - 1, UpperBoundMethod::DiffCover { cover });
            }
        }
    }

    // exact solver
    if effort.tier >= 2 && n <= effort.exact_cap {
        let (mu, _) = solver::mu_exact(n, best.0, &solver::SolverConfig::default())?;
        if mu < best.0 {
            best = (mu, UpperBoundMethod::Exact);
        }
    }

    Ok(best)
}

/// Rebuilds the digraph witness behind an upper bound. The witness
/// independently re-verifies: it is mediated with Δ⁻ ≤ the claimed bound.
pub fn realize_witness(n: usize, method: &UpperBoundMethod, effort: &EffortConfig) -> Result<Digraph> {
    match method {
        UpperBoundMethod::Plane { q } => projective_plane(*q)?.lines().to_digraph(),
        UpperBoundMethod::PlaneExtension { q, m, t } => extend_plane(*q, *m, *t)?.family.to_digraph(),
        UpperBoundMethod::DiffCover { cover } => cover.develop().to_digraph(),
        UpperBoundMethod::Exact => {
            let k_cap = best_upper_bound(n, &EffortConfig { tier: 1, ..effort.clone() })?.0;
            let (_, witness) = solver::mu_exact(n, k_cap, &solver::SolverConfig::default())?;
            Ok(witness)
        }
        UpperBoundMethod::Trivial => trivial_cover(n).develop().to_digraph(),
    }
}

/// If n = q²+q+1 for an integer q ≥ 2, returns q.
pub fn plane_order_of(n: usize) -> Option<usize> {
    if n < 7 {
        return None;
    }
    let q = (integer_sqrt(4 * n - 3) - 1) / 2;
    for cand in q.saturating_sub(1)..=q + 1 {
        if cand >= 2 && cand * cand + cand + 1 == n {
            return Some(cand);
        }
    }
    None
}

fn is_sum_of_two_squares(q: usize) -> bool {
    let mut a = 0;
    while a * a <= q {
        let rest = q - a * a;
        let b = integer_sqrt(rest);
        if b * b == rest {
            return true;
        }
        a += 1;
    }
    false
}

/// Bruck–Ryser exclusion: true iff q ≡ 1 or 2 (mod 4) and q is not a sum of
/// two integer squares, in which case no projective plane of order q exists.
pub fn bruck_ryser_excludes(q: usize) -> bool {
    debug_assert!(q >= 2);
    matches!(q % 4, 1 | 2) && !is_sum_of_two_squares(q)
}

/// True iff the nonexistence of a projective plane of order q is known:
/// Bruck–Ryser applies, or q = 10 (settled by computer search). Orders the
/// test is silent on (e.g. q = 12) report false, not nonexistence.
pub fn plane_known_nonexistent(q: usize) -> bool {
    bruck_ryser_excludes(q) || q == 10
}

/// True iff n = q²+q+1 for some q ≥ 2 with no projective plane of order q,
/// which forces μ(n) > f(n).
pub fn strict_gap_flag(n: usize) -> bool {
    plane_order_of(n).is_some_and(plane_known_nonexistent)
}

/// The equality-forcing check behind the strict gap: a symmetric family on
/// n = q²+q+1 points whose blocks all have exactly q+1 points and pairwise
/// intersect in exactly one point is a projective plane of order q.
///
/// Errors when F is not an n-block family on q²+q+1 points.
pub fn verify_extremal_family_is_plane(family: &BlockFamily, q: usize) -> Result<bool> {
    let n = q * q + q + 1;
    if family.n() != n || family.num_blocks() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} blocks on {n} points, got {} on {}",
            family.num_blocks(),
            family.n()
        )));
    }
    for i in 0..n {
        if family.block(i).len() != q + 1 {
            return Ok(false);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let count = family
                .block(i)
                .iter()
                .filter(|&&p| family.block_set(j).contains(p))
                .count();
            if count != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-n bracketing record: f(n) ≤ μ(n) ≤ mu_upper.
#[derive(Debug, Clone)]
pub struct BoundsRecord {
    pub n: usize,
    pub f_lower: usize,
    pub mu_upper: usize,
    pub method: UpperBoundMethod,
    pub strict_gap_proved: bool,
    pub witness_ref: Option<String>,
}

impl BoundsRecord {
    /// Observed gap between the bracketing bounds (evidence for the
    /// conjectured constant c).
    pub fn gap(&self) -> usize {
        self.mu_upper - self.f_lower
    }

    /// Best proven lower bound: f(n), plus one when the strict gap applies.
    pub fn mu_lower(&self) -> usize {
        self.f_lower + usize::from(self.strict_gap_proved)
    }
}

/// Computes the bracketing record for one n at the given effort.
pub fn bounds_record(n: usize, effort: &EffortConfig) -> Result<BoundsRecord> {
    let f = f_lower(n)?;
    let (mu_upper, method) = best_upper_bound(n, effort)?;
    debug_assert!(f <= mu_upper);
    Ok(BoundsRecord {
        n,
        f_lower: f,
        mu_upper,
        method,
        strict_gap_proved: strict_gap_flag(n),
        witness_ref: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::default_k_budget;

    #[test]
    fn f_lower_examples() {
        assert_eq!(f_lower(1).unwrap(), 0);
        assert_eq!(f_lower(6).unwrap(), 2);
        assert_eq!(f_lower(7).unwrap(), 2);
        assert_eq!(f_lower(8).unwrap(), 3);
        assert_eq!(f_lower(43).unwrap(), 6);
        assert_eq!(f_lower(133).unwrap(), 11);
        assert!(f_lower(0).is_err());
    }

    #[test]
    fn f_lower_matches_float_formula_sample() {
        for n in 1..=20_000usize {
            let float = (((4.0 * n as f64 - 3.0).sqrt() - 1.0) / 2.0).ceil() as usize;
            assert_eq!(f_lower(n).unwrap(), float, "n = {n}");
        }
    }

    #[test]
    fn plane_order_detection() {
        assert_eq!(plane_order_of(7), Some(2));
        assert_eq!(plane_order_of(133), Some(11));
        assert_eq!(plane_order_of(111), Some(10));
        assert_eq!(plane_order_of(10), None);
        assert_eq!(plane_order_of(3), None); // q = 1 is not a plane order
    }

    #[test]
    fn best_upper_bound_examples() {
        let tier1 = EffortConfig::default();
        let (v, m) = best_upper_bound(7, &tier1).unwrap();
        assert_eq!((v, m.label()), (2, "plane(2)".into()));

        let (v, m) = best_upper_bound(10, &tier1).unwrap();
        assert_eq!((v, m.label()), (3, "plane-extension(2,1,0)".into()));

        let (v, m) = best_upper_bound(57, &EffortConfig::tier(0)).unwrap();
        assert_eq!((v, m.label()), (7, "plane(7)".into()));

        assert_eq!(best_upper_bound(1, &tier1).unwrap().0, 0);
        assert_eq!(best_upper_bound(2, &tier1).unwrap().0, 1);
    }

    #[test]
    fn upper_bounds_never_undershoot_f() {
        let effort = EffortConfig::tier(0);
        for n in 1..=400 {
            let f = f_lower(n).unwrap();
            let (ub, _) = best_upper_bound(n, &effort).unwrap();
            assert!(f <= ub, "n = {n}: f = {f} > ub = {ub}");
        }
    }

    #[test]
    fn bruck_ryser_examples() {
        assert!(bruck_ryser_excludes(6));
        assert!(!bruck_ryser_excludes(5)); // 5 = 1 + 4
        assert!(bruck_ryser_excludes(14));
        assert!(!bruck_ryser_excludes(9)); // 9 = 9 + 0
        assert!(!bruck_ryser_excludes(10)); // 10 = 1 + 9: Bruck–Ryser is silent
        assert!(!bruck_ryser_excludes(12)); // 12 ≡ 0 (mod 4)
    }

    #[test]
    fn nonexistence_predicate() {
        assert!(plane_known_nonexistent(10));
        assert!(plane_known_nonexistent(6));
        assert!(!plane_known_nonexistent(12));
        assert!(!plane_known_nonexistent(9));
    }

    #[test]
    fn strict_gap_examples() {
        assert!(strict_gap_flag(43)); // q = 6
        assert!(strict_gap_flag(111)); // q = 10
        assert!(!strict_gap_flag(57)); // q = 7, plane exists
        assert!(!strict_gap_flag(42));
    }

    #[test]
    fn extremal_plane_verifier() {
        let plane = projective_plane(3).unwrap();
        assert!(verify_extremal_family_is_plane(plane.lines(), 3).unwrap());

        let dev = DifferenceCover::new(7, vec![0, 1, 3]).unwrap().develop();
        assert!(verify_extremal_family_is_plane(&dev, 2).unwrap());

        let ext = extend_plane(2, 1, 0).unwrap();
        assert!(verify_extremal_family_is_plane(&ext.family, 2).is_err());

        // right shape, wrong structure: all blocks equal
        let bogus = BlockFamily::new(7, vec![vec![0, 1, 2]; 7]).unwrap();
        assert!(!verify_extremal_family_is_plane(&bogus, 2).unwrap());
    }

    #[test]
    fn record_gap_and_mu_lower() {
        let rec = bounds_record(43, &EffortConfig::tier(0)).unwrap();
        assert_eq!(rec.f_lower, 6);
        assert_eq!(rec.mu_upper, 7);
        assert!(rec.strict_gap_proved);
        assert_eq!(rec.mu_lower(), 7);
        assert_eq!(rec.gap(), 1);
    }

    #[test]
    fn witnesses_realize_and_verify() {
        let effort = EffortConfig::default();
        for n in [1usize, 2, 7, 10, 57] {
            let (ub, method) = best_upper_bound(n, &effort).unwrap();
            let witness = realize_witness(n, &method, &effort).unwrap();
            assert_eq!(witness.n(), n);
            assert!(witness.is_mediated().is_mediated(), "n = {n}");
            assert!(witness.max_in_degree() <= ub, "n = {n}");
        }
    }

    #[test]
    fn default_budget_formula() {
        assert_eq!(default_k_budget(133), 21); // ⌈√199.5⌉ + 6 = 15 + 6
    }
}
