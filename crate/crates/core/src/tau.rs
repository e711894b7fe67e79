//! The robustness threshold: the least `ℓ` such that every optimal base of
//! the `ℓ`-fold union is a k-robust subset, its exact computation on small
//! instances, and end-to-end verification that it never exceeds `k`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, WeightMap};
use crate::guard;
use crate::matroid::{
    enumerate_bases, optimal_bases, rank, BruteForceUnion, TabulatedOracle,
};
use crate::robust::{check_witness, construct_witness, robust_bruteforce};
use crate::subset::Subset;
use crate::transversal::{LiftedGraph, TransversalOracle};

/// How to answer union-independence queries.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum UnionRoute {
    /// Matchings in the lifted graph.
    Lifted,
    /// Backtracking partition into independent parts.
    Partition,
}

/// Per-level tally: how many optimal bases the `level`-fold union has, and
/// how many of them are k-robust.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDetail {
    pub level: usize,
    pub optimal_bases: usize,
    pub robust_bases: usize,
}

/// The outcome of checking one instance end to end.
#[derive(Clone, Debug)]
pub struct TauReport {
    pub k: usize,
    pub rank: usize,
    /// The threshold, when found within `lmax` levels.
    pub tau: Option<usize>,
    pub lmax: usize,
    /// The bound `k` that every instance here is expected to meet.
    pub theorem_bound: usize,
    /// The older bound `k + rank − 1` (floored at 1).
    pub prior_bound: usize,
    pub levels: Vec<LevelDetail>,
    /// Constructed witnesses that were checked.
    pub witness_checks: usize,
    pub theorem_pass: bool,
    pub violations: Vec<String>,
}

/// `max(k + rank − 1, 1)`.
pub fn prior_bound(k: usize, rank: usize) -> usize {
    (k + rank).saturating_sub(1).max(1)
}

fn check_tau_inputs(g: &BipartiteGraph, w: &WeightMap, k: usize, lmax: usize) -> Result<()> {
    guard::check(g.left_count() <= guard::TAU_GROUND, || {
        format!(
            "threshold search on {} left vertices (limit {})",
            g.left_count(),
            guard::TAU_GROUND
        )
    })?;
    if k == 0 || lmax == 0 {
        return Err(Error::Invalid("k and the level limit must be positive".into()));
    }
    if w.len() != g.left_count() {
        return Err(Error::Invalid("weight map does not match the left side".into()));
    }
    Ok(())
}

fn union_oracle(
    g: &BipartiteGraph,
    w: &WeightMap,
    level: usize,
    route: UnionRoute,
) -> Result<TabulatedOracle> {
    match route {
        UnionRoute::Lifted => {
            let lifted = LiftedGraph::new(g, w, level)?;
            TabulatedOracle::build(&lifted.oracle())
        }
        UnionRoute::Partition => {
            let t = TransversalOracle::new(g)?;
            let union = BruteForceUnion::new(&t, level)?;
            TabulatedOracle::build(&union)
        }
    }
}

/// Maximum-weight bases of the `level`-fold union.
pub fn optimal_union_bases(
    g: &BipartiteGraph,
    w: &WeightMap,
    level: usize,
    route: UnionRoute,
) -> Result<Vec<Subset>> {
    optimal_bases(&union_oracle(g, w, level, route)?, w)
}

/// The first level `ℓ ≤ lmax` at which every optimal base of the `ℓ`-fold
/// union is k-robust, or `None` when no level within reach qualifies.
///
/// Each level is checked independently; nothing is assumed about monotonicity
/// across levels.
pub fn tau_exact(
    g: &BipartiteGraph,
    w: &WeightMap,
    k: usize,
    lmax: usize,
) -> Result<Option<usize>> {
    tau_exact_via(g, w, k, lmax, UnionRoute::Lifted)
}

/// [`tau_exact`] with an explicit union-oracle route.
pub fn tau_exact_via(
    g: &BipartiteGraph,
    w: &WeightMap,
    k: usize,
    lmax: usize,
    route: UnionRoute,
) -> Result<Option<usize>> {
    check_tau_inputs(g, w, k, lmax)?;
    let transversal = TabulatedOracle::build(&TransversalOracle::new(g)?)?;
    for level in 1..=lmax {
        let mut all_robust = true;
        for x in optimal_union_bases(g, w, level, route)? {
            if !robust_bruteforce(&transversal, w, k, x)? {
                all_robust = false;
                break;
            }
        }
        if all_robust {
            return Ok(Some(level));
        }
    }
    Ok(None)
}

/// Optimal-base and robust-base counts for every level `1..=lmax`.
pub fn level_table(
    g: &BipartiteGraph,
    w: &WeightMap,
    k: usize,
    lmax: usize,
) -> Result<Vec<LevelDetail>> {
    check_tau_inputs(g, w, k, lmax)?;
    let transversal = TabulatedOracle::build(&TransversalOracle::new(g)?)?;
    let mut levels = Vec::with_capacity(lmax);
    for level in 1..=lmax {
        let optimal = optimal_union_bases(g, w, level, UnionRoute::Lifted)?;
        let mut robust = 0;
        for &x in &optimal {
            if robust_bruteforce(&transversal, w, k, x)? {
                robust += 1;
            }
        }
        levels.push(LevelDetail { level, optimal_bases: optimal.len(), robust_bases: robust });
    }
    Ok(levels)
}

/// Full check of one instance: every optimal base of the k-fold union gets a
/// constructed witness against every base, every witness is re-checked
/// against the definition, the brute-force oracle confirms robustness, and
/// the per-level table locates the threshold.
///
/// Violations would falsify the implementation, not the statement; they are
/// collected rather than panicking so sweeps can report them.
pub fn verify_theorem(g: &BipartiteGraph, w: &WeightMap, k: usize) -> Result<TauReport> {
    check_tau_inputs(g, w, k, k)?;
    let transversal = TabulatedOracle::build(&TransversalOracle::new(g)?)?;
    let rk = rank(&transversal);
    let bases = enumerate_bases(&transversal)?;
    let optimal = optimal_union_bases(g, w, k, UnionRoute::Lifted)?;

    let mut violations = Vec::new();
    let mut witness_checks = 0usize;
    for &x in &optimal {
        for &b in &bases {
            match construct_witness(g, w, k, x, b) {
                Ok(c) => {
                    witness_checks += 1;
                    match check_witness(&transversal, w, k, x, b, c.witness()) {
                        Ok(true) => {}
                        Ok(false) => violations.push(format!(
                            "constructed witness for X = {x}, B = {b} fails a condition"
                        )),
                        Err(e) => violations
                            .push(format!("witness check for X = {x}, B = {b} errored: {e}")),
                    }
                }
                Err(e) => {
                    violations.push(format!("construction for X = {x}, B = {b} failed: {e}"))
                }
            }
        }
    }

    let levels = level_table(g, w, k, k)?;
    let tau = levels
        .iter()
        .find(|d| d.robust_bases == d.optimal_bases)
        .map(|d| d.level);
    if let Some(last) = levels.last() {
        if last.robust_bases != last.optimal_bases {
            violations.push(format!(
                "{} of {} optimal bases of the {k}-fold union are not {k}-robust",
                last.optimal_bases - last.robust_bases,
                last.optimal_bases
            ));
        }
    }

    let theorem_pass = violations.is_empty() && tau.is_some();
    Ok(TauReport {
        k,
        rank: rk,
        tau,
        lmax: k,
        theorem_bound: k,
        prior_bound: prior_bound(k, rk),
        levels,
        witness_checks,
        theorem_pass,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> BipartiteGraph {
        BipartiteGraph::complete(3, 1)
    }

    fn w3() -> WeightMap {
        WeightMap::new(alloc::vec![3, 2, 1])
    }

    #[test]
    fn prior_bound_examples() {
        assert_eq!(prior_bound(2, 1), 2);
        assert_eq!(prior_bound(1, 1), 1);
        assert_eq!(prior_bound(3, 4), 6);
        assert_eq!(prior_bound(2, 0), 1);
    }

    #[test]
    fn tau_star_examples() {
        let g = star3();
        assert_eq!(tau_exact(&g, &w3(), 2, 2).unwrap(), Some(2));
        assert_eq!(tau_exact(&g, &w3(), 1, 1).unwrap(), Some(1));
        // Not found within one level.
        assert_eq!(tau_exact(&g, &w3(), 2, 1).unwrap(), None);
    }

    #[test]
    fn tau_without_edges() {
        let g = BipartiteGraph::new(3, 2, alloc::vec![]).unwrap();
        let w = WeightMap::new(alloc::vec![1, 2, 3]);
        assert_eq!(tau_exact(&g, &w, 2, 2).unwrap(), Some(1));
    }

    #[test]
    fn routes_agree() {
        let graphs = [
            star3(),
            BipartiteGraph::new(3, 2, alloc::vec![(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap(),
            BipartiteGraph::new(4, 2, alloc::vec![(0, 0), (1, 0), (2, 1), (3, 1)]).unwrap(),
        ];
        for g in &graphs {
            let w = WeightMap::new((0..g.left_count() as u64).rev().collect());
            for k in 1..=2 {
                assert_eq!(
                    tau_exact_via(g, &w, k, k, UnionRoute::Lifted).unwrap(),
                    tau_exact_via(g, &w, k, k, UnionRoute::Partition).unwrap()
                );
            }
        }
    }

    #[test]
    fn level_table_star() {
        let levels = level_table(&star3(), &w3(), 2, 2).unwrap();
        assert_eq!(
            levels,
            alloc::vec![
                LevelDetail { level: 1, optimal_bases: 1, robust_bases: 0 },
                LevelDetail { level: 2, optimal_bases: 1, robust_bases: 1 },
            ]
        );
    }

    #[test]
    fn verify_theorem_star() {
        let report = verify_theorem(&star3(), &w3(), 2).unwrap();
        assert!(report.theorem_pass);
        assert!(report.violations.is_empty());
        assert_eq!(report.tau, Some(2));
        assert_eq!(report.rank, 1);
        assert_eq!(report.theorem_bound, 2);
        assert_eq!(report.prior_bound, 2);
        assert_eq!(report.witness_checks, 3);
    }

    #[test]
    fn verify_theorem_with_ties() {
        let g = star3();
        let w = WeightMap::zero(3);
        let report = verify_theorem(&g, &w, 2).unwrap();
        assert!(report.theorem_pass);
        // All three pairs are optimal bases of the 2-fold union.
        assert_eq!(report.levels[1].optimal_bases, 3);
        assert_eq!(report.witness_checks, 9);
    }

    #[test]
    fn guards_and_validation() {
        let big = BipartiteGraph::complete(11, 1);
        let w = WeightMap::zero(11);
        assert!(matches!(tau_exact(&big, &w, 1, 1), Err(Error::Guard(_))));
        assert!(matches!(tau_exact(&star3(), &w3(), 0, 1), Err(Error::Invalid(_))));
        assert!(matches!(tau_exact(&star3(), &w3(), 1, 0), Err(Error::Invalid(_))));
        assert!(matches!(
            verify_theorem(&star3(), &WeightMap::zero(2), 1),
            Err(Error::Invalid(_))
        ));
    }
}
