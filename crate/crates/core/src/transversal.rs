//! Transversal matroids and the lifted graph realizing their k-fold union.
//!
//! The lifted graph replaces each right vertex `v` with `k` copies
//! `v(1)..v(k)`, every copy inheriting `v`'s edges. A left set is independent
//! in the k-fold union exactly when some matching of the lifted graph covers
//! it, so the union oracle reduces to bipartite matching instead of partition
//! search. Edge weights are inherited from the left endpoint:
//! `ω̄({u, v(t)}) = ω(u)`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{
    matching_covering, BipartiteGraph, Edge, Matching, WeightMap,
};
use crate::matroid::{greedy, IndependenceOracle, WeightOrdering};
use crate::subset::{self, Subset};

fn check_subset_width(left_count: usize) -> Result<()> {
    if left_count > subset::MAX_GROUND {
        Err(Error::Invalid(format!(
            "left side has {left_count} vertices, above the subset-width cap of {}",
            subset::MAX_GROUND
        )))
    } else {
        Ok(())
    }
}

/// The transversal matroid of a bipartite graph: a left set is independent
/// when some matching covers it.
pub struct TransversalOracle<'a> {
    graph: &'a BipartiteGraph,
}

impl<'a> TransversalOracle<'a> {
    pub fn new(graph: &'a BipartiteGraph) -> Result<Self> {
        check_subset_width(graph.left_count())?;
        Ok(TransversalOracle { graph })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        self.graph
    }
}

impl IndependenceOracle for TransversalOracle<'_> {
    fn ground_size(&self) -> usize {
        self.graph.left_count()
    }

    fn is_independent(&self, set: Subset) -> bool {
        matching_covering(self.graph, &set.indices()).is_ok()
    }
}

/// The graph `G^k`: right vertex `v` becomes copies `v(1)..v(k)`, stored at
/// dense index `v·k + (t − 1)`.
#[derive(Clone, Debug)]
pub struct LiftedGraph {
    base: BipartiteGraph,
    weights: WeightMap,
    k: usize,
    graph: BipartiteGraph,
}

impl LiftedGraph {
    pub fn new(base: &BipartiteGraph, weights: &WeightMap, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("the lift needs k >= 1 copies".into()));
        }
        if weights.len() != base.left_count() {
            return Err(Error::Invalid("weight map does not match the left side".into()));
        }
        check_subset_width(base.left_count())?;
        let mut edges = Vec::with_capacity(base.edge_count() * k);
        for &(u, v) in base.edges() {
            for t in 1..=k {
                edges.push((u, v * k + (t - 1)));
            }
        }
        let graph = BipartiteGraph::new(base.left_count(), base.right_count() * k, edges)?;
        Ok(LiftedGraph { base: base.clone(), weights: weights.clone(), k, graph })
    }

    /// The lifted graph itself.
    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn base(&self) -> &BipartiteGraph {
        &self.base
    }

    pub fn weights(&self) -> &WeightMap {
        &self.weights
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Dense index of the copy `v(t)`, `t ∈ 1..=k`.
    pub fn copy_index(&self, v: usize, t: usize) -> usize {
        debug_assert!(t >= 1 && t <= self.k);
        v * self.k + (t - 1)
    }

    /// Recovers `(v, t)` from a dense right index of the lifted graph.
    pub fn copy_label(&self, index: usize) -> (usize, usize) {
        (index / self.k, index % self.k + 1)
    }

    /// `ω̄` of a lifted edge: the weight of its left endpoint.
    pub fn edge_weight(&self, e: Edge) -> u64 {
        self.weights.of(e.0)
    }

    /// `ω̄(N)` of a matching in the lifted graph.
    pub fn matching_weight(&self, n: &Matching) -> u64 {
        n.weight(&self.weights)
    }

    /// The k-fold union oracle backed by this lift.
    pub fn oracle(&self) -> LiftedUnionOracle<'_> {
        LiftedUnionOracle { lifted: self }
    }

    /// An optimal base of the union together with a matching covering it.
    ///
    /// The base comes from the greedy over the canonical ordering; covering
    /// it by any matching realizes a maximum-weight matching of the lifted
    /// graph, since weights are non-negative and live on left endpoints.
    pub fn optimal_base(&self) -> Result<(Subset, Matching)> {
        let xi = WeightOrdering::canonical(&self.weights);
        let x = greedy(&self.oracle(), &xi)?;
        let n = matching_covering(&self.graph, &x.indices())?;
        Ok((x, n))
    }
}

/// Independence oracle of the k-fold union, answered by matchings in `G^k`.
pub struct LiftedUnionOracle<'a> {
    lifted: &'a LiftedGraph,
}

impl IndependenceOracle for LiftedUnionOracle<'_> {
    fn ground_size(&self) -> usize {
        self.lifted.base.left_count()
    }

    fn is_independent(&self, set: Subset) -> bool {
        union_independence(self.lifted, set)
    }
}

/// Whether some matching of the lifted graph covers exactly `set`.
pub fn union_independence(l: &LiftedGraph, set: Subset) -> bool {
    matching_covering(&l.graph, &set.indices()).is_ok()
}

/// Splits a matching of the lifted graph into the k matchings of the base
/// graph it encodes, by copy label.
pub fn project_matching(l: &LiftedGraph, n: &Matching) -> Result<Vec<Matching>> {
    n.validate(&l.graph)?;
    let mut parts: Vec<Vec<Edge>> = alloc::vec![Vec::new(); l.k];
    for &(u, idx) in n.edges() {
        let (v, t) = l.copy_label(idx);
        parts[t - 1].push((u, v));
    }
    parts.into_iter().map(|edges| Matching::new(&l.base, edges)).collect()
}

/// Reassembles a lifted matching from k base matchings covering pairwise
/// disjoint left sets; part `t` lands on the copies `v(t)`.
pub fn lift_matching(l: &LiftedGraph, parts: &[Matching]) -> Result<Matching> {
    if parts.len() != l.k {
        return Err(Error::Invalid(format!(
            "expected {} parts, got {}",
            l.k,
            parts.len()
        )));
    }
    let mut covered = Subset::EMPTY;
    let mut edges = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        part.validate(&l.base)?;
        for &(u, v) in part.edges() {
            if covered.contains(u) {
                return Err(Error::Invalid(format!(
                    "left vertex {u} is covered by more than one part"
                )));
            }
            covered = covered.with(u);
            edges.push((u, l.copy_index(v, i + 1)));
        }
    }
    Matching::new(&l.graph, edges)
}

/// An optimal base of the k-fold union of `G`'s transversal matroid, plus a
/// maximum-weight matching of `G^k` covering it.
pub fn optimal_base_lifted(
    g: &BipartiteGraph,
    w: &WeightMap,
    k: usize,
) -> Result<(Subset, Matching)> {
    LiftedGraph::new(g, w, k)?.optimal_base()
}

/// Cross-checks the matching-based union oracle against brute-force
/// partition search on every subset of the ground set.
pub fn union_oracles_agree(g: &BipartiteGraph, k: usize) -> Result<bool> {
    let w = WeightMap::zero(g.left_count());
    let lifted = LiftedGraph::new(g, &w, k)?;
    let transversal = TransversalOracle::new(g)?;
    let partition = crate::matroid::BruteForceUnion::new(&transversal, k)?;
    let lifted_oracle = lifted.oracle();
    Ok(Subset::all(g.left_count())
        .all(|s| lifted_oracle.is_independent(s) == partition.is_independent(s)))
}
