//! k-robust subsets: witness checking, the constructive pipeline, and an
//! independent exhaustive oracle.
//!
//! A subset `X` is k-robust when every base `B` admits a witness: pairwise
//! disjoint groups `X_1..X_m ⊆ X \ B` (one per element of `B \ X`, each of
//! size `k`, each at least as heavy as its element) such that every
//! transversal of the groups extends `B ∩ X` to an independent set.
//!
//! The constructive route takes an optimal base `X` of the k-fold union,
//! covers it by a matching `N` of the lifted graph and `B` by a matching `M`
//! of the base graph, groups `X` by right vertices, walks the exchange
//! digraph from each `M`-partner of `B \ X` to a sink, and reads the groups
//! off the sinks. Every intermediate step replays a statement that provably
//! holds, as an [`Error::Lemma`] assertion: a failure means a bug in this
//! crate, never a property of the input.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{matching_covering, BipartiteGraph, Edge, Matching, WeightMap};
use crate::guard;
use crate::matroid::{enumerate_bases, rank, IndependenceOracle};
use crate::subset::Subset;
use crate::transversal::{LiftedGraph, TransversalOracle};

/// The witness for one base: groups `X_1..X_m` plus the assignment sending
/// each element of `B \ X` to its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustWitness {
    groups: Vec<Subset>,
    assignment: BTreeMap<usize, usize>,
}

impl RobustWitness {
    pub fn new(groups: Vec<Subset>, assignment: BTreeMap<usize, usize>) -> Self {
        RobustWitness { groups, assignment }
    }

    pub fn empty() -> Self {
        RobustWitness { groups: Vec::new(), assignment: BTreeMap::new() }
    }

    pub fn groups(&self) -> &[Subset] {
        &self.groups
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Group index assigned to a base element outside the subset.
    pub fn group_of(&self, u: usize) -> Option<usize> {
        self.assignment.get(&u).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<usize, usize> {
        &self.assignment
    }
}

/// Per right vertex `v` of the base graph: the left vertices that `N`
/// matches into some copy of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightGroups {
    groups: Vec<Subset>,
}

impl RightGroups {
    pub fn group(&self, v: usize) -> Subset {
        self.groups[v]
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn as_slice(&self) -> &[Subset] {
        &self.groups
    }

    /// Union of all groups; equals the left vertices covered by `N`.
    pub fn covered(&self) -> Subset {
        self.groups.iter().fold(Subset::EMPTY, |acc, &g| acc.union(g))
    }
}

/// Groups the left vertices covered by a lifted matching by the base right
/// vertex whose copy they are matched to.
pub fn group_by_right(l: &LiftedGraph, n: &Matching) -> Result<RightGroups> {
    n.validate(l.graph())?;
    let mut groups = vec![Subset::EMPTY; l.base().right_count()];
    for &(u, idx) in n.edges() {
        let (v, _) = l.copy_label(idx);
        groups[v] = groups[v].with(u);
    }
    Ok(RightGroups { groups })
}

/// The digraph `D = (W, A)` steering the exchange argument.
///
/// `W` holds the right vertices whose group contains no base element matched
/// back to the same vertex; an arc `(v, v')` records a base element in `v`'s
/// group whose `M`-partner is `v'`. In-degree is at most one everywhere, so
/// walks from sources cannot merge or cycle.
#[derive(Clone, Debug)]
pub struct ExchangeDigraph {
    members: BTreeSet<usize>,
    arcs: BTreeSet<(usize, usize)>,
}

impl ExchangeDigraph {
    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    /// Arc targets out of `v`, ascending.
    pub fn successors(&self, v: usize) -> Vec<usize> {
        self.arcs.range((v, 0)..=(v, usize::MAX)).map(|&(_, to)| to).collect()
    }

    /// The unique arc source into `v`, if any.
    pub fn predecessor(&self, v: usize) -> Option<usize> {
        self.arcs.iter().find(|&&(_, to)| to == v).map(|&(from, _)| from)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.contains(v) && self.predecessor(v).is_none()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.contains(v) && self.successors(v).is_empty()
    }

    pub fn sources(&self) -> Vec<usize> {
        self.members.iter().copied().filter(|&v| self.is_source(v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.members.iter().copied().filter(|&v| self.is_sink(v)).collect()
    }
}

/// Builds the exchange digraph for base `b` (covered exactly by `m`) against
/// the grouping of `X` by right vertices.
///
/// Replays, as hard assertions: every arc stays inside `W`; in-degree is at
/// most one; the `M`-partner of every element of `B \ X` is a source; every
/// sink's group avoids `B`; nothing reachable from a source repeats.
pub fn build_exchange_digraph(
    g: &BipartiteGraph,
    groups: &RightGroups,
    b: Subset,
    m: &Matching,
) -> Result<ExchangeDigraph> {
    m.validate(g)?;
    if groups.len() != g.right_count() {
        return Err(Error::Invalid("group map does not match the right side".into()));
    }
    let covered: Vec<usize> = m.covered_left().into_iter().collect();
    if covered != b.indices() {
        return Err(Error::Invalid("matching does not cover the base exactly".into()));
    }
    let x = groups.covered();

    let mut members = BTreeSet::new();
    for v in 0..groups.len() {
        let stays = groups
            .group(v)
            .intersect(b)
            .iter()
            .all(|u| m.left_partner(u) != Some(v));
        if stays {
            members.insert(v);
        }
    }

    let mut arcs = BTreeSet::new();
    for &v in &members {
        for u in groups.group(v).intersect(b).iter() {
            let to = m
                .left_partner(u)
                .ok_or_else(|| Error::Lemma(format!("base element {u} has no partner")))?;
            if !members.contains(&to) {
                return Err(Error::Lemma(format!(
                    "arc target {to} from {v} falls outside W"
                )));
            }
            arcs.insert((v, to));
        }
    }

    let mut indegree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(_, to) in &arcs {
        *indegree.entry(to).or_insert(0) += 1;
    }
    if let Some((&v, &d)) = indegree.iter().find(|&(_, &d)| d > 1) {
        return Err(Error::Lemma(format!("vertex {v} has in-degree {d}")));
    }

    let d = ExchangeDigraph { members, arcs };

    for u in b.minus(x).iter() {
        let v = m
            .left_partner(u)
            .ok_or_else(|| Error::Lemma(format!("base element {u} has no partner")))?;
        if !d.contains(v) {
            return Err(Error::Lemma(format!("partner {v} of outside element {u} is not in W")));
        }
        if !d.is_source(v) {
            return Err(Error::Lemma(format!("partner {v} of outside element {u} is not a source")));
        }
    }

    for v in d.sinks() {
        if !groups.group(v).intersect(b).is_empty() {
            return Err(Error::Lemma(format!("sink {v} has base elements in its group")));
        }
    }

    // Everything reachable from the sources is visited at most once.
    let mut visited = BTreeSet::new();
    let mut frontier: Vec<usize> = d.sources();
    visited.extend(frontier.iter().copied());
    while let Some(v) = frontier.pop() {
        for to in d.successors(v) {
            if !visited.insert(to) {
                return Err(Error::Lemma(format!("vertex {to} is reachable twice")));
            }
            frontier.push(to);
        }
    }

    Ok(d)
}

/// One walk per element of `B \ X`: from the source at its `M`-partner down
/// to a sink of the digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    paths: BTreeMap<usize, Vec<usize>>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// The elements of `B \ X`, ascending.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.paths.keys().copied()
    }

    /// The walked right-vertex sequence for `u`.
    pub fn path(&self, u: usize) -> Option<&[usize]> {
        self.paths.get(&u).map(|p| p.as_slice())
    }

    /// The sink the walk for `u` ends at.
    pub fn sink(&self, u: usize) -> Option<usize> {
        self.paths.get(&u).and_then(|p| p.last().copied())
    }

    /// The vertex right before the sink, absent for single-vertex walks.
    pub fn before_sink(&self, u: usize) -> Option<usize> {
        self.paths.get(&u).and_then(|p| p.len().checked_sub(2).map(|i| p[i]))
    }
}

/// Walks the digraph from each outside element's source to a sink, taking the
/// smallest successor at branches.
///
/// Replays, as hard assertions: walks terminate within `|W|` steps, and the
/// walks of distinct elements share no vertex (hence sinks are distinct).
pub fn extract_paths(
    d: &ExchangeDigraph,
    m: &Matching,
    b: Subset,
    x: Subset,
) -> Result<PathFamily> {
    let mut paths = BTreeMap::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for u in b.minus(x).iter() {
        let start = m
            .left_partner(u)
            .ok_or_else(|| Error::Lemma(format!("outside element {u} has no partner")))?;
        if !d.is_source(start) {
            return Err(Error::Lemma(format!("walk for {u} starts off-source at {start}")));
        }
        let mut walk = vec![start];
        let mut cur = start;
        loop {
            let next = match d.successors(cur).first() {
                None => break,
                Some(&n) => n,
            };
            walk.push(next);
            cur = next;
            if walk.len() > d.members().len() {
                return Err(Error::Lemma(format!("walk for {u} exceeds |W| steps")));
            }
        }
        for &v in &walk {
            if !seen.insert(v) {
                return Err(Error::Lemma(format!("walks overlap at vertex {v}")));
            }
        }
        paths.insert(u, walk);
    }
    Ok(PathFamily { paths })
}

/// Everything the constructive route produces for one `(X, B)` pair.
#[derive(Clone, Debug)]
pub struct WitnessConstruction {
    lifted: LiftedGraph,
    cover_lifted: Matching,
    cover_base: Matching,
    groups: RightGroups,
    digraph: ExchangeDigraph,
    paths: PathFamily,
    subset: Subset,
    base_set: Subset,
    witness: RobustWitness,
}

impl WitnessConstruction {
    pub fn lifted(&self) -> &LiftedGraph {
        &self.lifted
    }

    /// The matching `N` of the lifted graph covering `X`.
    pub fn cover_lifted(&self) -> &Matching {
        &self.cover_lifted
    }

    /// The matching `M` of the base graph covering `B`.
    pub fn cover_base(&self) -> &Matching {
        &self.cover_base
    }

    pub fn groups(&self) -> &RightGroups {
        &self.groups
    }

    pub fn digraph(&self) -> &ExchangeDigraph {
        &self.digraph
    }

    pub fn paths(&self) -> &PathFamily {
        &self.paths
    }

    pub fn subset(&self) -> Subset {
        self.subset
    }

    pub fn base_set(&self) -> Subset {
        self.base_set
    }

    pub fn witness(&self) -> &RobustWitness {
        &self.witness
    }
}

/// Runs the full constructive pipeline for an optimal base `x` of the k-fold
/// union and a base `b` of the transversal matroid.
///
/// Rejects inputs that are not bases (or `x` not optimal) as invalid. The
/// postcondition assertions are lemma replays: every group sits at a sink,
/// has exactly `k` elements all matched by `N`, avoids `b`, and weighs at
/// least its assigned element.
pub fn construct_witness(
    g: &BipartiteGraph,
    w: &WeightMap,
    k: usize,
    x: Subset,
    b: Subset,
) -> Result<WitnessConstruction> {
    let lifted = LiftedGraph::new(g, w, k)?;

    let transversal = TransversalOracle::new(g)?;
    let cover_base = match matching_covering(g, &b.indices()) {
        Ok(m) => m,
        Err(Error::Infeasible) => {
            return Err(Error::Invalid(format!("{b} is dependent, not a base")));
        }
        Err(e) => return Err(e),
    };
    let rk = rank(&transversal);
    if b.len() != rk {
        return Err(Error::Invalid(format!(
            "{b} is independent but not a base (size {}, rank {rk})",
            b.len()
        )));
    }

    let cover_lifted = match matching_covering(lifted.graph(), &x.indices()) {
        Ok(n) => n,
        Err(Error::Infeasible) => {
            return Err(Error::Invalid(format!("{x} is not independent in the union")));
        }
        Err(e) => return Err(e),
    };
    let (best, _) = lifted.optimal_base()?;
    if x.len() != best.len() || w.subset_total(x) != w.subset_total(best) {
        return Err(Error::Invalid(format!("{x} is not an optimal base of the union")));
    }

    let groups = group_by_right(&lifted, &cover_lifted)?;
    let digraph = build_exchange_digraph(g, &groups, b, &cover_base)?;
    let paths = extract_paths(&digraph, &cover_base, b, x)?;

    let outside = b.minus(x);
    let mut witness_groups = Vec::with_capacity(outside.len());
    let mut assignment = BTreeMap::new();
    for (i, u) in outside.iter().enumerate() {
        let sink = paths
            .sink(u)
            .ok_or_else(|| Error::Lemma(format!("no walk recorded for {u}")))?;
        let group = groups.group(sink);
        if group.len() != k {
            return Err(Error::Lemma(format!(
                "group at sink {sink} has {} elements, expected {k}",
                group.len()
            )));
        }
        for t in 1..=k {
            let copy = lifted.copy_index(sink, t);
            if cover_lifted.right_partner(copy).is_none() {
                return Err(Error::Lemma(format!("copy {t} of sink {sink} is unmatched")));
            }
        }
        if !group.intersect(b).is_empty() {
            return Err(Error::Lemma(format!("group at sink {sink} meets the base")));
        }
        if !group.is_subset_of(x) {
            return Err(Error::Lemma(format!("group at sink {sink} leaves the subset")));
        }
        if group.iter().any(|v| w.of(v) < w.of(u)) {
            return Err(Error::Lemma(format!(
                "group at sink {sink} is lighter than element {u}"
            )));
        }
        witness_groups.push(group);
        assignment.insert(u, i);
    }

    Ok(WitnessConstruction {
        lifted,
        cover_lifted,
        cover_base,
        groups,
        digraph,
        paths,
        subset: x,
        base_set: b,
        witness: RobustWitness::new(witness_groups, assignment),
    })
}

/// Whether every transversal of `groups` extends `base_part` to a set the
/// oracle accepts. Vacuously true when some group is empty.
fn every_transversal_extends<O: IndependenceOracle>(
    oracle: &O,
    base_part: Subset,
    groups: &[Subset],
) -> Result<bool> {
    let count = groups.iter().fold(1u128, |acc, g| acc.saturating_mul(g.len() as u128));
    guard::check(count <= guard::PRODUCT_LIMIT, || {
        format!("{count} group transversals (limit {})", guard::PRODUCT_LIMIT)
    })?;
    let lists: Vec<Vec<usize>> = groups.iter().map(|g| g.indices()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(true);
    }
    let mut pick = vec![0usize; lists.len()];
    loop {
        let mut set = base_part;
        for (i, l) in lists.iter().enumerate() {
            set = set.with(l[pick[i]]);
        }
        if !oracle.is_independent(set) {
            return Ok(false);
        }
        let mut i = lists.len();
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < lists[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Checks a witness against the three robustness conditions.
///
/// Malformed witnesses (wrong group count, assignment not a bijection,
/// overlapping groups, groups leaving `X \ B`) are errors; a well-formed
/// witness that fails a condition returns `false`. The transversal condition
/// enumerates the full group product.
pub fn check_witness<O: IndependenceOracle>(
    oracle: &O,
    w: &WeightMap,
    k: usize,
    x: Subset,
    b: Subset,
    witness: &RobustWitness,
) -> Result<bool> {
    let n = oracle.ground_size();
    if k == 0 {
        return Err(Error::Invalid("robustness needs k >= 1".into()));
    }
    if w.len() != n {
        return Err(Error::Invalid("weight map does not match the ground set".into()));
    }
    let full = Subset::full(n);
    if !x.is_subset_of(full) || !b.is_subset_of(full) {
        return Err(Error::Invalid("subset or base leaves the ground set".into()));
    }
    if !oracle.is_independent(b) || b.len() != rank(oracle) {
        return Err(Error::Invalid(format!("{b} is not a base")));
    }

    let outside = b.minus(x);
    if witness.group_count() != outside.len() {
        return Err(Error::Invalid(format!(
            "witness has {} groups for {} outside elements",
            witness.group_count(),
            outside.len()
        )));
    }
    let mut hit = vec![false; witness.group_count()];
    for u in outside.iter() {
        let Some(i) = witness.group_of(u) else {
            return Err(Error::Invalid(format!("element {u} has no assigned group")));
        };
        if i >= hit.len() || hit[i] {
            return Err(Error::Invalid("assignment is not a bijection onto the groups".into()));
        }
        hit[i] = true;
    }
    if witness.assignment().len() != outside.len() {
        return Err(Error::Invalid("assignment mentions elements outside B \\ X".into()));
    }
    let pool = x.minus(b);
    let mut used = Subset::EMPTY;
    for &group in witness.groups() {
        if !group.is_subset_of(pool) {
            return Err(Error::Invalid(format!("group {group} leaves X \\ B")));
        }
        if !used.is_disjoint(group) {
            return Err(Error::Invalid("groups overlap".into()));
        }
        used = used.union(group);
    }

    // Group sizes.
    if witness.groups().iter().any(|g| g.len() != k) {
        return Ok(false);
    }
    // Weight dominance.
    for u in outside.iter() {
        let group = witness.groups()[witness.group_of(u).expect("assignment checked")];
        if group.iter().any(|v| w.of(v) < w.of(u)) {
            return Ok(false);
        }
    }
    // Every transversal extends B ∩ X independently.
    every_transversal_extends(oracle, b.intersect(x), witness.groups())
}

/// Replays the exchange along the walked paths for one transversal `choice`
/// (one element of the sink group per outside element) and returns the
/// resulting matching `M'`.
///
/// Asserts that swapped-out edges were present, swapped-in edges exist, the
/// result is a matching, and it covers exactly `(B ∩ X) ∪ {choices}`.
pub fn verify_exchange(
    c: &WitnessConstruction,
    choice: &BTreeMap<usize, usize>,
) -> Result<Matching> {
    let g = c.lifted().base();
    let m = c.cover_base();
    let outside = c.base_set().minus(c.subset());
    let chosen_keys: Vec<usize> = choice.keys().copied().collect();
    if chosen_keys != outside.indices() {
        return Err(Error::Invalid("choice must pick once per outside element".into()));
    }

    let mut edges: BTreeSet<Edge> = m.edges().iter().copied().collect();
    let mut swapped_in = Subset::EMPTY;
    for (&u, &pick) in choice {
        let walk = c
            .paths()
            .path(u)
            .ok_or_else(|| Error::Lemma(format!("no walk recorded for {u}")))?;
        let sink = *walk.last().expect("walks are non-empty");
        if !c.groups().group(sink).contains(pick) {
            return Err(Error::Invalid(format!(
                "choice {pick} for {u} is not in the group at sink {sink}"
            )));
        }
        // Left endpoints along the walk: u, then the base element matched to
        // each later walk vertex, then the chosen replacement.
        let mut lefts = vec![u];
        for (j, &z) in walk.iter().enumerate().skip(1) {
            let mate = m
                .right_partner(z)
                .ok_or_else(|| Error::Lemma(format!("walk vertex {z} is unmatched in M")))?;
            if !c.groups().group(walk[j - 1]).contains(mate) {
                return Err(Error::Lemma(format!(
                    "element {mate} is not grouped at walk vertex {}",
                    walk[j - 1]
                )));
            }
            if !c.base_set().contains(mate) {
                return Err(Error::Lemma(format!("element {mate} is outside the base")));
            }
            lefts.push(mate);
        }
        lefts.push(pick);
        for j in 0..walk.len() {
            let out_edge = (lefts[j], walk[j]);
            if !edges.remove(&out_edge) {
                return Err(Error::Lemma(format!("edge {out_edge:?} missing from M'")));
            }
            let in_edge = (lefts[j + 1], walk[j]);
            if !g.has_edge(in_edge) {
                return Err(Error::Lemma(format!("edge {in_edge:?} absent from the graph")));
            }
            if !edges.insert(in_edge) {
                return Err(Error::Lemma(format!("edge {in_edge:?} inserted twice")));
            }
        }
        swapped_in = swapped_in.with(pick);
    }

    let exchanged = Matching::new(g, edges.into_iter().collect())
        .map_err(|e| Error::Lemma(format!("exchanged edges are not a matching: {e}")))?;
    let expected = c.base_set().intersect(c.subset()).union(swapped_in);
    let covered: Vec<usize> = exchanged.covered_left().into_iter().collect();
    if covered != expected.indices() {
        return Err(Error::Lemma(format!(
            "exchange covers {covered:?}, expected {expected}"
        )));
    }
    Ok(exchanged)
}

/// Ground-truth robustness: for every base of the oracle's matroid, search
/// exhaustively for a witness (disjoint weight-dominating k-groups, then the
/// full transversal product). Makes no use of the constructive machinery.
pub fn robust_bruteforce<O: IndependenceOracle>(
    oracle: &O,
    w: &WeightMap,
    k: usize,
    x: Subset,
) -> Result<bool> {
    let n = oracle.ground_size();
    guard::check(n <= guard::ROBUST_GROUND, || {
        format!("robustness search on {n} elements (limit {})", guard::ROBUST_GROUND)
    })?;
    if k == 0 {
        return Err(Error::Invalid("robustness needs k >= 1".into()));
    }
    if w.len() != n {
        return Err(Error::Invalid("weight map does not match the ground set".into()));
    }
    if !x.is_subset_of(Subset::full(n)) {
        return Err(Error::Invalid("subset leaves the ground set".into()));
    }
    for b in enumerate_bases(oracle)? {
        if !base_has_witness(oracle, w, k, x, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn base_has_witness<O: IndependenceOracle>(
    oracle: &O,
    w: &WeightMap,
    k: usize,
    x: Subset,
    b: Subset,
) -> Result<bool> {
    let outside = b.minus(x).indices();
    if outside.is_empty() {
        return every_transversal_extends(oracle, b.intersect(x), &[]);
    }
    let pool = x.minus(b);
    if pool.len() < k * outside.len() {
        return Ok(false);
    }
    search_groups(oracle, w, k, x, b, &outside, 0, Subset::EMPTY, &mut Vec::new())
}

#[allow(clippy::too_many_arguments)]
fn search_groups<O: IndependenceOracle>(
    oracle: &O,
    w: &WeightMap,
    k: usize,
    x: Subset,
    b: Subset,
    outside: &[usize],
    idx: usize,
    used: Subset,
    chosen: &mut Vec<Subset>,
) -> Result<bool> {
    if idx == outside.len() {
        return every_transversal_extends(oracle, b.intersect(x), chosen);
    }
    let u = outside[idx];
    let pool = x.minus(b).minus(used);
    let candidates: Subset = pool.iter().filter(|&v| w.of(v) >= w.of(u)).collect();
    for group in candidates.k_subsets(k) {
        chosen.push(group);
        let found =
            search_groups(oracle, w, k, x, b, outside, idx + 1, used.union(group), chosen)?;
        chosen.pop();
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}
