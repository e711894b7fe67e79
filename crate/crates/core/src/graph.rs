//! Bipartite graphs, matchings, and alternating-path machinery.
//!
//! Vertices are dense indices per side: left vertices `0..left_count`, right
//! vertices `0..right_count`. An edge is the pair `(left, right)`. Weights
//! live on left vertices only, so a matching weighs the sum of the weights of
//! the left vertices it covers.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::guard;

/// An edge `(left index, right index)`.
pub type Edge = (usize, usize);

/// A finite simple bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<Edge>,
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= left_count || v >= right_count {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for {left_count} x {right_count} graph"
                )));
            }
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("duplicate edge".into()));
        }
        let mut left_adj = vec![Vec::new(); left_count];
        let mut right_adj = vec![Vec::new(); right_count];
        for &(u, v) in &edges {
            left_adj[u].push(v);
            right_adj[v].push(u);
        }
        Ok(BipartiteGraph { left_count, right_count, edges, left_adj, right_adj })
    }

    /// The complete bipartite graph.
    pub fn complete(left_count: usize, right_count: usize) -> Self {
        let edges = (0..left_count)
            .flat_map(|u| (0..right_count).map(move |v| (u, v)))
            .collect();
        BipartiteGraph::new(left_count, right_count, edges).expect("complete graph is valid")
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Right neighbors of a left vertex, ascending.
    pub fn left_neighbors(&self, u: usize) -> &[usize] {
        &self.left_adj[u]
    }

    /// Left neighbors of a right vertex, ascending.
    pub fn right_neighbors(&self, v: usize) -> &[usize] {
        &self.right_adj[v]
    }
}

/// Non-negative integer weights on left vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<u64>,
}

impl WeightMap {
    pub fn new(weights: Vec<u64>) -> Self {
        WeightMap { weights }
    }

    pub fn zero(n: usize) -> Self {
        WeightMap { weights: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn of(&self, u: usize) -> u64 {
        self.weights[u]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.weights
    }

    /// Sum of weights over the given left vertices; aborts on overflow.
    pub fn total(&self, vertices: impl IntoIterator<Item = usize>) -> u64 {
        vertices.into_iter().fold(0u64, |acc, u| {
            acc.checked_add(self.of(u)).expect("weight sum overflows u64")
        })
    }

    pub fn subset_total(&self, s: crate::Subset) -> u64 {
        self.total(s.iter())
    }
}

/// All vertices incident to an edge of `F`, split by side.
pub fn boundary(edges: &[Edge]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for &(u, v) in edges {
        left.insert(u);
        right.insert(v);
    }
    (left, right)
}

/// Whether the edge set is a matching in `g`: every edge present in `g` and
/// no two distinct edges sharing an endpoint.
pub fn is_matching(g: &BipartiteGraph, edges: &[Edge]) -> bool {
    let mut sorted: Vec<Edge> = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|&e| !g.has_edge(e)) {
        return false;
    }
    let (left, right) = boundary(&sorted);
    left.len() == sorted.len() && right.len() == sorted.len()
}

/// A conflict-free edge subset of a host graph, kept in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    pub fn new(g: &BipartiteGraph, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("duplicate edge in matching".into()));
        }
        if !is_matching(g, &edges) {
            return Err(Error::Invalid("edge set is not a matching of the host graph".into()));
        }
        Ok(Matching { edges })
    }

    /// Re-checks this matching against a host graph.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<()> {
        if is_matching(g, &self.edges) {
            Ok(())
        } else {
            Err(Error::Invalid("matching does not fit the host graph".into()))
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The right partner of a left vertex, if matched.
    pub fn left_partner(&self, u: usize) -> Option<usize> {
        self.edges.iter().find(|&&(a, _)| a == u).map(|&(_, v)| v)
    }

    /// The left partner of a right vertex, if matched.
    pub fn right_partner(&self, v: usize) -> Option<usize> {
        self.edges.iter().find(|&&(_, b)| b == v).map(|&(u, _)| u)
    }

    /// `∂(N) ∩ U`: the set of covered left vertices.
    pub fn covered_left(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|&(u, _)| u).collect()
    }

    /// `∂(N) ∩ V`: the set of covered right vertices.
    pub fn covered_right(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|&(_, v)| v).collect()
    }

    /// Matching weight: the weight of every covered left vertex summed.
    pub fn weight(&self, w: &WeightMap) -> u64 {
        w.total(self.edges.iter().map(|&(u, _)| u))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// Ends at a matched left vertex; swapping preserves matching size.
    Alternating,
    /// Ends at an exposed right vertex; swapping grows the matching by one.
    Augmenting,
}

/// An alternating path with respect to some matching, starting at an exposed
/// left vertex.
///
/// `lefts` and `rights` interleave as `x1, y1, x2, y2, ...`; an alternating
/// path has one more left entry than right entries, an augmenting path has
/// equally many. Paths are validated against their matching on construction
/// and again by every consumer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    lefts: Vec<usize>,
    rights: Vec<usize>,
    kind: PathKind,
}

impl AlternatingPath {
    pub fn new(
        g: &BipartiteGraph,
        n: &Matching,
        lefts: Vec<usize>,
        rights: Vec<usize>,
        kind: PathKind,
    ) -> Result<Self> {
        let p = AlternatingPath { lefts, rights, kind };
        p.validate(g, n)?;
        Ok(p)
    }

    pub fn validate(&self, g: &BipartiteGraph, n: &Matching) -> Result<()> {
        n.validate(g)?;
        let (lefts, rights) = (&self.lefts, &self.rights);
        let expected_lefts = match self.kind {
            PathKind::Alternating => rights.len() + 1,
            PathKind::Augmenting => rights.len(),
        };
        if lefts.is_empty() || lefts.len() != expected_lefts {
            return Err(Error::Invalid("path has wrong shape for its kind".into()));
        }
        if lefts.iter().any(|&u| u >= g.left_count())
            || rights.iter().any(|&v| v >= g.right_count())
        {
            return Err(Error::Invalid("path vertex out of range".into()));
        }
        let distinct_l: BTreeSet<_> = lefts.iter().collect();
        let distinct_r: BTreeSet<_> = rights.iter().collect();
        if distinct_l.len() != lefts.len() || distinct_r.len() != rights.len() {
            return Err(Error::Invalid("path revisits a vertex".into()));
        }
        if n.left_partner(lefts[0]).is_some() {
            return Err(Error::Invalid("path must start at an exposed left vertex".into()));
        }
        for (i, &y) in rights.iter().enumerate() {
            let forward = (lefts[i], y);
            if !g.has_edge(forward) || n.contains(forward) {
                return Err(Error::Invalid(format!(
                    "edge ({}, {y}) must be a non-matching edge",
                    lefts[i]
                )));
            }
            let is_last = i + 1 == rights.len();
            if self.kind == PathKind::Augmenting && is_last {
                if n.right_partner(y).is_some() {
                    return Err(Error::Invalid(
                        "augmenting path must end at an exposed right vertex".into(),
                    ));
                }
            } else {
                let back = (lefts[i + 1], y);
                if !n.contains(back) {
                    return Err(Error::Invalid(format!(
                        "edge ({}, {y}) must be a matching edge",
                        lefts[i + 1]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn lefts(&self) -> &[usize] {
        &self.lefts
    }

    pub fn rights(&self) -> &[usize] {
        &self.rights
    }

    pub fn start(&self) -> usize {
        self.lefts[0]
    }

    /// Final left vertex of an alternating-kind path.
    pub fn end_left(&self) -> Option<usize> {
        match self.kind {
            PathKind::Alternating => self.lefts.last().copied(),
            PathKind::Augmenting => None,
        }
    }
}

/// `N ⊕ P`: swaps the path's edges in and out of the matching.
pub fn apply_path(g: &BipartiteGraph, n: &Matching, p: &AlternatingPath) -> Result<Matching> {
    p.validate(g, n)?;
    let mut edges: BTreeSet<Edge> = n.edges().iter().copied().collect();
    for (i, &y) in p.rights().iter().enumerate() {
        edges.insert((p.lefts()[i], y));
        if !(p.kind() == PathKind::Augmenting && i + 1 == p.rights().len()) {
            edges.remove(&(p.lefts()[i + 1], y));
        }
    }
    Matching::new(g, edges.into_iter().collect())
}

/// The weight change `ω(x1) − ω(x_{ℓ+1})` of swapping an alternating path.
pub fn path_gain(p: &AlternatingPath, w: &WeightMap) -> Result<i64> {
    let Some(end) = p.end_left() else {
        return Err(Error::Invalid("gain is defined for alternating-kind paths only".into()));
    };
    let diff = w.of(p.start()) as i128 - w.of(end) as i128;
    i64::try_from(diff).map_err(|_| Error::Invalid("weight difference overflows i64".into()))
}

/// The alternating paths found by [`alternating_reachable`]: one per
/// reachable matched left vertex, plus an augmenting path when one exists.
#[derive(Clone, Debug)]
pub struct Reachability {
    paths: BTreeMap<usize, AlternatingPath>,
    augmenting: Option<AlternatingPath>,
}

impl Reachability {
    /// Reachable matched left vertices, ascending.
    pub fn reachable(&self) -> impl Iterator<Item = usize> + '_ {
        self.paths.keys().copied()
    }

    pub fn path_to(&self, w: usize) -> Option<&AlternatingPath> {
        self.paths.get(&w)
    }

    pub fn paths(&self) -> &BTreeMap<usize, AlternatingPath> {
        &self.paths
    }

    pub fn augmenting(&self) -> Option<&AlternatingPath> {
        self.augmenting.as_ref()
    }
}

/// Breadth-first search for alternating paths from an exposed left vertex.
///
/// Returns one alternating path per reachable matched left vertex and, if an
/// exposed right vertex can be reached, one augmenting path.
pub fn alternating_reachable(
    g: &BipartiteGraph,
    n: &Matching,
    u: usize,
) -> Result<Reachability> {
    n.validate(g)?;
    if u >= g.left_count() {
        return Err(Error::Invalid(format!("left vertex {u} out of range")));
    }
    if n.left_partner(u).is_some() {
        return Err(Error::Invalid(format!("left vertex {u} is already matched")));
    }
    let mut paths = BTreeMap::new();
    let mut augmenting = None;
    let mut seen_left = vec![false; g.left_count()];
    let mut seen_right = vec![false; g.right_count()];
    seen_left[u] = true;
    let mut queue: VecDeque<(Vec<usize>, Vec<usize>)> = VecDeque::new();
    queue.push_back((vec![u], Vec::new()));
    while let Some((lefts, rights)) = queue.pop_front() {
        let x = *lefts.last().expect("queue entries are non-empty paths");
        for &y in g.left_neighbors(x) {
            if seen_right[y] {
                continue;
            }
            seen_right[y] = true;
            match n.right_partner(y) {
                None => {
                    if augmenting.is_none() {
                        let mut r = rights.clone();
                        r.push(y);
                        augmenting = Some(AlternatingPath::new(
                            g,
                            n,
                            lefts.clone(),
                            r,
                            PathKind::Augmenting,
                        )?);
                    }
                }
                Some(x2) => {
                    if !seen_left[x2] {
                        seen_left[x2] = true;
                        let mut l = lefts.clone();
                        let mut r = rights.clone();
                        l.push(x2);
                        r.push(y);
                        let p =
                            AlternatingPath::new(g, n, l.clone(), r.clone(), PathKind::Alternating)?;
                        paths.insert(x2, p);
                        queue.push_back((l, r));
                    }
                }
            }
        }
    }
    Ok(Reachability { paths, augmenting })
}

/// Finds a matching covering exactly the left vertices `targets`, or reports
/// [`Error::Infeasible`] when none exists.
///
/// `targets` must be strictly ascending. Augmenting-path search proceeds in
/// ascending vertex order, so the result is deterministic.
pub fn matching_covering(g: &BipartiteGraph, targets: &[usize]) -> Result<Matching> {
    if targets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("target vertices must be strictly ascending".into()));
    }
    if targets.iter().any(|&u| u >= g.left_count()) {
        return Err(Error::Invalid("target vertex out of range".into()));
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.right_count()];
    for &u in targets {
        let mut seen = vec![false; g.right_count()];
        if !kuhn_augment(g, u, &mut owner, &mut seen) {
            return Err(Error::Infeasible);
        }
    }
    let edges = owner
        .iter()
        .enumerate()
        .filter_map(|(v, &o)| o.map(|u| (u, v)))
        .collect();
    Matching::new(g, edges)
}

fn kuhn_augment(
    g: &BipartiteGraph,
    u: usize,
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &v in g.left_neighbors(u) {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        match owner[v] {
            None => {
                owner[v] = Some(u);
                return true;
            }
            Some(prev) => {
                if kuhn_augment(g, prev, owner, seen) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
    }
    false
}

/// Calls `f` once per matching of `g`, including the empty one, each as a
/// sorted edge list.
pub fn for_each_matching<F: FnMut(&[Edge])>(g: &BipartiteGraph, mut f: F) -> Result<()> {
    guard::check(g.edge_count() <= guard::EDGE_ENUM_LIMIT, || {
        format!(
            "matching enumeration over {} edges (limit {})",
            g.edge_count(),
            guard::EDGE_ENUM_LIMIT
        )
    })?;
    let mut chosen: Vec<Edge> = Vec::new();
    let mut used_left = vec![false; g.left_count()];
    let mut used_right = vec![false; g.right_count()];
    fn rec<F: FnMut(&[Edge])>(
        edges: &[Edge],
        start: usize,
        chosen: &mut Vec<Edge>,
        used_left: &mut [bool],
        used_right: &mut [bool],
        f: &mut F,
    ) {
        f(chosen);
        for j in start..edges.len() {
            let (u, v) = edges[j];
            if !used_left[u] && !used_right[v] {
                used_left[u] = true;
                used_right[v] = true;
                chosen.push((u, v));
                rec(edges, j + 1, chosen, used_left, used_right, f);
                chosen.pop();
                used_left[u] = false;
                used_right[v] = false;
            }
        }
    }
    rec(g.edges(), 0, &mut chosen, &mut used_left, &mut used_right, &mut f);
    Ok(())
}

/// Every matching of `g`, each exactly once.
pub fn enumerate_matchings(g: &BipartiteGraph) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    for_each_matching(g, |edges| out.push(Matching { edges: edges.to_vec() }))?;
    Ok(out)
}
