//! Seeded pseudo-random instances.
//!
//! Generation is pinned to ChaCha8 with a fixed draw order (edge slots in
//! row-major order, then one weight per left vertex), so a seed identifies an
//! instance byte for byte across platforms and releases.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use trobust_core::graph::{BipartiteGraph, WeightMap};
use trobust_core::guard;

use crate::instance::Instance;
use crate::{Error, Result};

pub const MAX_LEFT: usize = 10;
pub const MAX_RIGHT: usize = 6;
pub const MAX_K: usize = 4;

#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub seed: u64,
    pub left: usize,
    pub right: usize,
    pub edge_prob: f64,
    pub wmax: u32,
    pub k: usize,
}

fn check_limit(name: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit && !guard::overridden() {
        return Err(Error::Usage(format!(
            "{name} = {value} exceeds the generator limit {limit} \
             (set ROBUST_GUARD_OVERRIDE=1 to lift at your own risk)"
        )));
    }
    Ok(())
}

/// Draws edges with probability `edge_prob` each, then one weight in
/// `0..=wmax` per left vertex.
pub fn generate(p: &GenParams) -> Result<Instance> {
    if p.left == 0 || p.right == 0 {
        return Err(Error::Usage("left and right must be positive".into()));
    }
    if p.k == 0 {
        return Err(Error::Usage("k must be positive".into()));
    }
    check_limit("left", p.left, MAX_LEFT)?;
    check_limit("right", p.right, MAX_RIGHT)?;
    check_limit("k", p.k, MAX_K)?;
    if !(0.0..=1.0).contains(&p.edge_prob) {
        return Err(Error::Usage(format!(
            "edge_prob = {} is outside [0, 1]",
            p.edge_prob
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let threshold = (p.edge_prob * 2f64.powi(32)).round() as u64;
    let mut edges = Vec::new();
    for u in 0..p.left {
        for v in 0..p.right {
            if u64::from(rng.next_u32()) < threshold {
                edges.push((u, v));
            }
        }
    }
    let weights: Vec<u64> = (0..p.left)
        .map(|_| u64::from(rng.next_u32()) % (u64::from(p.wmax) + 1))
        .collect();

    let graph = BipartiteGraph::new(p.left, p.right, edges)?;
    Instance::new(graph, WeightMap::new(weights), p.k)
}

/// Size caps for the seeded verification sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepBounds {
    pub max_left: usize,
    pub max_right: usize,
    pub max_k: usize,
    pub wmax: u32,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds { max_left: 6, max_right: 4, max_k: 3, wmax: 3 }
    }
}

/// One sweep instance per seed: dimensions, k, a density threshold, the edge
/// slots, and the weights all come from the same ChaCha8 stream.
pub fn sweep_instance(seed: u64, bounds: &SweepBounds) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng, max: usize| 1 + (rng.next_u32() as usize) % max;
    let left = pick(&mut rng, bounds.max_left);
    let right = pick(&mut rng, bounds.max_right);
    let k = pick(&mut rng, bounds.max_k);
    let threshold = u64::from(rng.next_u32());
    let mut edges = Vec::new();
    for u in 0..left {
        for v in 0..right {
            if u64::from(rng.next_u32()) < threshold {
                edges.push((u, v));
            }
        }
    }
    let weights: Vec<u64> = (0..left)
        .map(|_| u64::from(rng.next_u32()) % (u64::from(bounds.wmax) + 1))
        .collect();
    let graph = BipartiteGraph::new(left, right, edges)
        .expect("sweep edges are generated in range");
    Instance { graph, weights: WeightMap::new(weights), k }
}
