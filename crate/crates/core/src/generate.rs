//! Seeded instance generators.
//!
//! All randomness comes from SplitMix64 seeded directly with the 64-bit seed:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! out = z ^ (z >> 31)
//! ```
//!
//! with wrapping arithmetic. Draws derived from an output `x`:
//! a Bernoulli(p) trial is `(x >> 11) * 2^-53 < p`, a uniform integer below
//! `b` is the high word of the 128-bit product `x * b`, and shuffles are
//! Fisher-Yates from the last slot down. Vertex pairs are always visited in
//! lexicographic order. Together these make every generator a pure,
//! platform-independent function of its [`GenConfig`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::graph::{Color, Edge, EdgeColoredGraph, Vertex};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Deterministic random source used by every generator.
#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, bound)`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Uniform in `[lo, hi]`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Seed for the `index`-th member of a family rooted at `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    SeededRng::new(base ^ index.wrapping_mul(GOLDEN_GAMMA)).next_u64()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    Random,
    TriangleFree,
    C4Free,
    Proper,
    NearThreshold,
}

impl GenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Random => "random",
            GenKind::TriangleFree => "triangle-free",
            GenKind::C4Free => "c4-free",
            GenKind::Proper => "proper",
            GenKind::NearThreshold => "near-threshold",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.replace('_', "-").as_str() {
            "random" => Ok(GenKind::Random),
            "triangle-free" | "tri" => Ok(GenKind::TriangleFree),
            "c4-free" | "c4" => Ok(GenKind::C4Free),
            "proper" => Ok(GenKind::Proper),
            "near-threshold" => Ok(GenKind::NearThreshold),
            other => Err(format!("unknown generator kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub kind: GenKind,
    pub n: usize,
    pub edge_probability: f64,
    /// Colors are drawn from `0..color_count`. Ignored by the proper and
    /// near-threshold generators, which choose their own colors.
    pub color_count: u64,
    pub seed: u64,
    /// Target matching size; required by the near-threshold generator.
    pub m: Option<usize>,
}

impl GenConfig {
    pub fn new(kind: GenKind, n: usize, edge_probability: f64, color_count: u64, seed: u64) -> Self {
        GenConfig {
            kind,
            n,
            edge_probability,
            color_count,
            seed,
            m: None,
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("edge probability {0} is not in [0, 1]")]
    InvalidProbability(f64),
    #[error("color count must be positive")]
    NoColors,
    #[error("the near-threshold generator needs a target m")]
    MissingTarget,
    #[error("total color degree {total} of the rainbow start is below the threshold {threshold}")]
    WindowUnreachable { total: usize, threshold: usize },
}

fn check(config: &GenConfig, needs_colors: bool) -> Result<(), GenError> {
    let p = config.edge_probability;
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability(p));
    }
    if needs_colors && config.color_count == 0 && p > 0.0 {
        return Err(GenError::NoColors);
    }
    Ok(())
}

fn pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

fn build(n: usize, edges: Vec<Edge>) -> EdgeColoredGraph {
    EdgeColoredGraph::new(n, edges).expect("generators emit simple graphs")
}

/// Erdős–Rényi pairs with uniform colors.
pub fn gen_random(config: &GenConfig) -> Result<EdgeColoredGraph, GenError> {
    check(config, true)?;
    let mut rng = SeededRng::new(config.seed);
    let mut edges = Vec::new();
    for (u, v) in pairs(config.n) {
        if rng.chance(config.edge_probability) {
            edges.push(Edge::new(u, v, rng.below(config.color_count)));
        }
    }
    Ok(build(config.n, edges))
}

/// Random balanced bipartition, then random cross edges.
pub fn gen_triangle_free(config: &GenConfig) -> Result<EdgeColoredGraph, GenError> {
    check(config, true)?;
    let mut rng = SeededRng::new(config.seed);
    let mut order: Vec<Vertex> = (0..config.n).collect();
    rng.shuffle(&mut order);
    let mut left = vec![false; config.n];
    for &v in &order[..config.n / 2] {
        left[v] = true;
    }
    let mut edges = Vec::new();
    for (u, v) in pairs(config.n).filter(|&(u, v)| left[u] != left[v]) {
        if rng.chance(config.edge_probability) {
            edges.push(Edge::new(u, v, rng.below(config.color_count)));
        }
    }
    Ok(build(config.n, edges))
}

/// Would adding `uv` close a 4-cycle `u - v - y - x - u`?
fn closes_c4(adj: &[Vec<bool>], u: Vertex, v: Vertex) -> bool {
    let n = adj.len();
    (0..n)
        .filter(|&x| x != v && adj[u][x])
        .any(|x| (0..n).any(|y| y != u && y != x && adj[v][y] && adj[x][y]))
}

/// All pairs in shuffled order; each is offered with the edge probability
/// and accepted unless it would close a 4-cycle.
pub fn gen_c4_free(config: &GenConfig) -> Result<EdgeColoredGraph, GenError> {
    check(config, true)?;
    let mut rng = SeededRng::new(config.seed);
    let mut candidates: Vec<(Vertex, Vertex)> = pairs(config.n).collect();
    rng.shuffle(&mut candidates);
    let mut adj = vec![vec![false; config.n]; config.n];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if rng.chance(config.edge_probability) && !closes_c4(&adj, u, v) {
            adj[u][v] = true;
            adj[v][u] = true;
            edges.push(Edge::new(u, v, rng.below(config.color_count)));
        }
    }
    Ok(build(config.n, edges))
}

/// Colors pairs in the given order, each with the smallest color absent at
/// both endpoints. Uses at most `2Δ - 1` colors.
pub fn greedy_proper_coloring(n: usize, pairs: &[(Vertex, Vertex)]) -> Vec<Edge> {
    let mut seen: Vec<BTreeSet<Color>> = vec![BTreeSet::new(); n];
    pairs
        .iter()
        .map(|&(u, v)| {
            let c = (0..)
                .find(|c| !seen[u].contains(c) && !seen[v].contains(c))
                .expect("unbounded range");
            seen[u].insert(c);
            seen[v].insert(c);
            Edge::new(u, v, c)
        })
        .collect()
}

pub fn gen_proper(config: &GenConfig) -> Result<EdgeColoredGraph, GenError> {
    check(config, false)?;
    let mut rng = SeededRng::new(config.seed);
    let chosen: Vec<(Vertex, Vertex)> = pairs(config.n)
        .filter(|_| rng.chance(config.edge_probability))
        .collect();
    Ok(build(config.n, greedy_proper_coloring(config.n, &chosen)))
}

/// Rainbow random graph whose color classes are merged, two smallest first
/// (by size, then color id, the smaller key recolored into the other), until
/// the total color degree lands in `[2mn, 2mn + 2n)`.
///
/// A merge lowers the total by the number of vertices seeing both classes,
/// at most `n`, so the window cannot be skipped once the start is at or
/// above `2mn`.
pub fn gen_near_threshold(config: &GenConfig) -> Result<EdgeColoredGraph, GenError> {
    check(config, false)?;
    let m = config.m.ok_or(GenError::MissingTarget)?;
    let n = config.n;
    let mut rng = SeededRng::new(config.seed);
    let edges: Vec<Edge> = pairs(n)
        .filter(|_| rng.chance(config.edge_probability))
        .enumerate()
        .map(|(i, (u, v))| Edge::new(u, v, i as Color))
        .collect();

    let threshold = 2 * m * n;
    let mut total = 2 * edges.len();
    if total < threshold {
        return Err(GenError::WindowUnreachable { total, threshold });
    }

    let mut g = build(n, edges);
    while total >= threshold + 2 * n {
        let mut keys: Vec<(usize, Color)> = g.class_sizes().into_iter().map(|(c, k)| (k, c)).collect();
        if keys.len() < 2 {
            break;
        }
        keys.sort_unstable();
        g = g.recolor(keys[0].1, keys[1].1);
        total = g.total_color_degree();
    }
    Ok(g)
}

/// Dispatches on `config.kind`.
pub fn generate(config: &GenConfig) -> Result<EdgeColoredGraph, GenError> {
    match config.kind {
        GenKind::Random => gen_random(config),
        GenKind::TriangleFree => gen_triangle_free(config),
        GenKind::C4Free => gen_c4_free(config),
        GenKind::Proper => gen_proper(config),
        GenKind::NearThreshold => gen_near_threshold(config),
    }
}
