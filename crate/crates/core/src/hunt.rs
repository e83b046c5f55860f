//! Counterexample search for the conjecture that total color degree at
//! least `2mn` forces a rainbow matching of size `m`.
//!
//! Exhaustive mode walks every labeled simple graph on up to `n_max`
//! vertices with every coloring written as a restricted-growth sequence over
//! the lexicographic edge order (so color permutations are visited once).
//! Random mode draws near-threshold instances from seeded generators.
//!
//! Reports merge associatively and commutatively, so any partition of the
//! work over any number of threads yields the same final report.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::exact::{max_rainbow_matching, NodeBudget};
use crate::generate::{derive_seed, gen_near_threshold, gen_random, GenConfig, GenKind, SeededRng};
use crate::graph::{Color, Edge, EdgeColoredGraph, Vertex};
use crate::instance::emit_instance;

/// How many near-misses a report keeps.
pub const NEAR_MISS_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuntMode {
    Exhaustive,
    Random,
}

/// An instance meeting the degree hypothesis whose maximum rainbow matching
/// is exactly the target size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearMiss {
    pub graph: EdgeColoredGraph,
    pub m: usize,
    /// `d̂(G) - 2mn`
    pub slack: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: EdgeColoredGraph,
    pub m: usize,
    pub max_size: usize,
    pub total_color_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuntReport {
    pub mode: HuntMode,
    pub instances_examined: u64,
    /// `(G, m)` pairs meeting the degree hypothesis.
    pub pairs_checked: u64,
    /// Pairs left undecided by the node budget.
    pub unknown: u64,
    /// 0 for the conjecture; 1 asks for size `m + 1` instead.
    pub target_offset: usize,
    pub counterexample: Option<Counterexample>,
    pub near_misses: Vec<NearMiss>,
    /// Wall time; excluded from [`HuntReport::render`].
    pub elapsed: Duration,
}

fn graph_key(g: &EdgeColoredGraph) -> (usize, &[Edge]) {
    (g.n_vertices(), g.edges())
}

fn edge_list(g: &EdgeColoredGraph) -> String {
    let parts: Vec<String> = g
        .edges()
        .iter()
        .map(|e| format!("{}-{}:{}", e.u, e.v, e.color))
        .collect();
    parts.join(" ")
}

impl HuntReport {
    pub fn empty(mode: HuntMode, target_offset: usize) -> Self {
        HuntReport {
            mode,
            instances_examined: 0,
            pairs_checked: 0,
            unknown: 0,
            target_offset,
            counterexample: None,
            near_misses: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Combines two partial reports. The smallest counterexample (by vertex
    /// count, edge list, then m) wins; near-misses keep the tightest ones.
    pub fn merge(mut self, other: HuntReport) -> HuntReport {
        self.instances_examined += other.instances_examined;
        self.pairs_checked += other.pairs_checked;
        self.unknown += other.unknown;
        self.elapsed = self.elapsed.max(other.elapsed);
        self.counterexample = match (self.counterexample.take(), other.counterexample) {
            (Some(a), Some(b)) => {
                if (graph_key(&b.graph), b.m) < (graph_key(&a.graph), a.m) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
            (a, b) => a.or(b),
        };
        self.near_misses.extend(other.near_misses);
        self.trim_near_misses();
        self
    }

    fn trim_near_misses(&mut self) {
        self.near_misses
            .sort_by(|a, b| (a.slack, graph_key(&a.graph), a.m).cmp(&(b.slack, graph_key(&b.graph), b.m)));
        self.near_misses.truncate(NEAR_MISS_LIMIT);
    }

    /// Checks every `m` whose degree hypothesis `g` meets.
    fn examine(&mut self, g: &EdgeColoredGraph, budget: NodeBudget) {
        self.instances_examined += 1;
        let n = g.vertex_count();
        let total = g.total_color_degree();
        let targets: Vec<usize> = (1..=n / 2).filter(|&m| total >= 2 * m * n).collect();
        if targets.is_empty() {
            return;
        }
        let solved = max_rainbow_matching(g, budget);
        for m in targets {
            self.pairs_checked += 1;
            let need = m + self.target_offset;
            if solved.size >= need {
                if solved.size == need && !solved.budget_exhausted {
                    self.near_misses.push(NearMiss {
                        graph: g.clone(),
                        m,
                        slack: total - 2 * m * n,
                    });
                    if self.near_misses.len() > 4 * NEAR_MISS_LIMIT {
                        self.trim_near_misses();
                    }
                }
            } else if solved.budget_exhausted {
                self.unknown += 1;
            } else {
                let candidate = Counterexample {
                    graph: g.clone(),
                    m,
                    max_size: solved.size,
                    total_color_degree: total,
                };
                let mut single = HuntReport::empty(self.mode, self.target_offset);
                single.counterexample = Some(candidate);
                let merged = std::mem::replace(self, HuntReport::empty(self.mode, self.target_offset)).merge(single);
                *self = merged;
            }
        }
    }

    /// Re-checks a counterexample twice with an unbounded exact solve.
    fn confirm(self) -> Self {
        if let Some(c) = &self.counterexample {
            let need = c.m + self.target_offset;
            for _ in 0..2 {
                let again = max_rainbow_matching(&c.graph, NodeBudget::Unlimited);
                assert!(
                    again.size < need && c.graph.total_color_degree() >= 2 * c.m * c.graph.vertex_count(),
                    "counterexample failed re-verification:\n{}",
                    emit_instance(&c.graph)
                );
            }
        }
        self
    }

    /// Canonical text, identical for identical searches.
    pub fn render(&self) -> String {
        let mode = match self.mode {
            HuntMode::Exhaustive => "exhaustive",
            HuntMode::Random => "random",
        };
        let mut out = format!(
            "hunt mode={} target=m+{} instances={} pairs={} unknown={} counterexample={}\n",
            mode,
            self.target_offset,
            self.instances_examined,
            self.pairs_checked,
            self.unknown,
            if self.counterexample.is_some() { "FOUND" } else { "none" }
        );
        if let Some(c) = &self.counterexample {
            out += &format!(
                "counterexample n={} m={} total={} max={} edges={}\n",
                c.graph.n_vertices(),
                c.m,
                c.total_color_degree,
                c.max_size,
                edge_list(&c.graph)
            );
        }
        for (rank, nm) in self.near_misses.iter().enumerate() {
            out += &format!(
                "near {} n={} m={} slack={} edges={}\n",
                rank + 1,
                nm.graph.n_vertices(),
                nm.m,
                nm.slack,
                edge_list(&nm.graph)
            );
        }
        out
    }

    /// Writes `cex_<hash>.ecg` and `near_<rank>.ecg` files into `dir`.
    pub fn write_artifacts(&self, dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        if let Some(c) = &self.counterexample {
            let body = emit_instance(&c.graph);
            let digest = format!("{:x}", Sha256::digest(body.as_bytes()));
            let path = dir.join(format!("cex_{}.ecg", &digest[..16]));
            let text = format!(
                "# counterexample: total color degree {} >= 2mn with m = {}, max rainbow matching {}\n{}",
                c.total_color_degree, c.m, c.max_size, body
            );
            fs::write(&path, text)?;
            written.push(path);
        }
        for (rank, nm) in self.near_misses.iter().enumerate() {
            let path = dir.join(format!("near_{}.ecg", rank + 1));
            let text = format!(
                "# near miss: m = {}, slack = {}\n{}",
                nm.m,
                nm.slack,
                emit_instance(&nm.graph)
            );
            fs::write(&path, text)?;
            written.push(path);
        }
        Ok(written)
    }
}

fn in_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(work)
}

/// Restricted-growth sequences of length `len` with values below `max_colors`.
pub fn restricted_growth_sequences(len: usize, max_colors: usize) -> Vec<Vec<Color>> {
    fn grow(seq: &mut Vec<Color>, used: Color, len: usize, cap: Color, out: &mut Vec<Vec<Color>>) {
        if seq.len() == len {
            out.push(seq.clone());
            return;
        }
        for c in 0..=used.min(cap.saturating_sub(1)) {
            if c >= cap {
                break;
            }
            seq.push(c);
            grow(seq, used.max(c + 1), len, cap, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 || max_colors > 0 {
        grow(&mut Vec::with_capacity(len), 0, len, max_colors as Color, &mut out);
    }
    out
}

fn all_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every colored graph on `1..=n_max` vertices with at most `color_max`
/// colors, checked for every `m` in `1..=n/2`.
pub fn hunt_exhaustive(n_max: usize, color_max: usize, jobs: usize) -> HuntReport {
    hunt_exhaustive_with(n_max, color_max, 0, jobs)
}

/// [`hunt_exhaustive`] with the target size raised to `m + target_offset`.
pub fn hunt_exhaustive_with(n_max: usize, color_max: usize, target_offset: usize, jobs: usize) -> HuntReport {
    let start = Instant::now();
    let work: Vec<(usize, u64)> = (1..=n_max)
        .flat_map(|n| {
            let p = n * (n - 1) / 2;
            (0..1u64 << p).map(move |mask| (n, mask))
        })
        .collect();
    let report = in_pool(jobs, || {
        work.par_iter()
            .map(|&(n, mask)| {
                let mut part = HuntReport::empty(HuntMode::Exhaustive, target_offset);
                let chosen: Vec<(Vertex, Vertex)> = all_pairs(n)
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, p)| p)
                    .collect();
                for colors in restricted_growth_sequences(chosen.len(), color_max) {
                    let g = EdgeColoredGraph::new(n, chosen.iter().zip(&colors).map(|(&(u, v), &c)| (u, v, c)))
                        .expect("distinct pairs");
                    part.examine(&g, NodeBudget::Unlimited);
                }
                part
            })
            .reduce(
                || HuntReport::empty(HuntMode::Exhaustive, target_offset),
                HuntReport::merge,
            )
    });
    HuntReport {
        elapsed: start.elapsed(),
        ..report.confirm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomHuntConfig {
    pub seed: u64,
    pub trials: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub budget: NodeBudget,
    pub target_offset: usize,
}

impl Default for RandomHuntConfig {
    fn default() -> Self {
        RandomHuntConfig {
            seed: 0,
            trials: 1000,
            n_min: 4,
            n_max: 12,
            m_min: 1,
            m_max: 3,
            p_min: 0.3,
            p_max: 1.0,
            budget: NodeBudget::Default,
            target_offset: 0,
        }
    }
}

/// The instance examined by trial `t`: a near-threshold graph when the
/// drawn parameters allow one, otherwise a uniformly colored random graph.
pub fn random_trial_instance(config: &RandomHuntConfig, t: u64) -> (EdgeColoredGraph, GenKind) {
    let mut rng = SeededRng::new(derive_seed(config.seed, t));
    let n = rng.between(config.n_min as u64, config.n_max.max(config.n_min) as u64) as usize;
    let m_hi = config.m_max.min(n.saturating_sub(1) / 2).max(config.m_min);
    let m = rng.between(config.m_min as u64, m_hi as u64) as usize;
    let p = config.p_min + rng.unit() * (config.p_max - config.p_min);
    let seed = rng.next_u64();
    let near = GenConfig::new(GenKind::NearThreshold, n, p, 0, seed).with_m(m);
    match gen_near_threshold(&near) {
        Ok(g) => (g, GenKind::NearThreshold),
        Err(_) => {
            let colors = rng.between(1, n.max(1) as u64);
            let fallback = GenConfig::new(GenKind::Random, n, p, colors, seed);
            (gen_random(&fallback).expect("valid config"), GenKind::Random)
        }
    }
}

pub fn hunt_random(config: &RandomHuntConfig, jobs: usize) -> HuntReport {
    let start = Instant::now();
    let offset = config.target_offset;
    let report = in_pool(jobs, || {
        (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let mut part = HuntReport::empty(HuntMode::Random, offset);
                let (g, _) = random_trial_instance(config, t);
                part.examine(&g, config.budget);
                part
            })
            .reduce(|| HuntReport::empty(HuntMode::Random, offset), HuntReport::merge)
    });
    HuntReport {
        elapsed: start.elapsed(),
        ..report.confirm()
    }
}
