//! Exact maximum rainbow matching by depth-first branch and bound.
//!
//! Edges are branched in a fixed order (endpoint degree sum descending, ties
//! lexicographic), include-branch first. A node is pruned when the chosen
//! edges plus an upper bound on what the remaining edges can add cannot beat
//! the incumbent. The bound is the minimum of half the free vertices touched
//! by usable remaining edges, the distinct unused colors on them, and their
//! count.

use std::collections::BTreeMap;

use crate::graph::{Edge, EdgeColoredGraph};
use crate::matching::Matching;

/// Node limit applied by [`NodeBudget::Default`] on graphs above
/// [`DEFAULT_UNLIMITED_MAX_N`] vertices.
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_UNLIMITED_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NodeBudget {
    /// Unlimited up to 20 vertices, otherwise 10^7 nodes.
    #[default]
    Default,
    Unlimited,
    Limit(u64),
}

impl NodeBudget {
    fn resolve(self, n: usize) -> Option<u64> {
        match self {
            NodeBudget::Default if n <= DEFAULT_UNLIMITED_MAX_N => None,
            NodeBudget::Default => Some(DEFAULT_NODE_LIMIT),
            NodeBudget::Unlimited => None,
            NodeBudget::Limit(k) => Some(k),
        }
    }
}

impl From<Option<u64>> for NodeBudget {
    fn from(limit: Option<u64>) -> Self {
        limit.map_or(NodeBudget::Default, NodeBudget::Limit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub size: usize,
    pub witness: Matching,
    pub nodes_explored: u64,
    /// When set, `size` is only a lower bound.
    pub budget_exhausted: bool,
}

/// Outcome of a decision query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Found(Matching),
    Absent,
    Unknown,
}

impl Decision {
    pub fn is_found(&self) -> bool {
        matches!(self, Decision::Found(_))
    }
}

struct Search {
    /// (u, v, dense color) in branching order.
    edges: Vec<(usize, usize, usize)>,
    used_vertex: Vec<bool>,
    used_color: Vec<bool>,
    vertex_stamp: Vec<u32>,
    color_stamp: Vec<u32>,
    stamp: u32,
    chosen: Vec<usize>,
    best: Vec<usize>,
    /// Stop as soon as `best` reaches this size.
    target: usize,
    /// Prune subtrees that cannot exceed this size.
    floor: usize,
    nodes: u64,
    limit: Option<u64>,
    exhausted: bool,
}

impl Search {
    fn new(g: &EdgeColoredGraph, budget: NodeBudget, target: usize, floor: usize) -> (Self, Vec<Edge>) {
        let colors: BTreeMap<_, usize> = g.colors().into_iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut order: Vec<Edge> = g.edges().to_vec();
        // stable: lexicographic order survives among equal degree sums
        order.sort_by_key(|e| std::cmp::Reverse(g.degree(e.u) + g.degree(e.v)));
        let edges = order.iter().map(|e| (e.u, e.v, colors[&e.color])).collect();
        let n = g.n_vertices();
        let search = Search {
            edges,
            used_vertex: vec![false; n],
            used_color: vec![false; colors.len()],
            vertex_stamp: vec![0; n],
            color_stamp: vec![0; colors.len()],
            stamp: 0,
            chosen: Vec::new(),
            best: Vec::new(),
            target,
            floor,
            nodes: 0,
            limit: budget.resolve(n),
            exhausted: false,
        };
        (search, order)
    }

    fn usable(&self, i: usize) -> bool {
        let (u, v, c) = self.edges[i];
        !self.used_vertex[u] && !self.used_vertex[v] && !self.used_color[c]
    }

    fn bound(&mut self, from: usize) -> usize {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.vertex_stamp.fill(0);
            self.color_stamp.fill(0);
            self.stamp = 1;
        }
        let (mut verts, mut colors, mut count) = (0, 0, 0);
        for i in from..self.edges.len() {
            if !self.usable(i) {
                continue;
            }
            let (u, v, c) = self.edges[i];
            count += 1;
            for x in [u, v] {
                if self.vertex_stamp[x] != self.stamp {
                    self.vertex_stamp[x] = self.stamp;
                    verts += 1;
                }
            }
            if self.color_stamp[c] != self.stamp {
                self.color_stamp[c] = self.stamp;
                colors += 1;
            }
        }
        (verts / 2).min(colors).min(count)
    }

    fn run(&mut self, idx: usize) {
        if self.exhausted || self.best.len() >= self.target {
            return;
        }
        if self.limit.is_some_and(|l| self.nodes >= l) {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if self.chosen.len() > self.best.len() {
            self.best.clone_from(&self.chosen);
            if self.best.len() >= self.target {
                return;
            }
        }
        if idx == self.edges.len() {
            return;
        }
        let bound = self.bound(idx);
        if self.chosen.len() + bound <= self.best.len().max(self.floor) {
            return;
        }
        if self.usable(idx) {
            let (u, v, c) = self.edges[idx];
            self.used_vertex[u] = true;
            self.used_vertex[v] = true;
            self.used_color[c] = true;
            self.chosen.push(idx);
            self.run(idx + 1);
            self.chosen.pop();
            self.used_vertex[u] = false;
            self.used_vertex[v] = false;
            self.used_color[c] = false;
        }
        self.run(idx + 1);
    }
}

/// Trivial upper bound: half the non-isolated vertices, and the color count.
fn trivial_upper_bound(g: &EdgeColoredGraph) -> usize {
    let touched = (0..g.n_vertices()).filter(|&v| g.degree(v) > 0).count();
    (touched / 2).min(g.color_count())
}

/// Maximum rainbow matching. Deterministic: among equal-size optima the
/// first one reached in branching order is the witness.
pub fn max_rainbow_matching(g: &EdgeColoredGraph, budget: NodeBudget) -> SolveResult {
    let ceiling = trivial_upper_bound(g);
    let (mut search, order) = Search::new(g, budget, ceiling, 0);
    search.run(0);
    let witness = Matching::new(search.best.iter().map(|&i| order[i]));
    SolveResult {
        size: witness.len(),
        witness,
        nodes_explored: search.nodes,
        budget_exhausted: search.exhausted,
    }
}

/// Early-exit decision: is there a rainbow matching with `m` edges?
pub fn has_rainbow_matching(g: &EdgeColoredGraph, m: usize, budget: NodeBudget) -> Decision {
    if m == 0 {
        return Decision::Found(Matching::default());
    }
    if trivial_upper_bound(g) < m {
        return Decision::Absent;
    }
    let (mut search, order) = Search::new(g, budget, m, m - 1);
    search.run(0);
    if search.best.len() >= m {
        Decision::Found(Matching::new(search.best.iter().map(|&i| order[i])))
    } else if search.exhausted {
        Decision::Unknown
    } else {
        Decision::Absent
    }
}

/// Every rainbow matching with at most `max_size` edges, each exactly once,
/// in lexicographic order of edge-index sequences (edges in sorted order).
/// Exponential; meant for small graphs.
pub fn enumerate_rainbow_matchings(g: &EdgeColoredGraph, max_size: usize) -> RainbowMatchings<'_> {
    let colors: BTreeMap<_, usize> = g.colors().into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let dense = g.edges().iter().map(|e| colors[&e.color]).collect();
    RainbowMatchings {
        g,
        dense,
        max_size,
        stack: Vec::new(),
        used_vertex: vec![false; g.n_vertices()],
        used_color: vec![false; colors.len()],
        started: false,
        done: false,
    }
}

pub struct RainbowMatchings<'a> {
    g: &'a EdgeColoredGraph,
    dense: Vec<usize>,
    max_size: usize,
    stack: Vec<usize>,
    used_vertex: Vec<bool>,
    used_color: Vec<bool>,
    started: bool,
    done: bool,
}

impl RainbowMatchings<'_> {
    fn fits(&self, i: usize) -> bool {
        let e = self.g.edges()[i];
        !self.used_vertex[e.u] && !self.used_vertex[e.v] && !self.used_color[self.dense[i]]
    }

    fn first_fit(&self, from: usize) -> Option<usize> {
        (from..self.dense.len()).find(|&i| self.fits(i))
    }

    fn mark(&mut self, i: usize, on: bool) {
        let e = self.g.edges()[i];
        self.used_vertex[e.u] = on;
        self.used_vertex[e.v] = on;
        self.used_color[self.dense[i]] = on;
    }

    fn push(&mut self, i: usize) -> Matching {
        self.mark(i, true);
        self.stack.push(i);
        Matching::new(self.stack.iter().map(|&j| self.g.edges()[j]))
    }
}

impl Iterator for RainbowMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Matching::default());
        }
        if self.stack.len() < self.max_size {
            let from = self.stack.last().map_or(0, |&l| l + 1);
            if let Some(j) = self.first_fit(from) {
                return Some(self.push(j));
            }
        }
        while let Some(last) = self.stack.pop() {
            self.mark(last, false);
            if let Some(j) = self.first_fit(last + 1) {
                return Some(self.push(j));
            }
        }
        self.done = true;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color;

    fn g(n: usize, edges: &[(usize, usize, Color)]) -> EdgeColoredGraph {
        EdgeColoredGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn alternating_c4() -> EdgeColoredGraph {
        g(4, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (0, 3, 2)])
    }

    fn proper_k4() -> EdgeColoredGraph {
        g(4, &[(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)])
    }

    fn rainbow_k33() -> EdgeColoredGraph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b, (a * 3 + b) as Color));
            }
        }
        g(6, &edges)
    }

    #[test]
    fn disjoint_edges() {
        let rainbow = g(6, &[(0, 1, 1), (2, 3, 2), (4, 5, 3)]);
        let r = max_rainbow_matching(&rainbow, NodeBudget::Default);
        assert_eq!(r.size, 3);
        assert!(!r.budget_exhausted);
        assert_eq!(rainbow.is_rainbow_matching(&r.witness), Ok(true));

        let mono = g(6, &[(0, 1, 1), (2, 3, 1), (4, 5, 1)]);
        assert_eq!(max_rainbow_matching(&mono, NodeBudget::Default).size, 1);
    }

    #[test]
    fn alternating_c4_has_only_single_edges() {
        let r = max_rainbow_matching(&alternating_c4(), NodeBudget::Default);
        assert_eq!(r.size, 1);
    }

    #[test]
    fn proper_k4_perfect_matchings_are_its_color_classes() {
        // Each of the three perfect matchings of K4 is one color class, so no
        // rainbow 2-matching exists.
        let k4 = proper_k4();
        let brute = enumerate_rainbow_matchings(&k4, usize::MAX).map(|m| m.len()).max();
        assert_eq!(brute, Some(1));
        let r = max_rainbow_matching(&k4, NodeBudget::Default);
        assert_eq!(r.size, 1);
        assert_eq!(k4.is_rainbow_matching(&r.witness), Ok(true));
    }

    #[test]
    fn decision_examples() {
        let single = g(2, &[(0, 1, 1)]);
        assert_eq!(
            has_rainbow_matching(&single, 0, NodeBudget::Default),
            Decision::Found(Matching::default())
        );
        assert_eq!(has_rainbow_matching(&single, 2, NodeBudget::Default), Decision::Absent);
        match has_rainbow_matching(&rainbow_k33(), 3, NodeBudget::Default) {
            Decision::Found(m) => {
                assert_eq!(m.len(), 3);
                assert_eq!(rainbow_k33().is_rainbow_matching(&m), Ok(true));
            }
            other => panic!("expected a matching, got {other:?}"),
        }
        assert_eq!(
            has_rainbow_matching(&alternating_c4(), 2, NodeBudget::Default),
            Decision::Absent
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = max_rainbow_matching(&rainbow_k33(), NodeBudget::Limit(1));
        assert!(r.budget_exhausted);
        assert!(r.size <= 3);
        assert_eq!(
            has_rainbow_matching(&proper_k4(), 2, NodeBudget::Limit(0)),
            Decision::Unknown
        );
    }

    #[test]
    fn default_budget_resolution() {
        assert_eq!(NodeBudget::Default.resolve(20), None);
        assert_eq!(NodeBudget::Default.resolve(21), Some(DEFAULT_NODE_LIMIT));
        assert_eq!(NodeBudget::Unlimited.resolve(100), None);
    }

    #[test]
    fn enumeration_examples() {
        let single = g(2, &[(0, 1, 4)]);
        let all: Vec<Matching> = enumerate_rainbow_matchings(&single, 5).collect();
        assert_eq!(all, vec![Matching::default(), Matching::new([Edge::new(0, 1, 4)])]);

        let twin = g(4, &[(0, 1, 1), (2, 3, 1)]);
        let all: Vec<Matching> = enumerate_rainbow_matchings(&twin, 2).collect();
        assert_eq!(
            all,
            vec![
                Matching::default(),
                Matching::new([Edge::new(0, 1, 1)]),
                Matching::new([Edge::new(2, 3, 1)]),
            ]
        );

        assert_eq!(enumerate_rainbow_matchings(&alternating_c4(), usize::MAX).count(), 5);
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let h = g(6, &[(0, 1, 1), (2, 3, 2), (4, 5, 3)]);
        let seqs: Vec<Vec<Edge>> = enumerate_rainbow_matchings(&h, 3).map(|m| m.edges().to_vec()).collect();
        let e: Vec<Edge> = h.edges().to_vec();
        assert_eq!(
            seqs,
            vec![
                vec![],
                vec![e[0]],
                vec![e[0], e[1]],
                vec![e[0], e[1], e[2]],
                vec![e[0], e[2]],
                vec![e[1]],
                vec![e[1], e[2]],
                vec![e[2]],
            ]
        );
        // size cap
        assert_eq!(enumerate_rainbow_matchings(&h, 1).count(), 4);
        assert_eq!(enumerate_rainbow_matchings(&h, 0).count(), 1);
    }
}
