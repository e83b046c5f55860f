//! Edge-colored simple graphs and color-degree accounting.
//!
//! Vertex ids are stable: deleting a vertex masks it instead of renumbering,
//! so states produced by successive deletions can all be addressed with the
//! ids of the original graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::GraphError;
use crate::matching::Matching;

pub type Vertex = usize;
pub type Color = u64;

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

impl Edge {
    /// Builds an edge, swapping the endpoints into canonical order.
    pub fn new(a: Vertex, b: Vertex, color: Color) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, color }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        debug_assert!(self.touches(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl From<(Vertex, Vertex, Color)> for Edge {
    fn from((a, b, color): (Vertex, Vertex, Color)) -> Self {
        Edge::new(a, b, color)
    }
}

/// A simple undirected graph with one color per edge.
///
/// Immutable once built; every deletion returns a new graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoredGraph {
    n: usize,
    /// Sorted by `(u, v)`; pairs are unique.
    edges: Vec<Edge>,
    masked: Vec<bool>,
    /// Incident edge indices per vertex, ordered by neighbor id.
    adj: Vec<Vec<usize>>,
}

/// The edges of one color, with the number of components they span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClassView {
    pub color: Color,
    pub edges: Vec<Edge>,
    pub component_count: usize,
}

impl EdgeColoredGraph {
    /// Builds a graph on `n` vertices. Endpoints may be given in either order;
    /// self-loops, repeated pairs and out-of-range ids are rejected.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut list: Vec<Edge> = Vec::new();
        for e in edges {
            let e: Edge = e.into();
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            if e.v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.v, n });
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        Ok(Self::from_sorted(n, list, vec![false; n]))
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new(), vec![false; n])
    }

    fn from_sorted(n: usize, edges: Vec<Edge>, masked: Vec<bool>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push(i);
            adj[e.v].push(i);
        }
        for (x, list) in adj.iter_mut().enumerate() {
            list.sort_by_key(|&i| edges[i].other(x));
        }
        EdgeColoredGraph { n, edges, masked, adj }
    }

    /// Size of the vertex-id universe, including masked (deleted) ids.
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    /// Number of vertices that have not been deleted.
    pub fn vertex_count(&self) -> usize {
        self.masked.iter().filter(|&&m| !m).count()
    }

    pub fn is_live(&self, v: Vertex) -> bool {
        v < self.n && !self.masked[v]
    }

    /// Live vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| !self.masked[v])
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// The edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<&Edge> {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(u, v)))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edge_between(e.u, e.v).is_some_and(|found| found.color == e.color)
    }

    /// Edges at `v`, ordered by neighbor id. Panics if `v` is out of range.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.adj[v].iter().map(move |&i| &self.edges[i])
    }

    /// Neighbors of `v` in ascending order. Panics if `v` is out of range.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.incident(v).map(move |e| e.other(v))
    }

    /// Ordinary degree. Panics if `v` is out of range.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Number of distinct colors on edges at `v`.
    pub fn color_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.color_degree_of(v))
    }

    pub(crate) fn color_degree_of(&self, v: Vertex) -> usize {
        let mut colors: Vec<Color> = self.incident(v).map(|e| e.color).collect();
        colors.sort_unstable();
        colors.dedup();
        colors.len()
    }

    /// Color degree of every vertex id (masked ids report 0).
    pub fn color_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.color_degree_of(v)).collect()
    }

    /// Number of edges of color `color` at `v` (an edge count, not a 0/1 flag).
    pub fn color_degree_restricted(&self, v: Vertex, color: Color) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.incident(v).filter(|e| e.color == color).count())
    }

    /// Sum of all color degrees.
    pub fn total_color_degree(&self) -> usize {
        (0..self.n).map(|v| self.color_degree_of(v)).sum()
    }

    /// Minimum color degree over live vertices.
    pub fn min_color_degree(&self) -> Result<usize, GraphError> {
        self.vertices()
            .map(|v| self.color_degree_of(v))
            .min()
            .ok_or(GraphError::EmptyVertexSet)
    }

    /// Distinct colors present on edges.
    pub fn colors(&self) -> BTreeSet<Color> {
        self.edges.iter().map(|e| e.color).collect()
    }

    pub fn color_count(&self) -> usize {
        self.colors().len()
    }

    /// Edge count per color.
    pub fn class_sizes(&self) -> BTreeMap<Color, usize> {
        let mut sizes = BTreeMap::new();
        for e in &self.edges {
            *sizes.entry(e.color).or_insert(0) += 1;
        }
        sizes
    }

    /// Colors used on edges with one end in `xs` and the other in `ys`.
    pub fn colors_between(&self, xs: &[Vertex], ys: &[Vertex]) -> Result<BTreeSet<Color>, GraphError> {
        let mut in_x = vec![false; self.n];
        let mut in_y = vec![false; self.n];
        for &x in xs {
            self.check_vertex(x)?;
            in_x[x] = true;
        }
        for &y in ys {
            self.check_vertex(y)?;
            in_y[y] = true;
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| (in_x[e.u] && in_y[e.v]) || (in_x[e.v] && in_y[e.u]))
            .map(|e| e.color)
            .collect())
    }

    /// Number of edges colored `color`.
    pub fn class_size(&self, color: Color) -> usize {
        self.edges.iter().filter(|e| e.color == color).count()
    }

    pub fn color_class(&self, color: Color) -> ColorClassView {
        let edges: Vec<Edge> = self.edges.iter().filter(|e| e.color == color).copied().collect();
        let component_count = components_of(&edges).len();
        ColorClassView {
            color,
            edges,
            component_count,
        }
    }

    /// Number of components spanned by the edges of `color`.
    pub fn star_count(&self, color: Color) -> usize {
        self.class_components(color).len()
    }

    /// Components of one color class, each a sorted edge list, ordered by
    /// their smallest vertex.
    pub(crate) fn class_components(&self, color: Color) -> Vec<Vec<Edge>> {
        let edges: Vec<Edge> = self.edges.iter().filter(|e| e.color == color).copied().collect();
        components_of(&edges)
    }

    /// True iff every component of the `color` subgraph is a star.
    pub fn is_star_forest(&self, color: Color) -> bool {
        self.class_components(color).iter().all(|c| is_star(c))
    }

    /// The smallest color whose class is not a star forest.
    pub fn first_non_star_forest_color(&self) -> Option<Color> {
        self.colors().into_iter().find(|&c| !self.is_star_forest(c))
    }

    pub fn is_triangle_free(&self) -> bool {
        let nbrs = self.neighbor_lists();
        self.edges.iter().all(|e| !sorted_intersect(&nbrs[e.u], &nbrs[e.v]))
    }

    /// True iff no two distinct vertices share two common neighbors.
    pub fn is_c4_free(&self) -> bool {
        let mut seen = vec![false; self.n * self.n];
        for w in 0..self.n {
            let nb: Vec<Vertex> = self.neighbors(w).collect();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    let slot = &mut seen[a * self.n + b];
                    if *slot {
                        return false;
                    }
                    *slot = true;
                }
            }
        }
        true
    }

    pub fn is_properly_colored(&self) -> bool {
        (0..self.n).all(|v| self.color_degree_of(v) == self.degree(v))
    }

    /// True iff `m` is vertex-disjoint and color-distinct. Every edge of `m`
    /// must be present in the graph with the stated color.
    pub fn is_rainbow_matching(&self, m: &Matching) -> Result<bool, GraphError> {
        for e in m.edges() {
            if !self.contains_edge(e) {
                return Err(GraphError::EdgeNotInGraph {
                    u: e.u,
                    v: e.v,
                    color: e.color,
                });
            }
        }
        Ok(m.is_vertex_disjoint() && m.is_rainbow())
    }

    fn neighbor_lists(&self) -> Vec<Vec<Vertex>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    fn retain_edges(&self, masked: Vec<bool>, keep: impl Fn(&Edge) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .filter(|e| keep(e) && !masked[e.u] && !masked[e.v])
            .copied()
            .collect();
        Self::from_sorted(self.n, edges, masked)
    }

    /// `G - v`: masks `v` and drops its edges. Ids are not renumbered.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        let mut masked = self.masked.clone();
        masked[v] = true;
        Ok(self.retain_edges(masked, |_| true))
    }

    /// `G - R`: drops every edge of `color`.
    pub fn delete_color(&self, color: Color) -> Self {
        self.retain_edges(self.masked.clone(), |e| e.color != color)
    }

    /// Drops the edge `{u, v}`; errors if it does not exist.
    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let Some(&target) = self.edge_between(u, v) else {
            return Err(GraphError::NoSuchEdge(u, v));
        };
        Ok(self.retain_edges(self.masked.clone(), |e| *e != target))
    }

    /// `G[S]`: masks every vertex outside `keep`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<Self, GraphError> {
        let mut inside = vec![false; self.n];
        for &v in keep {
            self.check_vertex(v)?;
            inside[v] = true;
        }
        let masked = (0..self.n).map(|v| self.masked[v] || !inside[v]).collect();
        Ok(self.retain_edges(masked, |_| true))
    }

    /// Gives every edge of color `from` the color `into`.
    pub fn recolor(&self, from: Color, into: Color) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                if e.color == from {
                    Edge { color: into, ..*e }
                } else {
                    *e
                }
            })
            .collect();
        Self::from_sorted(self.n, edges, self.masked.clone())
    }

    /// Same vertex mask, different edge set. Edges must be a subset of ours.
    pub(crate) fn with_edges(&self, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        Self::from_sorted(self.n, edges, self.masked.clone())
    }
}

fn sorted_intersect(a: &[Vertex], b: &[Vertex]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Connected components of an edge set, ordered by smallest vertex.
pub(crate) fn components_of(edges: &[Edge]) -> Vec<Vec<Edge>> {
    let mut verts: Vec<Vertex> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let index = |x: Vertex| verts.binary_search(&x).unwrap();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (find(&mut parent, index(e.u)), find(&mut parent, index(e.v)));
        if a != b {
            // Root at the smaller index so roots are smallest vertices.
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();
    for e in edges {
        let root = find(&mut parent, index(e.u));
        groups.entry(root).or_default().push(*e);
    }
    groups
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g
        })
        .collect()
}

/// A connected edge set is a star iff it is a tree with at most one vertex
/// of degree above one.
pub(crate) fn is_star(component: &[Edge]) -> bool {
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    for e in component {
        *deg.entry(e.u).or_insert(0) += 1;
        *deg.entry(e.v).or_insert(0) += 1;
    }
    component.len() + 1 == deg.len() && deg.values().filter(|&&d| d > 1).count() <= 1
}
