use std::collections::BTreeSet;
use std::fmt;

use crate::graph::{Color, Edge, Vertex};

/// A set of edges, kept sorted. Vertex-disjointness and rainbow-ness are
/// predicates, so non-rainbow matchings are representable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        Matching { edges }
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

    pub fn insert(&mut self, e: Edge) {
        let at = self.edges.binary_search(&e).unwrap_or_else(|i| i);
        self.edges.insert(at, e);
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.edges.iter().any(|e| e.touches(v))
    }

    pub fn uses_color(&self, c: Color) -> bool {
        self.edges.iter().any(|e| e.color == c)
    }

    pub fn colors(&self) -> BTreeSet<Color> {
        self.edges.iter().map(|e| e.color).collect()
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.u) && seen.insert(e.v))
    }

    /// Pairwise distinct colors.
    pub fn is_rainbow(&self) -> bool {
        self.colors().len() == self.edges.len()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}-{}:{}", e.u, e.v, e.color))
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}
