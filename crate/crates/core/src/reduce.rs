//! Reduction of every color class to a star forest without changing any
//! vertex's color degree.
//!
//! Inside a monochromatic component that is not a star there is always an
//! edge whose two endpoints each keep another edge of that color (any edge on
//! a cycle, or the middle edge of a P4). Deleting it leaves every color set
//! at every vertex intact.

use crate::graph::{components_of, is_star, Edge, EdgeColoredGraph};

/// Deletes redundant edges until every color class is a star forest.
///
/// Colors are processed in ascending order, components by smallest vertex,
/// and within the first non-star component the lexicographically smallest
/// deletable edge goes first. The result is a subgraph with the same total
/// color degree, and the operation is idempotent.
pub fn reduce_to_star_forests(g: &EdgeColoredGraph) -> EdgeColoredGraph {
    let mut kept: Vec<Edge> = Vec::with_capacity(g.edge_count());
    let mut changed = false;
    for color in g.colors() {
        let mut class: Vec<Edge> = g.edges().iter().filter(|e| e.color == color).copied().collect();
        while let Some(victim) = next_deletion(&class) {
            class.retain(|e| *e != victim);
            changed = true;
        }
        kept.extend(class);
    }
    if changed {
        g.with_edges(kept)
    } else {
        g.clone()
    }
}

fn next_deletion(class: &[Edge]) -> Option<Edge> {
    let component = components_of(class).into_iter().find(|c| !is_star(c))?;
    let degree = |x| component.iter().filter(|e| e.touches(x)).count();
    // Components are sorted, so the first hit is the smallest edge.
    component.iter().copied().find(|e| degree(e.u) >= 2 && degree(e.v) >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_loses_its_middle_edge() {
        let g = EdgeColoredGraph::new(4, [(0, 1, 3), (1, 2, 3), (2, 3, 3)]).unwrap();
        let r = reduce_to_star_forests(&g);
        assert_eq!(r.edges(), &[Edge::new(0, 1, 3), Edge::new(2, 3, 3)]);
        assert_eq!(g.total_color_degree(), 4);
        assert_eq!(r.total_color_degree(), 4);
    }

    #[test]
    fn triangle_loses_one_edge() {
        let g = EdgeColoredGraph::new(3, [(0, 1, 5), (1, 2, 5), (0, 2, 5)]).unwrap();
        let r = reduce_to_star_forests(&g);
        assert_eq!(r.edge_count(), 2);
        assert_eq!(r.edges(), &[Edge::new(0, 2, 5), Edge::new(1, 2, 5)]);
        assert_eq!(r.total_color_degree(), 3);
        assert!(r.is_star_forest(5));
    }

    #[test]
    fn star_forest_is_a_fixed_point() {
        let g = EdgeColoredGraph::new(5, [(0, 1, 1), (0, 2, 1), (3, 4, 1), (1, 2, 2)]).unwrap();
        assert_eq!(reduce_to_star_forests(&g), g);
    }

    #[test]
    fn other_colors_untouched() {
        let g = EdgeColoredGraph::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 2), (0, 2, 7)]).unwrap();
        let r = reduce_to_star_forests(&g);
        assert!(r.edge_between(0, 3).is_some());
        assert!(r.edge_between(0, 2).is_some());
        assert!(r.edge_between(1, 2).is_none());
    }
}
