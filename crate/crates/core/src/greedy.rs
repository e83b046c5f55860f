//! Greedy peeling with matching reconstruction.
//!
//! Starting from `G_0 = G`, each step deletes something from the current
//! graph `G_i` according to the first rule that fires, with `r = m - i`:
//!
//! 1. a vertex of color degree at least `3r + 1`;
//! 2. a whole color class with at least `2r + 1` edges (proper mode) or
//!    spanning at least `2r + 1` stars (general mode);
//! 3. general mode only: a vertex `v` together with a color `R` such that
//!    `v` has at least `3r + 1` edges of color `R`;
//! 4. any edge `uv`, together with `u`, `v` and the class of `uv`.
//!
//! Each step can later be undone into one extra rainbow matching edge, so a
//! peel of `k` steps certifies a rainbow matching of size `k`. Peeling stops
//! after `m` steps: the thresholds only support reconstruction while `r > 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{Color, Edge, EdgeColoredGraph, Vertex};
use crate::matching::Matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeelMode {
    Proper,
    General,
}

impl PeelMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PeelMode::Proper => "proper",
            PeelMode::General => "general",
        }
    }
}

impl FromStr for PeelMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "proper" => Ok(PeelMode::Proper),
            "general" => Ok(PeelMode::General),
            other => Err(format!("unknown peel mode `{other}`")),
        }
    }
}

/// What a peel step deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeelKind {
    DeleteVertex(Vertex),
    DeleteColorClass(Color),
    DeleteVertexAndColor(Vertex, Color),
    DeleteEdgeAndColor(Vertex, Vertex, Color),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeelStep {
    /// Step `i` turns `G_i` into `G_{i+1}`.
    pub index: usize,
    pub kind: PeelKind,
    /// Drop in total color degree caused by this step.
    pub weight: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeelTrace {
    pub mode: PeelMode,
    pub target_m: usize,
    pub steps: Vec<PeelStep>,
}

impl PeelTrace {
    /// Number of steps taken, which is also the size of the reconstructed
    /// rainbow matching.
    pub fn k(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("trace does not match graph at step {step}: {detail}")]
    Mismatch { step: usize, detail: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn mismatch(step: usize, detail: impl Into<String>) -> PeelError {
    PeelError::Mismatch {
        step,
        detail: detail.into(),
    }
}

/// Vertex rule threshold `3(m - i) + 1`.
fn vertex_threshold(remaining: usize) -> usize {
    3 * remaining + 1
}

/// Color class rule threshold `2(m - i) + 1`.
fn class_threshold(remaining: usize) -> usize {
    2 * remaining + 1
}

/// Per-color edge counts at `v`.
fn color_counts_at(g: &EdgeColoredGraph, v: Vertex) -> BTreeMap<Color, usize> {
    let mut counts = BTreeMap::new();
    for e in g.incident(v) {
        *counts.entry(e.color).or_insert(0) += 1;
    }
    counts
}

/// The rule that fires on `g` with `remaining = m - i`, ties broken by
/// smallest vertex, then smallest color, then smallest edge.
fn choose(g: &EdgeColoredGraph, remaining: usize, mode: PeelMode) -> Option<PeelKind> {
    let vt = vertex_threshold(remaining);
    let ct = class_threshold(remaining);
    if let Some(v) = g.vertices().find(|&v| g.color_degree_of(v) >= vt) {
        return Some(PeelKind::DeleteVertex(v));
    }
    let class_fires = |c: Color| match mode {
        PeelMode::Proper => g.class_size(c) >= ct,
        PeelMode::General => g.star_count(c) >= ct,
    };
    if let Some(c) = g.colors().into_iter().find(|&c| class_fires(c)) {
        return Some(PeelKind::DeleteColorClass(c));
    }
    if mode == PeelMode::General {
        for v in g.vertices() {
            if let Some((&c, _)) = color_counts_at(g, v).iter().find(|(_, &k)| k >= vt) {
                return Some(PeelKind::DeleteVertexAndColor(v, c));
            }
        }
    }
    g.edges()
        .first()
        .map(|e| PeelKind::DeleteEdgeAndColor(e.u, e.v, e.color))
}

impl PeelKind {
    /// Applies this deletion to `g`, checking that what it names exists.
    fn apply(&self, g: &EdgeColoredGraph, step: usize) -> Result<EdgeColoredGraph, PeelError> {
        let live = |v: Vertex| {
            if g.is_live(v) {
                Ok(())
            } else {
                Err(mismatch(step, format!("vertex {v} is not present")))
            }
        };
        let present = |c: Color| {
            if g.class_size(c) > 0 {
                Ok(())
            } else {
                Err(mismatch(step, format!("color {c} is not present")))
            }
        };
        match *self {
            PeelKind::DeleteVertex(v) => {
                live(v)?;
                Ok(g.delete_vertex(v)?)
            }
            PeelKind::DeleteColorClass(c) => {
                present(c)?;
                Ok(g.delete_color(c))
            }
            PeelKind::DeleteVertexAndColor(v, c) => {
                live(v)?;
                present(c)?;
                Ok(g.delete_vertex(v)?.delete_color(c))
            }
            PeelKind::DeleteEdgeAndColor(u, v, c) => {
                if !g.contains_edge(&Edge::new(u, v, c)) {
                    return Err(mismatch(step, format!("edge {u}-{v} of color {c} is not present")));
                }
                Ok(g.delete_vertex(u)?.delete_vertex(v)?.delete_color(c))
            }
        }
    }
}

fn peel(g: &EdgeColoredGraph, m: usize, mode: PeelMode) -> PeelTrace {
    let mut current = g.clone();
    let mut current_weight = current.total_color_degree();
    let mut steps = Vec::new();
    for index in 0..m {
        let Some(kind) = choose(&current, m - index, mode) else {
            break;
        };
        let next = kind
            .apply(&current, index)
            .expect("chosen deletion refers to the current graph");
        let next_weight = next.total_color_degree();
        steps.push(PeelStep {
            index,
            kind,
            weight: current_weight - next_weight,
        });
        current = next;
        current_weight = next_weight;
    }
    PeelTrace {
        mode,
        target_m: m,
        steps,
    }
}

/// Peel for properly colored graphs. Runs on any input; the `k >= m`
/// guarantee needs a proper coloring, `n >= 8m` and total color degree at
/// least `2mn`.
pub fn peel_proper(g: &EdgeColoredGraph, m: usize) -> PeelTrace {
    peel(g, m, PeelMode::Proper)
}

/// Peel for arbitrary colorings. Every color class must already be a star
/// forest (see [`crate::reduce::reduce_to_star_forests`]).
pub fn peel_general(g: &EdgeColoredGraph, m: usize) -> Result<PeelTrace, PeelError> {
    if let Some(c) = g.first_non_star_forest_color() {
        return Err(GraphError::NotStarForest(c).into());
    }
    Ok(peel(g, m, PeelMode::General))
}

/// Replays `trace` on `g`, returning `G_0, ..., G_k`.
pub fn replay(g: &EdgeColoredGraph, trace: &PeelTrace) -> Result<Vec<EdgeColoredGraph>, PeelError> {
    let mut states = Vec::with_capacity(trace.k() + 1);
    states.push(g.clone());
    for (i, step) in trace.steps.iter().enumerate() {
        if step.index != i {
            return Err(mismatch(i, format!("step is numbered {}", step.index)));
        }
        let next = step.kind.apply(&states[i], i)?;
        states.push(next);
    }
    Ok(states)
}

/// Total color degree drop of each step, recomputed by replay.
pub fn step_weights(g: &EdgeColoredGraph, trace: &PeelTrace) -> Result<Vec<usize>, PeelError> {
    let totals: Vec<usize> = replay(g, trace)?.iter().map(|s| s.total_color_degree()).collect();
    Ok(totals.windows(2).map(|w| w[0] - w[1]).collect())
}

/// Checks that every step is exactly what the peel would do at that point:
/// the rule that fired is the first applicable one, its threshold held, and
/// the recorded weight is right.
pub fn check_trace(g: &EdgeColoredGraph, trace: &PeelTrace) -> Result<(), PeelError> {
    let states = replay(g, trace)?;
    for (i, step) in trace.steps.iter().enumerate() {
        if i >= trace.target_m {
            return Err(mismatch(i, "peel runs past the target size"));
        }
        let expected = choose(&states[i], trace.target_m - i, trace.mode);
        if expected != Some(step.kind) {
            return Err(mismatch(i, format!("expected {expected:?}, found {:?}", step.kind)));
        }
        let weight = states[i].total_color_degree() - states[i + 1].total_color_degree();
        if weight != step.weight {
            return Err(mismatch(
                i,
                format!("weight {} recorded, {weight} replayed", step.weight),
            ));
        }
    }
    let k = trace.k();
    if k < trace.target_m && choose(&states[k], trace.target_m - k, trace.mode).is_some() {
        return Err(mismatch(k, "peel stopped while a rule still applies"));
    }
    Ok(())
}

/// Rebuilds a rainbow matching with one edge per step, walking the trace
/// backwards from the empty matching in `G_k`.
pub fn reconstruct(g: &EdgeColoredGraph, trace: &PeelTrace) -> Result<Matching, PeelError> {
    let states = replay(g, trace)?;
    let mut matching = Matching::default();
    for (i, step) in trace.steps.iter().enumerate().rev() {
        let gi = &states[i];
        let free = |x: Vertex, m: &Matching| !m.covers(x);
        let picked: Option<Edge> = match step.kind {
            PeelKind::DeleteVertex(v) => gi
                .incident(v)
                .find(|e| free(e.other(v), &matching) && !matching.uses_color(e.color))
                .copied(),
            PeelKind::DeleteColorClass(c) => match trace.mode {
                PeelMode::Proper => gi
                    .edges()
                    .iter()
                    .find(|e| e.color == c && free(e.u, &matching) && free(e.v, &matching))
                    .copied(),
                // lowest-indexed star that still has a free edge
                PeelMode::General => gi
                    .class_components(c)
                    .into_iter()
                    .find_map(|star| star.into_iter().find(|e| free(e.u, &matching) && free(e.v, &matching))),
            },
            PeelKind::DeleteVertexAndColor(v, c) => gi
                .incident(v)
                .find(|e| e.color == c && free(e.other(v), &matching))
                .copied(),
            PeelKind::DeleteEdgeAndColor(u, v, c) => {
                let e = Edge::new(u, v, c);
                (free(u, &matching) && free(v, &matching) && !matching.uses_color(c)).then_some(e)
            }
        };
        let Some(e) = picked else {
            return Err(mismatch(i, format!("no edge extends the matching for {:?}", step.kind)));
        };
        matching.insert(e);
    }
    Ok(matching)
}

impl fmt::Display for PeelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PeelKind::DeleteVertex(v) => write!(f, "DV {v}"),
            PeelKind::DeleteColorClass(c) => write!(f, "DC {c}"),
            PeelKind::DeleteVertexAndColor(v, c) => write!(f, "DVC {v} {c}"),
            PeelKind::DeleteEdgeAndColor(u, v, c) => write!(f, "DE {u} {v} {c}"),
        }
    }
}

/// Line format: header `peel <mode> m=<m> k=<k>`, then one `i KIND args weight`
/// line per step.
impl fmt::Display for PeelTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "peel {} m={} k={}", self.mode.as_str(), self.target_m, self.k())?;
        for s in &self.steps {
            writeln!(f, "{} {} {}", s.index, s.kind, s.weight)?;
        }
        Ok(())
    }
}

impl FromStr for PeelTrace {
    type Err = PeelError;

    fn from_str(text: &str) -> Result<Self, PeelError> {
        let perr = |line: usize, message: String| PeelError::Parse { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| perr(1, "empty trace".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let (mode, m, k) = match h.as_slice() {
            ["peel", mode, m, k] => {
                let mode: PeelMode = mode.parse().map_err(|e| perr(1, e))?;
                let num = |tok: &str, key: &str| {
                    tok.strip_prefix(key)
                        .and_then(|x| x.parse::<usize>().ok())
                        .ok_or_else(|| perr(1, format!("expected {key}<count>, found `{tok}`")))
                };
                (mode, num(m, "m=")?, num(k, "k=")?)
            }
            _ => return Err(perr(1, format!("malformed header `{header}`"))),
        };
        let mut steps = Vec::new();
        for (line, body) in lines {
            let t: Vec<&str> = body.split_whitespace().collect();
            if t.is_empty() {
                continue;
            }
            let nums: Vec<u64> = t
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != 1)
                .map(|(_, tok)| {
                    tok.parse::<u64>()
                        .map_err(|_| perr(line, format!("bad number `{tok}`")))
                })
                .collect::<Result<_, _>>()?;
            let kind = match (t[1], nums.as_slice()) {
                ("DV", [_, v, _]) => PeelKind::DeleteVertex(*v as Vertex),
                ("DC", [_, c, _]) => PeelKind::DeleteColorClass(*c),
                ("DVC", [_, v, c, _]) => PeelKind::DeleteVertexAndColor(*v as Vertex, *c),
                ("DE", [_, u, v, c, _]) => PeelKind::DeleteEdgeAndColor(*u as Vertex, *v as Vertex, *c),
                _ => return Err(perr(line, format!("malformed step `{body}`"))),
            };
            steps.push(PeelStep {
                index: nums[0] as usize,
                kind,
                weight: *nums.last().unwrap() as usize,
            });
        }
        if steps.len() != k {
            return Err(perr(1, format!("header says k={k} but {} steps follow", steps.len())));
        }
        Ok(PeelTrace {
            mode,
            target_m: m,
            steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize, Color)]) -> EdgeColoredGraph {
        EdgeColoredGraph::new(n, edges.iter().copied()).unwrap()
    }

    fn proper_k4() -> EdgeColoredGraph {
        g(4, &[(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)])
    }

    fn mono_star(leaves: usize, color: Color) -> EdgeColoredGraph {
        g(leaves + 1, &(1..=leaves).map(|x| (0, x, color)).collect::<Vec<_>>())
    }

    #[test]
    fn empty_graph_takes_no_steps() {
        let t = peel_proper(&EdgeColoredGraph::empty(4), 1);
        assert_eq!(t.k(), 0);
        let t = peel_general(&EdgeColoredGraph::empty(4), 3).unwrap();
        assert_eq!(t.k(), 0);
        assert_eq!(reconstruct(&EdgeColoredGraph::empty(4), &t), Ok(Matching::default()));
        assert_eq!(step_weights(&EdgeColoredGraph::empty(4), &t), Ok(vec![]));
    }

    #[test]
    fn single_edge_hand_trace() {
        let h = g(2, &[(0, 1, 5)]);
        let t = peel_proper(&h, 1);
        assert_eq!(
            t.steps,
            vec![PeelStep {
                index: 0,
                kind: PeelKind::DeleteEdgeAndColor(0, 1, 5),
                weight: 2
            }]
        );
        assert_eq!(reconstruct(&h, &t), Ok(Matching::new([Edge::new(0, 1, 5)])));
        assert_eq!(step_weights(&h, &t), Ok(vec![2]));
        assert_eq!(t.to_string(), "peel proper m=1 k=1\n0 DE 0 1 5 2\n");
    }

    #[test]
    fn proper_k4_hand_trace() {
        let k4 = proper_k4();
        let t = peel_proper(&k4, 1);
        assert_eq!(t.k(), 1);
        assert_eq!(t.steps[0].kind, PeelKind::DeleteEdgeAndColor(0, 1, 0));
        let states = replay(&k4, &t).unwrap();
        assert_eq!(states[1].edge_count(), 0);
        // all 4 x 3 color degrees vanish
        assert_eq!(step_weights(&k4, &t), Ok(vec![12]));
    }

    #[test]
    fn two_leaf_star_general_hand_trace() {
        let h = g(3, &[(0, 1, 7), (0, 2, 7)]);
        let t = peel_general(&h, 1).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].kind, PeelKind::DeleteEdgeAndColor(0, 1, 7));
        assert_eq!(replay(&h, &t).unwrap()[1].edge_count(), 0);
    }

    #[test]
    fn seven_leaf_star_fires_vertex_and_color_rule() {
        let h = mono_star(7, 3);
        let t = peel_general(&h, 1).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].kind, PeelKind::DeleteVertexAndColor(0, 3));
        assert_eq!(reconstruct(&h, &t), Ok(Matching::new([Edge::new(0, 1, 3)])));
    }

    #[test]
    fn general_peel_rejects_non_star_forest() {
        let p4 = g(4, &[(0, 1, 2), (1, 2, 2), (2, 3, 2)]);
        assert_eq!(
            peel_general(&p4, 1),
            Err(PeelError::Graph(GraphError::NotStarForest(2)))
        );
    }

    #[test]
    fn m_zero_takes_no_steps() {
        assert_eq!(peel_proper(&proper_k4(), 0).k(), 0);
    }

    #[test]
    fn vertex_rule_fires_first() {
        // rainbow star with 4 leaves: color degree 4 >= 3*1+1
        let h = g(5, &[(0, 1, 1), (0, 2, 2), (0, 3, 3), (0, 4, 4)]);
        let t = peel_proper(&h, 1);
        assert_eq!(t.steps[0].kind, PeelKind::DeleteVertex(0));
        assert_eq!(t.steps[0].weight, 8);
        assert_eq!(reconstruct(&h, &t), Ok(Matching::new([Edge::new(0, 1, 1)])));
    }

    #[test]
    fn class_rule_in_proper_mode() {
        // three disjoint edges of one color, m = 1: |R| = 3 >= 3
        let h = g(6, &[(0, 1, 4), (2, 3, 4), (4, 5, 4)]);
        let t = peel_proper(&h, 1);
        assert_eq!(t.steps[0].kind, PeelKind::DeleteColorClass(4));
        assert_eq!(t.steps[0].weight, 6);
        let t = peel_general(&h, 1).unwrap();
        assert_eq!(t.steps[0].kind, PeelKind::DeleteColorClass(4));
        assert_eq!(reconstruct(&h, &t), Ok(Matching::new([Edge::new(0, 1, 4)])));
    }

    #[test]
    fn trace_text_round_trip() {
        let h = g(6, &[(0, 1, 4), (2, 3, 4), (4, 5, 4), (1, 2, 9)]);
        let t = peel_general(&h, 2).unwrap();
        let text = t.to_string();
        let back: PeelTrace = text.parse().unwrap();
        assert_eq!(back, t);
        assert!(check_trace(&h, &back).is_ok());
    }

    #[test]
    fn corrupted_traces_are_rejected() {
        let h = g(2, &[(0, 1, 5)]);
        let bad: PeelTrace = "peel proper m=1 k=1\n0 DE 0 1 6 2\n".parse().unwrap();
        assert!(matches!(
            reconstruct(&h, &bad),
            Err(PeelError::Mismatch { step: 0, .. })
        ));
        let wrong_weight: PeelTrace = "peel proper m=1 k=1\n0 DE 0 1 5 3\n".parse().unwrap();
        assert!(check_trace(&h, &wrong_weight).is_err());
        assert!("peel proper m=1 k=2\n0 DE 0 1 5 2\n".parse::<PeelTrace>().is_err());
        assert!("peel odd m=1 k=0\n".parse::<PeelTrace>().is_err());
        assert!("peel proper m=1 k=1\n0 XX 0 2\n".parse::<PeelTrace>().is_err());
    }

    #[test]
    fn vertex_deletion_reconstruction_avoids_used_colors() {
        // Vertex 0 sees colors 1..=7 (threshold 3*2+1 = 7 at m = 2). After it
        // goes, the edge 1-2 of color 1 remains.
        let mut edges: Vec<(usize, usize, Color)> = (1..=7).map(|x| (0, x, x as Color)).collect();
        edges.push((1, 2, 1));
        let h = g(8, &edges);
        let t = peel_proper(&h, 2);
        assert_eq!(t.steps[0].kind, PeelKind::DeleteVertex(0));
        let m = reconstruct(&h, &t).unwrap();
        assert_eq!(m.len(), t.k());
        assert_eq!(h.is_rainbow_matching(&m), Ok(true));
    }
}
